#include "amuse/nn.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace amuse::nn {

namespace {

MatrixXd orthogonal(int rows, int cols, Rng& rng, double gain) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const bool tall = rows >= cols;
  MatrixXd a(tall ? rows : cols, tall ? cols : rows);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = normal(rng);
  Eigen::HouseholderQR<MatrixXd> qr(a);
  MatrixXd q = qr.householderQ() * MatrixXd::Identity(a.rows(), a.cols());
  MatrixXd r = qr.matrixQR().topRows(a.cols()).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < q.cols(); ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  MatrixXd w = tall ? q : MatrixXd(q.transpose());
  return gain * w;
}

}  // namespace

Mlp make_mlp(const std::vector<int>& layer_dims, Rng& rng, double output_gain) {
  if (layer_dims.size() < 2)
    throw std::invalid_argument("make_mlp: need at least input and output dims");
  Mlp net;
  net.layer_dims = layer_dims;
  const int L = static_cast<int>(layer_dims.size()) - 1;
  for (int l = 0; l < L; ++l) {
    const double gain = (l == L - 1) ? output_gain : std::sqrt(2.0);
    net.weights.push_back(
        orthogonal(layer_dims[l + 1], layer_dims[l], rng, gain));
    net.biases.push_back(VectorXd::Zero(layer_dims[l + 1]));
  }
  return net;
}

VectorXd forward(const Mlp& net, const VectorXd& input, ForwardCache& cache) {
  if (input.size() != net.input_dim())
    throw std::invalid_argument("forward: input dimension mismatch");
  cache.input = input;
  cache.post.clear();
  VectorXd h = input;
  const int L = net.num_layers();
  for (int l = 0; l < L; ++l) {
    h = net.weights[l] * h + net.biases[l];
    if (l + 1 < L) h = h.array().tanh();
    cache.post.push_back(h);
  }
  return h;
}

VectorXd forward(const Mlp& net, const VectorXd& input) {
  ForwardCache cache;
  return forward(net, input, cache);
}

void Gradients::scale(double factor) {
  for (auto& w : weights) w *= factor;
  for (auto& b : biases) b *= factor;
}

double Gradients::global_norm() const {
  double sq = 0.0;
  for (const auto& w : weights) sq += w.squaredNorm();
  for (const auto& b : biases) sq += b.squaredNorm();
  return std::sqrt(sq);
}

Gradients zero_like(const Mlp& net) {
  Gradients g;
  for (const auto& w : net.weights) g.weights.push_back(MatrixXd::Zero(w.rows(), w.cols()));
  for (const auto& b : net.biases) g.biases.push_back(VectorXd::Zero(b.size()));
  return g;
}

void backward(const Mlp& net, const ForwardCache& cache,
              const VectorXd& output_grad, Gradients& grads) {
  const int L = net.num_layers();
  if (static_cast<int>(cache.post.size()) != L)
    throw std::logic_error("backward: stale or missing forward cache");
  VectorXd delta = output_grad;  // d loss / d pre-activation of layer l
  for (int l = L - 1; l >= 0; --l) {
    const VectorXd& below = l == 0 ? cache.input : cache.post[l - 1];
    grads.weights[l].noalias() += delta * below.transpose();
    grads.biases[l] += delta;
    if (l > 0) {
      delta = net.weights[l].transpose() * delta;
      // tanh'(z) = 1 - tanh(z)^2, and post holds tanh(z)
      delta.array() *= 1.0 - cache.post[l - 1].array().square();
    }
  }
}

AdamState make_adam(const Mlp& net, double lr) {
  AdamState s;
  s.lr = lr;
  for (const auto& w : net.weights) {
    s.m_w.push_back(MatrixXd::Zero(w.rows(), w.cols()));
    s.v_w.push_back(MatrixXd::Zero(w.rows(), w.cols()));
  }
  for (const auto& b : net.biases) {
    s.m_b.push_back(VectorXd::Zero(b.size()));
    s.v_b.push_back(VectorXd::Zero(b.size()));
  }
  return s;
}

void adam_step(Mlp& net, Gradients& grads, AdamState& opt) {
  if (opt.clip_norm > 0.0) {
    const double norm = grads.global_norm();
    if (norm > opt.clip_norm) grads.scale(opt.clip_norm / norm);
  }
  ++opt.step;
  const double bc1 = 1.0 - std::pow(opt.beta1, opt.step);
  const double bc2 = 1.0 - std::pow(opt.beta2, opt.step);
  auto update = [&](auto& param, auto& g, auto& m, auto& v) {
    m = opt.beta1 * m + (1.0 - opt.beta1) * g;
    v = opt.beta2 * v.array() + (1.0 - opt.beta2) * g.array().square();
    param.array() -=
        opt.lr * (m.array() / bc1) / ((v.array() / bc2).sqrt() + opt.eps);
  };
  for (int l = 0; l < net.num_layers(); ++l) {
    update(net.weights[l], grads.weights[l], opt.m_w[l], opt.v_w[l]);
    update(net.biases[l], grads.biases[l], opt.m_b[l], opt.v_b[l]);
  }
}

SoftmaxResult softmax_logprob_entropy(const Eigen::Vector2d& logits,
                                      int action) {
  if (action != 0 && action != 1)
    throw std::invalid_argument("softmax_logprob_entropy: bad action");
  const double m = logits.maxCoeff();
  const Eigen::Vector2d e = (logits.array() - m).exp();
  const double z = e.sum();
  SoftmaxResult r;
  r.probs = e / z;
  const double logz = std::log(z);
  r.log_prob = logits[action] - m - logz;
  r.entropy = 0.0;
  for (int a = 0; a < 2; ++a) {
    const double logp = logits[a] - m - logz;
    r.entropy -= r.probs[a] * logp;
  }
  return r;
}

void save_net(std::ostream& out, const Mlp& net) {
  out << "amuse-mlp 1\n" << net.layer_dims.size();
  for (int d : net.layer_dims) out << ' ' << d;
  out << '\n';
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%a", v);
    out << buf << '\n';
  };
  for (int l = 0; l < net.num_layers(); ++l) {
    for (Eigen::Index i = 0; i < net.weights[l].rows(); ++i)
      for (Eigen::Index j = 0; j < net.weights[l].cols(); ++j)
        put(net.weights[l](i, j));
    for (Eigen::Index i = 0; i < net.biases[l].size(); ++i)
      put(net.biases[l][i]);
  }
}

Mlp load_net(std::istream& in) {
  std::string magic;
  int version = 0;
  in >> magic >> version;
  if (magic != "amuse-mlp" || version != 1)
    throw std::runtime_error("load_net: unrecognized checkpoint header");
  std::size_t ndims = 0;
  in >> ndims;
  if (ndims < 2 || ndims > 64) throw std::runtime_error("load_net: bad dims");
  std::vector<int> dims(ndims);
  for (auto& d : dims) in >> d;

  Mlp net;
  net.layer_dims = dims;
  auto get = [&]() {
    std::string tok;
    if (!(in >> tok)) throw std::runtime_error("load_net: truncated checkpoint");
    return std::strtod(tok.c_str(), nullptr);
  };
  for (std::size_t l = 0; l + 1 < ndims; ++l) {
    MatrixXd w(dims[l + 1], dims[l]);
    for (Eigen::Index i = 0; i < w.rows(); ++i)
      for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = get();
    VectorXd b(dims[l + 1]);
    for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = get();
    net.weights.push_back(std::move(w));
    net.biases.push_back(std::move(b));
  }
  return net;
}

}  // namespace amuse::nn
