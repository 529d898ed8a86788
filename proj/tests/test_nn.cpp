#include "amuse/nn.hpp"

#include <cmath>
#include <sstream>

#include "doctest.h"

using namespace amuse;
using namespace amuse::nn;

namespace {

double param(Mlp& net, int flat_index) {
  int k = flat_index;
  for (int l = 0; l < net.num_layers(); ++l) {
    if (k < net.weights[l].size()) return net.weights[l].data()[k];
    k -= static_cast<int>(net.weights[l].size());
    if (k < net.biases[l].size()) return net.biases[l][k];
    k -= static_cast<int>(net.biases[l].size());
  }
  throw std::out_of_range("param");
}

void set_param(Mlp& net, int flat_index, double value) {
  int k = flat_index;
  for (int l = 0; l < net.num_layers(); ++l) {
    if (k < net.weights[l].size()) {
      net.weights[l].data()[k] = value;
      return;
    }
    k -= static_cast<int>(net.weights[l].size());
    if (k < net.biases[l].size()) {
      net.biases[l][k] = value;
      return;
    }
    k -= static_cast<int>(net.biases[l].size());
  }
  throw std::out_of_range("set_param");
}

double grad_entry(const Gradients& g, int flat_index) {
  int k = flat_index;
  for (std::size_t l = 0; l < g.weights.size(); ++l) {
    if (k < g.weights[l].size()) return g.weights[l].data()[k];
    k -= static_cast<int>(g.weights[l].size());
    if (k < g.biases[l].size()) return g.biases[l][k];
    k -= static_cast<int>(g.biases[l].size());
  }
  throw std::out_of_range("grad_entry");
}

int param_count(const Mlp& net) {
  int n = 0;
  for (int l = 0; l < net.num_layers(); ++l)
    n += static_cast<int>(net.weights[l].size() + net.biases[l].size());
  return n;
}

}  // namespace

TEST_CASE("initialization") {
  Rng rng = make_rng(5, "init");
  Mlp net = make_mlp({14, 64, 64, 2}, rng, 0.01);
  REQUIRE(net.num_layers() == 3);
  CHECK(net.input_dim() == 14);
  CHECK(net.output_dim() == 2);
  CHECK(net.weights[0].rows() == 64);
  CHECK(net.weights[0].cols() == 14);
  CHECK(net.weights[2].rows() == 2);
  for (const auto& b : net.biases) CHECK(b.isZero());

  // hidden layers: gain sqrt(2) on orthonormal columns/rows, so the
  // Gram matrix along the short side is 2 * I
  Eigen::MatrixXd gram = net.weights[0].transpose() * net.weights[0];
  CHECK((gram - 2.0 * Eigen::MatrixXd::Identity(14, 14)).norm() < 1e-10);
  Eigen::MatrixXd gram1 = net.weights[1] * net.weights[1].transpose();
  CHECK((gram1 - 2.0 * Eigen::MatrixXd::Identity(64, 64)).norm() < 1e-10);

  // output head scaled down to keep the initial policy near uniform
  Eigen::MatrixXd gram2 = net.weights[2] * net.weights[2].transpose();
  CHECK((gram2 - 1e-4 * Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-12);

  Rng r1 = make_rng(5, "init");
  Rng r2 = make_rng(5, "init");
  Mlp a = make_mlp({4, 8, 1}, r1);
  Mlp b = make_mlp({4, 8, 1}, r2);
  CHECK(a.weights[0] == b.weights[0]);

  CHECK_THROWS(make_mlp({3}, rng));
}

TEST_CASE("forward pass against a hand computation") {
  // 1-2-1 net: h = tanh(W0 x + b0), y = W1 h + b1
  Mlp net;
  net.layer_dims = {1, 2, 1};
  net.weights = {Eigen::MatrixXd(2, 1), Eigen::MatrixXd(1, 2)};
  net.biases = {Eigen::VectorXd(2), Eigen::VectorXd(1)};
  net.weights[0] << 0.5, -1.0;
  net.biases[0] << 0.1, 0.2;
  net.weights[1] << 2.0, 3.0;
  net.biases[1] << -0.4;

  Eigen::VectorXd x(1);
  x << 0.8;
  const double h1 = std::tanh(0.5 * 0.8 + 0.1);
  const double h2 = std::tanh(-1.0 * 0.8 + 0.2);
  const double y = 2.0 * h1 + 3.0 * h2 - 0.4;

  ForwardCache cache;
  Eigen::VectorXd out = forward(net, x, cache);
  REQUIRE(out.size() == 1);
  CHECK(out[0] == doctest::Approx(y).epsilon(1e-15));
  CHECK(cache.post.back()[0] == out[0]);
  CHECK(cache.post[0][0] == doctest::Approx(h1).epsilon(1e-15));

  CHECK_THROWS(forward(net, Eigen::VectorXd::Zero(3)));
}

TEST_CASE("backward matches central finite differences") {
  Rng rng = make_rng(11, "gradcheck");
  std::normal_distribution<double> normal(0.0, 1.0);
  Mlp net = make_mlp({6, 10, 8, 3}, rng);
  Eigen::VectorXd x(6), loss_grad(3);
  for (int i = 0; i < 6; ++i) x[i] = normal(rng);
  for (int i = 0; i < 3; ++i) loss_grad[i] = normal(rng);
  // scalar loss L = loss_grad . output

  ForwardCache cache;
  forward(net, x, cache);
  Gradients grads = zero_like(net);
  backward(net, cache, loss_grad, grads);

  const double h = 1e-6;
  const int n = param_count(net);
  for (int k = 0; k < n; k += 7) {  // spot-check a spread of parameters
    const double saved = param(net, k);
    set_param(net, k, saved + h);
    const double up = loss_grad.dot(forward(net, x));
    set_param(net, k, saved - h);
    const double down = loss_grad.dot(forward(net, x));
    set_param(net, k, saved);
    const double numeric = (up - down) / (2.0 * h);
    CHECK(grad_entry(grads, k) == doctest::Approx(numeric).epsilon(1e-5));
  }

  // backward accumulates rather than overwrites
  Gradients twice = zero_like(net);
  backward(net, cache, loss_grad, twice);
  backward(net, cache, loss_grad, twice);
  for (int k : {0, 3, n - 1})
    CHECK(grad_entry(twice, k) ==
          doctest::Approx(2.0 * grad_entry(grads, k)).epsilon(1e-12));
}

TEST_CASE("gradient container arithmetic") {
  Gradients g;
  g.weights.push_back(Eigen::MatrixXd::Constant(2, 2, 1.0));
  g.biases.push_back(Eigen::VectorXd::Constant(5, 2.0));
  // norm = sqrt(4 * 1 + 5 * 4) = sqrt(24)
  CHECK(g.global_norm() == doctest::Approx(std::sqrt(24.0)).epsilon(1e-15));
  g.scale(0.5);
  CHECK(g.global_norm() == doctest::Approx(0.5 * std::sqrt(24.0)).epsilon(1e-15));
  CHECK(g.weights[0](1, 1) == 0.5);
}

TEST_CASE("adam") {
  SUBCASE("first step matches the closed form") {
    // one parameter, no clipping: m-hat = g, v-hat = g^2, so the step is
    // lr * g / (|g| + eps)
    Mlp net;
    net.layer_dims = {1, 1};
    net.weights = {Eigen::MatrixXd::Constant(1, 1, 3.0)};
    net.biases = {Eigen::VectorXd::Zero(1)};
    Gradients g = zero_like(net);
    g.weights[0](0, 0) = 0.2;
    AdamState opt = make_adam(net, 1e-2);
    opt.clip_norm = 0.0;
    adam_step(net, g, opt);
    const double expected = 3.0 - 1e-2 * 0.2 / (0.2 + 1e-8);
    CHECK(net.weights[0](0, 0) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(opt.step == 1);
  }
  SUBCASE("global norm clipping") {
    Rng rng = make_rng(21, "adam");
    Mlp net = make_mlp({3, 4, 1}, rng);
    Gradients g = zero_like(net);
    g.weights[0].setConstant(10.0);
    g.biases[1].setConstant(-4.0);
    REQUIRE(g.global_norm() > 0.5);
    AdamState opt = make_adam(net);
    adam_step(net, g, opt);
    CHECK(g.global_norm() == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("descends a simple quadratic") {
    // minimize (w - 2)^2 over a single weight
    Mlp net;
    net.layer_dims = {1, 1};
    net.weights = {Eigen::MatrixXd::Constant(1, 1, -1.0)};
    net.biases = {Eigen::VectorXd::Zero(1)};
    AdamState opt = make_adam(net, 0.05);
    for (int i = 0; i < 2000; ++i) {
      Gradients g = zero_like(net);
      g.weights[0](0, 0) = 2.0 * (net.weights[0](0, 0) - 2.0);
      adam_step(net, g, opt);
    }
    CHECK(net.weights[0](0, 0) == doctest::Approx(2.0).epsilon(1e-3));
  }
}

TEST_CASE("binary softmax") {
  SUBCASE("uniform at equal logits") {
    SoftmaxResult r = softmax_logprob_entropy({0.0, 0.0}, 0);
    CHECK(r.probs[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.probs[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.log_prob == doctest::Approx(std::log(0.5)).epsilon(1e-15));
    CHECK(r.entropy == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  }
  SUBCASE("hand oracle at logits (2, 0)") {
    const double p0 = std::exp(2.0) / (std::exp(2.0) + 1.0);
    SoftmaxResult r = softmax_logprob_entropy({2.0, 0.0}, 1);
    CHECK(r.probs[0] == doctest::Approx(p0).epsilon(1e-14));
    CHECK(r.probs[1] == doctest::Approx(1.0 - p0).epsilon(1e-14));
    CHECK(r.log_prob == doctest::Approx(std::log(1.0 - p0)).epsilon(1e-12));
    const double expected_entropy =
        -p0 * std::log(p0) - (1.0 - p0) * std::log(1.0 - p0);
    CHECK(r.entropy == doctest::Approx(expected_entropy).epsilon(1e-12));
  }
  SUBCASE("stable for extreme logits") {
    SoftmaxResult r = softmax_logprob_entropy({1000.0, 0.0}, 0);
    CHECK(r.probs[0] == doctest::Approx(1.0));
    CHECK(std::isfinite(r.log_prob));
    CHECK(r.log_prob == doctest::Approx(0.0));
    CHECK(r.entropy >= 0.0);
    SoftmaxResult miss = softmax_logprob_entropy({1000.0, 0.0}, 1);
    CHECK(miss.log_prob == doctest::Approx(-1000.0));
  }
  SUBCASE("probabilities sum to one and log_prob is consistent") {
    Rng rng = make_rng(31, "softmax");
    std::normal_distribution<double> normal(0.0, 3.0);
    for (int i = 0; i < 50; ++i) {
      Eigen::Vector2d logits(normal(rng), normal(rng));
      for (int a : {0, 1}) {
        SoftmaxResult r = softmax_logprob_entropy(logits, a);
        CHECK(r.probs.sum() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(r.log_prob ==
              doctest::Approx(std::log(r.probs[a])).epsilon(1e-10));
      }
    }
  }
  CHECK_THROWS(softmax_logprob_entropy({0.0, 0.0}, 2));
}

TEST_CASE("checkpoint round trip is exact") {
  Rng rng = make_rng(41, "ckpt");
  Mlp net = make_mlp({14, 64, 64, 2}, rng, 0.01);
  std::stringstream stream;
  save_net(stream, net);
  Mlp back = load_net(stream);
  REQUIRE(back.layer_dims == net.layer_dims);
  for (int l = 0; l < net.num_layers(); ++l) {
    CHECK(back.weights[l] == net.weights[l]);  // bitwise via hexfloat
    CHECK(back.biases[l] == net.biases[l]);
  }

  std::stringstream bad("not-a-checkpoint 1\n");
  CHECK_THROWS(load_net(bad));
  std::stringstream truncated("amuse-mlp 1\n3 2 4 1\n0x1p0\n");
  CHECK_THROWS(load_net(truncated));
}
