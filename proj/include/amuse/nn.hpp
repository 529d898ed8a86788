#ifndef AMUSE_NN_HPP_
#define AMUSE_NN_HPP_

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "amuse/rng.hpp"

namespace amuse::nn {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Dense tanh network with identity output (logits or value). weights[l]
// maps layer_dims[l] -> layer_dims[l+1].
struct Mlp {
  std::vector<int> layer_dims;
  std::vector<MatrixXd> weights;
  std::vector<VectorXd> biases;

  int num_layers() const { return static_cast<int>(weights.size()); }
  int input_dim() const { return layer_dims.front(); }
  int output_dim() const { return layer_dims.back(); }
};

// Orthogonal init with gain sqrt(2) on hidden layers; the output layer
// uses `output_gain` (0.01 for the policy head keeps the initial policy
// near-uniform).
Mlp make_mlp(const std::vector<int>& layer_dims, Rng& rng,
             double output_gain = 1.0);

struct ForwardCache {
  VectorXd input;
  std::vector<VectorXd> post;  // activations per layer; back() = output
};

VectorXd forward(const Mlp& net, const VectorXd& input);
VectorXd forward(const Mlp& net, const VectorXd& input, ForwardCache& cache);

struct Gradients {
  std::vector<MatrixXd> weights;
  std::vector<VectorXd> biases;

  void scale(double factor);
  double global_norm() const;
};

Gradients zero_like(const Mlp& net);

// Accumulates d(loss)/d(params) into grads for the scalar loss whose
// gradient wrt the network output is `output_grad`. The cache must come
// from a forward() on the same input.
void backward(const Mlp& net, const ForwardCache& cache,
              const VectorXd& output_grad, Gradients& grads);

struct AdamState {
  double lr = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double clip_norm = 0.5;  // global gradient-norm clip; <= 0 disables
  long step = 0;
  std::vector<MatrixXd> m_w, v_w;
  std::vector<VectorXd> m_b, v_b;
};

AdamState make_adam(const Mlp& net, double lr = 3e-4);

// Clips the gradients (global norm), then applies one bias-corrected
// Adam update in place.
void adam_step(Mlp& net, Gradients& grads, AdamState& opt);

struct SoftmaxResult {
  Eigen::Vector2d probs;
  double log_prob = 0.0;  // of the given action
  double entropy = 0.0;
};

// Max-subtracted softmax over binary-action logits.
SoftmaxResult softmax_logprob_entropy(const Eigen::Vector2d& logits,
                                      int action);

// Text checkpoint: layer dims followed by row-major parameters in C99
// hexfloat, so round trips are exact and endianness-free.
void save_net(std::ostream& out, const Mlp& net);
Mlp load_net(std::istream& in);

}  // namespace amuse::nn

#endif  // AMUSE_NN_HPP_
