#pragma once

#include <Eigen/Dense>
#include <vector>

#include "barron/common.hpp"

namespace barron {

// One affine stage A x + b.  Rows of W are neurons, columns are inputs.
struct Layer {
  Eigen::MatrixXd W;
  Eigen::VectorXd b;
};

// Feed-forward ReLU network: every layer except the last is followed by the
// componentwise ReLU, the last layer is purely affine.  Immutable after
// construction; all shape/finiteness invariants are checked once here.
class NeuralNetwork {
 public:
  NeuralNetwork(int input_dim, std::vector<Layer> layers);

  int input_dim() const { return input_dim_; }
  int output_dim() const { return static_cast<int>(layers_.back().W.rows()); }
  int depth() const { return static_cast<int>(layers_.size()); }
  const std::vector<Layer>& layers() const { return layers_; }

  // (input_dim, width_1, ..., width_L)
  std::vector<int> architecture() const;

 private:
  int input_dim_;
  std::vector<Layer> layers_;
};

struct NetworkStats {
  std::vector<int> architecture;
  int num_layers = 0;            // number of affine stages L
  long long num_neurons = 0;     // input_dim + sum of layer widths
  long long num_nonzero_weights = 0;  // exact-zero matrix/bias entries excluded
  double max_abs_weight = 0.0;   // over all matrix and bias entries
};

Eigen::VectorXd evaluate(const NeuralNetwork& net, const Eigen::VectorXd& x);

// Rows of X are input points; rows of the result are outputs.  Internally
// tiled so the widest intermediate stays cache- and memory-friendly.
Eigen::MatrixXd evaluate_batch(const NeuralNetwork& net, const Eigen::MatrixXd& X);

// Gradient of upstream^T evaluate(net, x) with respect to every matrix/bias
// entry (reverse mode; the ReLU derivative at 0 is taken as 0).
struct ParameterGradient {
  std::vector<Eigen::MatrixXd> dW;
  std::vector<Eigen::VectorXd> db;
};
ParameterGradient gradient(const NeuralNetwork& net, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& upstream);

// Exact composition: realizes phi2 after phi1 (apply phi1 first).  The two
// adjacent affine stages at the junction fold into one, so the depth is
// L1 + L2 - 1 and no new nonzeros appear beyond the folded product.
NeuralNetwork compose(const NeuralNetwork& phi1, const NeuralNetwork& phi2);

// Realizes a*phi1 + b*phi2 for networks of equal depth and equal input/output
// dimensions by stacking hidden layers block-diagonally.
NeuralNetwork sum_scaled(const NeuralNetwork& phi1, const NeuralNetwork& phi2,
                         double a, double b);

NetworkStats stats(const NeuralNetwork& net);

// Rounds every weight to the grid 2^(-tau*ceil(log2(1/eps))) * Z clipped to
// [-eps^-tau, eps^-tau].  Ties round toward zero.  Requires tau >= 1 and
// eps in (0, 1/2).
NeuralNetwork quantize(const NeuralNetwork& net, int tau, double eps);

}  // namespace barron
