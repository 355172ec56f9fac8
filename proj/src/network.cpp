#include "barron/network.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace barron {

NeuralNetwork::NeuralNetwork(int input_dim, std::vector<Layer> layers)
    : input_dim_(input_dim), layers_(std::move(layers)) {
  if (input_dim_ < 1) throw config_error("network input dimension must be positive");
  if (layers_.empty()) throw config_error("network needs at least one affine stage");
  Eigen::Index prev = input_dim_;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const Layer& lay = layers_[l];
    const std::string where = "layer " + std::to_string(l + 1);
    if (lay.W.rows() < 1) throw config_error(where + " has no neurons");
    if (lay.W.cols() != prev)
      throw config_error(where + " expects " + std::to_string(lay.W.cols()) +
                         " inputs but the previous width is " + std::to_string(prev));
    if (lay.b.size() != lay.W.rows())
      throw config_error(where + " bias length does not match its neuron count");
    if (!lay.W.allFinite() || !lay.b.allFinite())
      throw config_error(where + " has non-finite weights");
    prev = lay.W.rows();
  }
}

std::vector<int> NeuralNetwork::architecture() const {
  std::vector<int> arch;
  arch.reserve(layers_.size() + 1);
  arch.push_back(input_dim_);
  for (const Layer& lay : layers_) arch.push_back(static_cast<int>(lay.W.rows()));
  return arch;
}

Eigen::VectorXd evaluate(const NeuralNetwork& net, const Eigen::VectorXd& x) {
  if (x.size() != net.input_dim())
    throw config_error("evaluate: input has dimension " + std::to_string(x.size()) +
                       ", network expects " + std::to_string(net.input_dim()));
  Eigen::VectorXd h = x;
  const int L = net.depth();
  for (int l = 0; l < L; ++l) {
    const Layer& lay = net.layers()[l];
    Eigen::VectorXd z = lay.W * h + lay.b;
    h = (l + 1 < L) ? z.cwiseMax(0.0).eval() : z;
  }
  return h;
}

Eigen::MatrixXd evaluate_batch(const NeuralNetwork& net, const Eigen::MatrixXd& X) {
  if (X.cols() != net.input_dim())
    throw config_error("evaluate_batch: points have dimension " + std::to_string(X.cols()) +
                       ", network expects " + std::to_string(net.input_dim()));
  const Eigen::Index P = X.rows();
  Eigen::MatrixXd out(P, net.output_dim());
  const Eigen::Index tile = 1024;  // bounds the widest intermediate
  const int L = net.depth();
  for (Eigen::Index r0 = 0; r0 < P; r0 += tile) {
    const Eigen::Index nr = std::min(tile, P - r0);
    Eigen::MatrixXd h = X.middleRows(r0, nr);
    for (int l = 0; l < L; ++l) {
      const Layer& lay = net.layers()[l];
      Eigen::MatrixXd z = h * lay.W.transpose();
      z.rowwise() += lay.b.transpose();
      if (l + 1 < L) z = z.cwiseMax(0.0);
      h = std::move(z);
    }
    out.middleRows(r0, nr) = h;
  }
  return out;
}

ParameterGradient gradient(const NeuralNetwork& net, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& upstream) {
  if (x.size() != net.input_dim()) throw config_error("gradient: input dimension mismatch");
  if (upstream.size() != net.output_dim())
    throw config_error("gradient: upstream vector must match the output dimension");

  const int L = net.depth();
  std::vector<Eigen::VectorXd> act(L + 1);  // act[l] feeds layer l
  std::vector<Eigen::VectorXd> pre(L);
  act[0] = x;
  for (int l = 0; l < L; ++l) {
    const Layer& lay = net.layers()[l];
    pre[l] = lay.W * act[l] + lay.b;
    act[l + 1] = (l + 1 < L) ? pre[l].cwiseMax(0.0).eval() : pre[l];
  }

  ParameterGradient g;
  g.dW.resize(L);
  g.db.resize(L);
  Eigen::VectorXd delta = upstream;  // d(loss)/d(pre[L-1])
  for (int l = L - 1; l >= 0; --l) {
    g.dW[l] = delta * act[l].transpose();
    g.db[l] = delta;
    if (l > 0) {
      Eigen::VectorXd back = net.layers()[l].W.transpose() * delta;
      // ReLU derivative, taken as 0 at the kink.
      delta = (pre[l - 1].array() > 0.0).select(back, 0.0);
    }
  }
  return g;
}

NeuralNetwork compose(const NeuralNetwork& phi1, const NeuralNetwork& phi2) {
  if (phi2.input_dim() != phi1.output_dim())
    throw config_error("compose: second network expects " + std::to_string(phi2.input_dim()) +
                       " inputs but the first one outputs " + std::to_string(phi1.output_dim()));
  std::vector<Layer> layers;
  layers.reserve(phi1.depth() + phi2.depth() - 1);
  for (int l = 0; l + 1 < phi1.depth(); ++l) layers.push_back(phi1.layers()[l]);
  // phi1's affine output stage folds into phi2's first stage.
  const Layer& last1 = phi1.layers().back();
  const Layer& first2 = phi2.layers().front();
  layers.push_back(Layer{first2.W * last1.W, first2.W * last1.b + first2.b});
  for (int l = 1; l < phi2.depth(); ++l) layers.push_back(phi2.layers()[l]);
  return NeuralNetwork(phi1.input_dim(), std::move(layers));
}

NeuralNetwork sum_scaled(const NeuralNetwork& phi1, const NeuralNetwork& phi2, double a,
                         double b) {
  if (phi1.depth() != phi2.depth()) throw config_error("sum_scaled: depths differ");
  if (phi1.input_dim() != phi2.input_dim())
    throw config_error("sum_scaled: input dimensions differ");
  if (phi1.output_dim() != phi2.output_dim())
    throw config_error("sum_scaled: output dimensions differ");
  if (!std::isfinite(a) || !std::isfinite(b))
    throw config_error("sum_scaled: scale factors must be finite");

  const int L = phi1.depth();
  std::vector<Layer> layers;
  layers.reserve(L);
  if (L == 1) {
    const Layer& l1 = phi1.layers()[0];
    const Layer& l2 = phi2.layers()[0];
    layers.push_back(Layer{a * l1.W + b * l2.W, a * l1.b + b * l2.b});
    return NeuralNetwork(phi1.input_dim(), std::move(layers));
  }
  for (int l = 0; l < L; ++l) {
    const Layer& l1 = phi1.layers()[l];
    const Layer& l2 = phi2.layers()[l];
    const Eigen::Index r1 = l1.W.rows(), r2 = l2.W.rows();
    if (l == 0) {
      // Shared input: stack vertically.
      Layer lay;
      lay.W.resize(r1 + r2, l1.W.cols());
      lay.W.topRows(r1) = l1.W;
      lay.W.bottomRows(r2) = l2.W;
      lay.b.resize(r1 + r2);
      lay.b.head(r1) = l1.b;
      lay.b.tail(r2) = l2.b;
      layers.push_back(std::move(lay));
    } else if (l + 1 < L) {
      Layer lay;
      lay.W = Eigen::MatrixXd::Zero(r1 + r2, l1.W.cols() + l2.W.cols());
      lay.W.topLeftCorner(r1, l1.W.cols()) = l1.W;
      lay.W.bottomRightCorner(r2, l2.W.cols()) = l2.W;
      lay.b.resize(r1 + r2);
      lay.b.head(r1) = l1.b;
      lay.b.tail(r2) = l2.b;
      layers.push_back(std::move(lay));
    } else {
      // Output stage: scaled sum of both branches.
      Layer lay;
      lay.W.resize(r1, l1.W.cols() + l2.W.cols());
      lay.W.leftCols(l1.W.cols()) = a * l1.W;
      lay.W.rightCols(l2.W.cols()) = b * l2.W;
      lay.b = a * l1.b + b * l2.b;
      layers.push_back(std::move(lay));
    }
  }
  return NeuralNetwork(phi1.input_dim(), std::move(layers));
}

NetworkStats stats(const NeuralNetwork& net) {
  NetworkStats s;
  s.architecture = net.architecture();
  s.num_layers = net.depth();
  s.num_neurons = net.input_dim();
  for (const Layer& lay : net.layers()) {
    s.num_neurons += lay.W.rows();
    for (Eigen::Index j = 0; j < lay.W.cols(); ++j)
      for (Eigen::Index i = 0; i < lay.W.rows(); ++i) {
        const double w = lay.W(i, j);
        if (w != 0.0) ++s.num_nonzero_weights;
        s.max_abs_weight = std::max(s.max_abs_weight, std::fabs(w));
      }
    for (Eigen::Index i = 0; i < lay.b.size(); ++i) {
      if (lay.b(i) != 0.0) ++s.num_nonzero_weights;
      s.max_abs_weight = std::max(s.max_abs_weight, std::fabs(lay.b(i)));
    }
  }
  return s;
}

namespace {

double quantize_entry(double w, double step, double n_max) {
  double q = std::fabs(w) / step;
  double m = std::floor(q + 0.5);
  if (m - q == 0.5) m -= 1.0;  // ties round toward zero
  if (m > n_max) m = n_max;
  if (m == 0.0) return 0.0;
  return std::copysign(m * step, w);
}

}  // namespace

NeuralNetwork quantize(const NeuralNetwork& net, int tau, double eps) {
  if (tau < 1) throw config_error("quantize: tau must be a positive integer");
  if (!(eps > 0.0 && eps < 0.5)) throw config_error("quantize: eps must lie in (0, 1/2)");
  const int k = static_cast<int>(std::ceil(std::log2(1.0 / eps)));
  if (tau * k > 1000) throw config_error("quantize: grid spacing underflows");
  const double step = std::ldexp(1.0, -tau * k);    // 2^(-tau k), exact
  const double range = std::pow(1.0 / eps, tau);    // eps^(-tau)
  double n_max = std::floor(range / step);
  if ((n_max + 1.0) * step <= range) n_max += 1.0;  // guard the division rounding down

  std::vector<Layer> layers = net.layers();
  for (Layer& lay : layers) {
    for (Eigen::Index j = 0; j < lay.W.cols(); ++j)
      for (Eigen::Index i = 0; i < lay.W.rows(); ++i)
        lay.W(i, j) = quantize_entry(lay.W(i, j), step, n_max);
    for (Eigen::Index i = 0; i < lay.b.size(); ++i)
      lay.b(i) = quantize_entry(lay.b(i), step, n_max);
  }
  return NeuralNetwork(net.input_dim(), std::move(layers));
}

}  // namespace barron
