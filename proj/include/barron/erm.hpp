#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "barron/classifier.hpp"
#include "barron/measure.hpp"
#include "barron/network.hpp"

namespace barron {

// Width selector N = ceil( ((BC)^2 d m / ln(BCMdm))^(1/(1+alpha)) ).
// Requires B, C >= 1, integers M, d, m >= 1 and BCMdm > 1 (positive log).
long long choose_width(double B, double C, long long M, long long d, long long m,
                       double alpha);

struct LabeledSample {
  Eigen::MatrixXd X;   // one point per row
  Eigen::VectorXi y;   // labels in {-1, +1}; +1 iff the point lies in omega
};

LabeledSample generate_dataset(const BarronBoundarySet& omega, const MeasureSpec& mu,
                               std::int64_t m, std::uint64_t seed);

struct ErmConfig {
  int restarts = 8;
  int steps = 5000;
  double step_initial = 0.1;   // step size initial / (1 + decay * step)
  double step_decay = 1e-3;
  std::uint64_t seed = 0;
};

struct ErmResult {
  NeuralNetwork net;
  double empirical01 = 0.0;  // best-seen empirical 0-1 loss
  int best_restart = 0;
  long long best_step = 0;
};

// Full-batch gradient descent on the logistic surrogate ln(1 + exp(-y f(x)))
// over networks with the fixed architecture (d, M(N+2d+2), M(4d+2), M, 1).
// Tracks the empirical 0-1 loss (sign convention: sign(0) = +1) of every
// iterate of every restart and returns the best one; ties resolve by
// (restart index, step index).  Restart r draws its initialization from
// mix(seed, r); if warm_start is given it replaces restart 0's
// initialization (it must have the same architecture).  Restarts are
// independent, so the result does not depend on the worker count.
ErmResult approximate_erm(const LabeledSample& sample, const std::vector<int>& architecture,
                          const ErmConfig& config,
                          const std::optional<NeuralNetwork>& warm_start = std::nullopt);

// Maps a [0,1]-valued indicator approximant to a {-}/{+} scorer: 2*output - 1.
NeuralNetwork to_pm1(const NeuralNetwork& net);

// P(sign(net(X)) != (2*indicator(X) - 1)); Wilson 95% half-width.
Estimate risk_estimate(const NeuralNetwork& net, const BarronBoundarySet& omega,
                       const MeasureSpec& mu, std::int64_t n, std::uint64_t seed);

// Shattering demo: n test points ((k-1)/n + 1/(2n), 0, ..., 0) in [-1,1]^d,
// horizon functions f_theta = sum_k (2 theta_k - 1) g_k built from Gaussian
// bumps g_k of width sigma = 1/(4n) centered at the test abscissae.  Counts
// how many of the 2^n sign patterns are realized as label vectors (all of
// them, the cross-talk between bumps is < (n-1) e^-8).
struct ShatterBump {
  Eigen::VectorXd center;      // in R^(d-1)
  double sigma = 0.0;
  double moment_constant = 0.0;  // certified spectral moment of the unit bump
};

struct ShatterResult {
  int n = 0;
  int d = 0;
  std::vector<ShatterBump> bumps;
  double function_constant = 0.0;  // certified class constant valid for every f_theta
  long long labelings_realized = 0;
};

// Requires 1 <= n <= 10 and d >= 2.
ShatterResult shattering_demo(int n, int d);

}  // namespace barron
