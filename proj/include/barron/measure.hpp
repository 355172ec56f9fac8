#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "barron/classifier.hpp"
#include "barron/network.hpp"
#include "barron/spectral.hpp"

namespace barron {

// Piecewise-linear CDF table for one axis: x strictly increasing, cdf
// non-decreasing from 0 to 1.
struct MarginalTable {
  Eigen::VectorXd x;
  Eigen::VectorXd cdf;

  void validate() const;
  double invert(double u) const;           // inverse CDF by linear interpolation
  double holder_constant(double alpha) const;  // max |dF| / |dx|^alpha over knot pairs
};

// Bounded density against a base measure.  Named densities round-trip through
// JSON; ad-hoc callables work in-process only.
struct DensitySpec {
  std::string name;  // "one_plus_a_sin_pi_x1" is the built-in; empty for ad-hoc
  double a = 0.0;
  double sup = 1.0;
  std::function<double(const Eigen::VectorXd&)> fn;

  static DensitySpec named(const std::string& name, double a);
  static DensitySpec ad_hoc(std::function<double(const Eigen::VectorXd&)> fn, double sup);
};

// Probability measure with a tube-mass certificate: mu(|x_i - f(x^(i))| <= eps)
// <= C * eps^alpha for all axes i and bounded f.
struct MeasureSpec {
  enum class Kind { uniform_box, product_marginals, density_weighted };

  Kind kind = Kind::uniform_box;
  DomainBox box;                          // uniform_box
  std::vector<MarginalTable> marginals;   // product_marginals
  double alpha = 1.0;                     // Hoelder exponent for the certificate
  std::shared_ptr<const MeasureSpec> base;  // density_weighted
  DensitySpec density;

  static MeasureSpec uniform(const DomainBox& box);
  static MeasureSpec product(std::vector<MarginalTable> marginals, double alpha = 1.0);
  static MeasureSpec weighted(MeasureSpec base, DensitySpec density);

  int dim() const;
  void validate() const;
};

struct TubeCertificate {
  double alpha = 1.0;
  double C = 0.0;
};

// uniform_box: (1, max_i 2/(b_i - a_i)); product_marginals: (alpha,
// 2^alpha * max marginal Hoelder constant); density_weighted: base certificate
// with C scaled by sup of the density.  Throws on degenerate axes.
TubeCertificate tube_params(const MeasureSpec& mu);

// n i.i.d. samples, one per row.  Chunked: chunk j draws from stream
// mix(seed, j), so results are identical for any worker count.  Rejection
// sampling (density_weighted) throws config_error if the acceptance rate
// falls below 1e-4.
Eigen::MatrixXd sample(const MeasureSpec& mu, std::int64_t n, std::uint64_t seed);

struct Estimate {
  double value = 0.0;
  double half_width = 0.0;  // 95% interval half-width
  std::int64_t n = 0;
};

// Monte-Carlo mass of the tube |x_axis - f(x^(axis))| <= eps (axis is
// 1-based); Wilson 95% half-width.
Estimate tube_mass_estimate(const MeasureSpec& mu,
                            const std::function<double(const Eigen::VectorXd&)>& f,
                            int axis, double eps, std::int64_t n, std::uint64_t seed);

// P(indicator(omega) != [net(x) >= threshold]); Wilson 95% half-width.
Estimate disagreement_probability(const MeasureSpec& mu, const BarronBoundarySet& omega,
                                  const NeuralNetwork& net, std::int64_t n,
                                  std::uint64_t seed, double threshold = 0.5);

// (E |indicator - net|^p)^(1/p) for p >= 1; delta-method 95% half-width.
Estimate lp_error(const MeasureSpec& mu, const BarronBoundarySet& omega,
                  const NeuralNetwork& net, double p, std::int64_t n, std::uint64_t seed);

}  // namespace barron
