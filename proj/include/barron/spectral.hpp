#pragma once

#include <Eigen/Dense>
#include <vector>

#include "barron/common.hpp"

namespace barron {

// Axis-aligned closed box [lower_1, upper_1] x ... x [lower_d, upper_d].
struct DomainBox {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  int dim() const { return static_cast<int>(lower.size()); }
  bool contains(const Eigen::VectorXd& x) const;
  void validate() const;  // sizes match, lower <= upper, entries finite
};

// One atom modulus * e^(i*phase) * delta_freq of a discrete complex spectral
// measure.  The represented function is
//   f(x) = constant + sum_k Re[(e^(i<x,freq_k>) - e^(i<x0,freq_k>)) * F_k].
struct SpectralAtom {
  Eigen::VectorXd freq;
  double modulus = 0.0;
  double phase = 0.0;  // canonicalized to [-pi, pi)
};

struct BarronFunctionSpec {
  DomainBox domain;
  Eigen::VectorXd base_point;
  double constant = 0.0;
  std::vector<SpectralAtom> atoms;

  void validate() const;  // base_point inside domain, moduli >= 0, dims match
  // Returns a copy with phases wrapped to [-pi, pi).
  BarronFunctionSpec canonicalized() const;
};

// sup_{x in X} |<xi, x - x0>| in closed form (attained at a box corner).
// Requires x0 in X.
double seminorm_xi(const Eigen::VectorXd& xi, const DomainBox& X,
                   const Eigen::VectorXd& x0);

// sup_{xi != 0} ||xi||_inf / |xi|_{X,x0}; for a box the supremum is attained
// at a standard basis vector.  Requires nonempty interior.
double vartheta(const DomainBox& X, const Eigen::VectorXd& x0);

// Smallest admissible class constant: max(|constant|, sum_k |freq_k|_{X,x0} * modulus_k).
double barron_constant(const BarronFunctionSpec& f);

double eval_barron(const BarronFunctionSpec& f, const Eigen::VectorXd& x);

// Rows of X are points.
Eigen::VectorXd eval_barron_batch(const BarronFunctionSpec& f, const Eigen::MatrixXd& X);

}  // namespace barron
