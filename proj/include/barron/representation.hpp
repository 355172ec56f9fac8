#pragma once

#include <Eigen/Dense>
#include <vector>

#include "barron/common.hpp"

namespace barron {

// a * relu(<w, x> + c)
struct ReluAtom {
  double a = 0.0;
  Eigen::VectorXd w;
  double c = 0.0;
};

// alpha * heaviside(<w, x> + c), heaviside(t) = 1 for t >= 0.
struct HeavisideAtom {
  double alpha = 0.0;
  Eigen::VectorXd w;
  double c = 0.0;
};

struct HeavisideRepresentation {
  int dim = 0;
  double R = 0.0;  // evaluation domain is the closed Euclidean ball of radius R
  double C = 0.0;  // ramp length 1 + R used by the conversion
  std::vector<HeavisideAtom> atoms;

  double tv_norm() const;  // sum |alpha|
};

double eval_relu_atoms(const std::vector<ReluAtom>& atoms, const Eigen::VectorXd& x);
double eval_heaviside(const HeavisideRepresentation& rep, const Eigen::VectorXd& x);

// Variation norm of the ReLU representation: sum |a| * (||w||_2 + |c|).
double relu_norm(const std::vector<ReluAtom>& atoms);

// Discretizes relu(y) = integral_0^C heaviside(y - t) dt (valid for |y| <= R,
// C = 1 + R) with a Q-point midpoint rule.  Each ReLU atom (a, w, c) with
// theta = ||w||_2 + |c| > 0 becomes Q Heaviside atoms
// (a*theta*C/Q, w/theta, c/theta - t_q), t_q = (q - 1/2) C / Q; zero atoms are
// dropped.  The resulting tv_norm equals C * relu_norm exactly, and the
// realizations differ by at most |a|*theta*C/(2Q) per atom on the ball.
HeavisideRepresentation relu_to_heaviside(const std::vector<ReluAtom>& atoms, int dim,
                                          double R, long long Q);

// One row of the oscillation table: f_n(t) = gamma(t) * cos(n*pi/eps * t) in
// one dimension, where gamma is a smooth plateau cutoff that equals 1 on
// [-2*eps, 2*eps] up to ~1e-12.  second_derivative_l1 integrates |f_n''| over
// that plateau by piecewise Gauss-Legendre quadrature (exact value
// 8*pi*n^2/eps); fourier_norm_estimate is a closed-form upper bound on
// integral (1+|xi|)|F(xi)| d xi, which grows only linearly in n.
struct GapRow {
  int n = 0;
  double second_derivative_l1 = 0.0;
  double exact_value = 0.0;  // 8*pi*n^2/eps
  double fourier_norm_estimate = 0.0;
};

std::vector<GapRow> fourier_gap_demo(const std::vector<int>& n_list, double eps);

}  // namespace barron
