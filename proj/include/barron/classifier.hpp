#pragma once

#include <cstdint>
#include <vector>

#include "barron/network.hpp"
#include "barron/shallow.hpp"
#include "barron/spectral.hpp"

namespace barron {

// One horizon patch: inside rectangle rect, a point belongs to the set iff
// sign * x_axis <= boundary(x with coordinate `axis` removed).  `axis` is
// 1-based; boundary.domain must equal the face box of rect (rect with that
// axis removed).
struct HorizonPatch {
  DomainBox rect;
  int axis = 1;
  int sign = 1;            // +1 or -1
  double constant_B = 1.0; // admissible class constant for boundary, >= its barron_constant
  BarronFunctionSpec boundary;

  DomainBox face_box() const;
  void validate(int dim) const;
};

// Union of horizon patches over rectangles with pairwise disjoint interiors.
struct BarronBoundarySet {
  int dim = 0;
  std::vector<HorizonPatch> patches;

  // Throws config_error listing every offending rectangle pair on overlap.
  void validate() const;
};

// Exact membership: scans patches in index order, the first rectangle
// containing x decides; points in no rectangle return 0.
int indicator_eval(const BarronBoundarySet& omega, const Eigen::VectorXd& x);
Eigen::VectorXi indicator_eval_batch(const BarronBoundarySet& omega, const Eigen::MatrixXd& X);

// Two-layer net realizing H_delta(t) = (relu(t) - relu(t - delta)) / delta:
// 0 for t <= 0, 1 for t >= delta, linear in between.
NeuralNetwork approx_heaviside_gadget(double delta);

// Net with inputs (x, y) in R^(d+1) realizing
//   relu( sum_i (ramp into [a_i + eps, b_i - eps]) + relu(y) - d ),
// which equals y for y in [0,1] when x lies in the eps-shrunken rectangle,
// vanishes outside the rectangle, and stays in [0,1] everywhere.
// Requires eps <= half of the smallest side of rect.
NeuralNetwork localize_gadget(const DomainBox& rect, double eps);

struct ClassifierBuildReport {
  std::vector<int> architecture;         // actual widths
  long long num_neurons = 0;
  long long num_nonzero_weights = 0;
  double max_abs_weight = 0.0;
  std::vector<int> bound_architecture;   // (d, M(N+2d+2), M(4d+2), M, 1)
  long long bound_neurons = 0;           // 7 M (N + d)
  long long bound_weights = 0;           // 54 d^2 M N
  double bound_magnitude = 0.0;          // d(4+R)(1+B) + sqrt(N)(1/B + 1/sqrt(B))
  double clip_radius = 0.0;              // R
  std::vector<bool> small_rectangle_flags;
  std::vector<double> subnet_sup_error;  // per patch, 0 for small rectangles
  double disagreement_bound_coeff = 0.0; // 6 C M B^alpha d^(3/2), filled by callers that know (alpha, C)
};

struct ClassifierSynthesisResult {
  NeuralNetwork net;
  ClassifierBuildReport report;
};

// Constructive indicator approximant with architecture exactly
// (d, M(N+2d+2), M(4d+2), M, 1).  Per patch: passthrough pairs and a width-N
// spectral subnet (built from floor(N/8) samples, zero-padded to N) feed
// per-coordinate localization ramps and an approximate Heaviside pair; a
// third-layer neuron combines them.  Rectangles whose clipped form has a side
// shorter than 2*B*sqrt(d-1)/sqrt(N) are emitted as all-zero blocks.
// Requires d >= 2 and N >= 8.
ClassifierSynthesisResult synthesize_classifier(const BarronBoundarySet& omega, int N,
                                                int K, std::uint64_t seed);

// Recomputes stats(net) and checks the report's exact architecture and its
// neuron/weight-count/magnitude bounds.
bool verify_architecture(const NeuralNetwork& net, const ClassifierBuildReport& report);

}  // namespace barron
