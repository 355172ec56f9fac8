#pragma once

#include <cstdint>

#include "barron/network.hpp"
#include "barron/spectral.hpp"

namespace barron {

struct ShallowSynthesisReport {
  double sup_error = 0.0;       // max |net - f| over the validation grid
  double weight_bound = 0.0;    // (5 + vartheta) * (1 + ||x0||_1) * sqrt(C)
  double max_abs_weight = 0.0;  // audited against weight_bound on every build
  int candidates = 0;           // K
  int selected = 0;             // index of the winning candidate
  double v = 0.0;               // total mass of the sampling density, <= C
};

struct ShallowSynthesisResult {
  NeuralNetwork net;  // architecture (d, 8N, 1), exactly
  ShallowSynthesisReport report;
};

// Builds a one-hidden-layer ReLU approximant of the spectral representation f.
// Each atom r*cos(<xi, x - x0> + theta) - r*cos(theta) splits exactly into an
// odd step integral (amplitude r|sin theta|, threshold density |cos u|) and an
// even one (amplitude r|cos theta|, density |sin u|); both are importance-
// sampled and realized as four ramp neurons per sample.  Draws K candidate
// nets from substreams mix(seed, k) and keeps the one with the smallest
// sup-error over validation_grid (rows are points inside f.domain).  Unused
// capacity (an empty sign part, or a vanishing spectral part) is padded with
// structurally zero neurons so the hidden width is always exactly 8N.
ShallowSynthesisResult synthesize_shallow(const BarronFunctionSpec& f, int N, int K,
                                          std::uint64_t seed,
                                          const Eigen::MatrixXd& validation_grid);

// Default validation point set: a 101-per-axis uniform grid for dim <= 2; for
// dim > 2 a 101x101 grid on the first two axes (other coordinates at the box
// center) plus 10^4 uniform random points drawn from a substream of seed.
Eigen::MatrixXd default_validation_grid(const DomainBox& box, std::uint64_t seed);

}  // namespace barron
