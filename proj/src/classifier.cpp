#include "barron/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "barron/rng.hpp"

namespace barron {

namespace {

// Global coordinate index (0-based) of the face coordinate `local` once the
// 0-based `axis0` has been removed.
int face_to_global(int local, int axis0) { return local < axis0 ? local : local + 1; }

Eigen::VectorXd face_coordinates(const Eigen::VectorXd& x, int axis0) {
  Eigen::VectorXd y(x.size() - 1);
  for (int j = 0, k = 0; j < x.size(); ++j)
    if (j != axis0) y[k++] = x[j];
  return y;
}

DomainBox clip_box(const DomainBox& rect, double R) {
  DomainBox out = rect;
  for (int j = 0; j < out.dim(); ++j) {
    out.lower[j] = std::max(out.lower[j], -R);
    out.upper[j] = std::min(out.upper[j], R);
  }
  return out;
}

}  // namespace

DomainBox HorizonPatch::face_box() const {
  DomainBox face;
  const int d = rect.dim();
  face.lower.resize(d - 1);
  face.upper.resize(d - 1);
  for (int j = 0, k = 0; j < d; ++j) {
    if (j == axis - 1) continue;
    face.lower[k] = rect.lower[j];
    face.upper[k] = rect.upper[j];
    ++k;
  }
  return face;
}

void HorizonPatch::validate(int dim) const {
  rect.validate();
  if (rect.dim() != dim) throw config_error("horizon patch: rectangle dimension mismatch");
  if (axis < 1 || axis > dim)
    throw config_error("horizon patch: axis must lie in [1, " + std::to_string(dim) + "]");
  if (sign != 1 && sign != -1) throw config_error("horizon patch: sign must be +1 or -1");
  if (!(constant_B > 0.0) || !std::isfinite(constant_B))
    throw config_error("horizon patch: constant_B must be a positive real");
  boundary.validate();
  const DomainBox face = face_box();
  if (boundary.domain.dim() != face.dim() || boundary.domain.lower != face.lower ||
      boundary.domain.upper != face.upper)
    throw config_error("horizon patch: boundary domain must equal the rectangle's face box");
  const double c = barron_constant(boundary);
  if (c > constant_B)
    throw config_error("horizon patch: boundary spectral constant " + std::to_string(c) +
                       " exceeds constant_B " + std::to_string(constant_B));
}

void BarronBoundarySet::validate() const {
  if (dim < 2) throw config_error("boundary set: ambient dimension must be at least 2");
  if (patches.empty()) throw config_error("boundary set: needs at least one patch");
  for (const HorizonPatch& p : patches) p.validate(dim);

  std::ostringstream overlaps;
  int count = 0;
  for (std::size_t a = 0; a < patches.size(); ++a) {
    for (std::size_t b = a + 1; b < patches.size(); ++b) {
      bool open_overlap = true;
      for (int j = 0; j < dim; ++j) {
        const double lo = std::max(patches[a].rect.lower[j], patches[b].rect.lower[j]);
        const double hi = std::min(patches[a].rect.upper[j], patches[b].rect.upper[j]);
        if (!(lo < hi)) {
          open_overlap = false;
          break;
        }
      }
      if (open_overlap) {
        overlaps << (count ? ", " : "") << "(" << (a + 1) << "," << (b + 1) << ")";
        ++count;
      }
    }
  }
  if (count)
    throw config_error("boundary set: rectangle interiors overlap for patch pairs " +
                       overlaps.str());
}

int indicator_eval(const BarronBoundarySet& omega, const Eigen::VectorXd& x) {
  if (x.size() != omega.dim) throw config_error("indicator_eval: point dimension mismatch");
  for (const HorizonPatch& p : omega.patches) {
    if (!p.rect.contains(x)) continue;
    const double fy = eval_barron(p.boundary, face_coordinates(x, p.axis - 1));
    return (p.sign * x[p.axis - 1] <= fy) ? 1 : 0;
  }
  return 0;
}

Eigen::VectorXi indicator_eval_batch(const BarronBoundarySet& omega, const Eigen::MatrixXd& X) {
  Eigen::VectorXi out(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    out[i] = indicator_eval(omega, X.row(i).transpose());
  return out;
}

NeuralNetwork approx_heaviside_gadget(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw config_error("approx_heaviside_gadget: delta must be a positive real");
  Layer hidden;
  hidden.W = Eigen::MatrixXd::Ones(2, 1);
  hidden.b = Eigen::VectorXd::Zero(2);
  hidden.b[1] = -delta;
  Layer out;
  out.W.resize(1, 2);
  out.W << 1.0 / delta, -1.0 / delta;
  out.b = Eigen::VectorXd::Zero(1);
  return NeuralNetwork(1, {hidden, out});
}

NeuralNetwork localize_gadget(const DomainBox& rect, double eps) {
  rect.validate();
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw config_error("localize_gadget: eps must be a positive real");
  const int d = rect.dim();
  const double min_side = (rect.upper - rect.lower).minCoeff();
  if (!(eps <= 0.5 * min_side))
    throw config_error("localize_gadget: eps exceeds half the smallest rectangle side");

  // Hidden layer 1: the four ramp ReLUs per coordinate plus rho(y).
  Layer l1;
  l1.W = Eigen::MatrixXd::Zero(4 * d + 1, d + 1);
  l1.b = Eigen::VectorXd::Zero(4 * d + 1);
  for (int j = 0; j < d; ++j) {
    for (int r = 0; r < 4; ++r) l1.W(4 * j + r, j) = 1.0;
    l1.b[4 * j + 0] = -rect.lower[j];
    l1.b[4 * j + 1] = -rect.lower[j] - eps;
    l1.b[4 * j + 2] = -rect.upper[j] + eps;
    l1.b[4 * j + 3] = -rect.upper[j];
  }
  l1.W(4 * d, d) = 1.0;

  // Hidden layer 2: rho((1/eps) * sum_j (t1 - t2 - t3 + t4) + rho(y) - d).
  Layer l2;
  l2.W = Eigen::MatrixXd::Zero(1, 4 * d + 1);
  l2.b = Eigen::VectorXd::Constant(1, -static_cast<double>(d));
  for (int j = 0; j < d; ++j) {
    l2.W(0, 4 * j + 0) = 1.0 / eps;
    l2.W(0, 4 * j + 1) = -1.0 / eps;
    l2.W(0, 4 * j + 2) = -1.0 / eps;
    l2.W(0, 4 * j + 3) = 1.0 / eps;
  }
  l2.W(0, 4 * d) = 1.0;

  Layer out;
  out.W = Eigen::MatrixXd::Ones(1, 1);
  out.b = Eigen::VectorXd::Zero(1);
  return NeuralNetwork(d + 1, {l1, l2, out});
}

ClassifierSynthesisResult synthesize_classifier(const BarronBoundarySet& omega, int N, int K,
                                                std::uint64_t seed) {
  omega.validate();
  if (N < 8)
    throw config_error("synthesize_classifier: N must be at least 8 (empty inner budget)");
  if (K < 1) throw config_error("synthesize_classifier: K must be at least 1");

  const int d = omega.dim;
  const int M = static_cast<int>(omega.patches.size());
  const int w1 = N + 2 * d + 2;  // per-patch layer-1 block width
  const int w2 = 4 * d + 2;      // per-patch layer-2 block width
  const int n_inner = N / 8;     // samples handed to the spectral subnet

  // Clipping radius: the union of patch rectangles is contained in [-R,R]^d.
  double R = 0.0;
  for (const HorizonPatch& p : omega.patches)
    R = std::max(R, std::max(p.rect.lower.cwiseAbs().maxCoeff(),
                             p.rect.upper.cwiseAbs().maxCoeff()));

  Layer l1{Eigen::MatrixXd::Zero(M * w1, d), Eigen::VectorXd::Zero(M * w1)};
  Layer l2{Eigen::MatrixXd::Zero(M * w2, M * w1), Eigen::VectorXd::Zero(M * w2)};
  Layer l3{Eigen::MatrixXd::Zero(M, M * w2), Eigen::VectorXd::Zero(M)};
  Layer l4{Eigen::MatrixXd::Zero(1, M), Eigen::VectorXd::Zero(1)};

  ClassifierBuildReport report;
  report.small_rectangle_flags.assign(M, false);
  report.subnet_sup_error.assign(M, 0.0);
  report.clip_radius = R;

  double B_max = 0.0;
  for (int m = 0; m < M; ++m) {
    const HorizonPatch& p = omega.patches[m];
    B_max = std::max(B_max, p.constant_B);
    const int axis0 = p.axis - 1;
    const DomainBox rect = clip_box(p.rect, R);
    const double gamma = p.constant_B * std::sqrt(static_cast<double>(d - 1));
    const double eps = gamma / std::sqrt(static_cast<double>(N));
    const double min_side = (rect.upper - rect.lower).minCoeff();
    if (min_side < 2.0 * eps) {
      report.small_rectangle_flags[m] = true;  // block stays structurally zero
      continue;
    }

    const int r1 = m * w1;  // first layer-1 row of this block
    const int r2 = m * w2;

    // Layer 1: pass-through pairs rho(x_j), rho(-x_j) ...
    for (int j = 0; j < d; ++j) {
      l1.W(r1 + 2 * j, j) = 1.0;
      l1.W(r1 + 2 * j + 1, j) = -1.0;
    }
    // ... the spectral subnet for the boundary function (floor(N/8) samples,
    // zero-padded to the N-neuron budget) ...
    ShallowSynthesisResult sub = synthesize_shallow(
        p.boundary, n_inner, K, mix(seed, static_cast<std::uint64_t>(m)),
        default_validation_grid(p.boundary.domain, mix(seed, static_cast<std::uint64_t>(m))));
    report.subnet_sup_error[m] = sub.report.sup_error;
    const Layer& sub_hidden = sub.net.layers()[0];
    const Layer& sub_out = sub.net.layers()[1];
    const int n_sub = static_cast<int>(sub_hidden.W.rows());  // = 8 * n_inner <= N
    for (int k = 0; k < n_sub; ++k) {
      for (int c = 0; c < d - 1; ++c)
        l1.W(r1 + 2 * d + k, face_to_global(c, axis0)) = sub_hidden.W(k, c);
      l1.b[r1 + 2 * d + k] = sub_hidden.b[k];
    }
    // ... and the signed-coordinate pair rho(theta x_i), rho(-theta x_i).
    l1.W(r1 + 2 * d + N, axis0) = static_cast<double>(p.sign);
    l1.W(r1 + 2 * d + N + 1, axis0) = -static_cast<double>(p.sign);

    // Layer 2: four localization ramps per coordinate on u_j = rho(x_j) - rho(-x_j).
    for (int j = 0; j < d; ++j) {
      const double biases[4] = {-rect.lower[j], -rect.lower[j] - eps, -rect.upper[j] + eps,
                                -rect.upper[j]};
      for (int r = 0; r < 4; ++r) {
        l2.W(r2 + 4 * j + r, r1 + 2 * j) = 1.0;
        l2.W(r2 + 4 * j + r, r1 + 2 * j + 1) = -1.0;
        l2.b[r2 + 4 * j + r] = biases[r];
      }
    }
    // The approximate-Heaviside pair psi_1 = rho(fhat - theta x_i) and
    // psi_2 = rho(fhat - theta x_i - delta), with fhat folded in from the
    // subnet's output stage.
    const double delta = eps;
    for (int s = 0; s < 2; ++s) {
      const int row = r2 + 4 * d + s;
      for (int k = 0; k < n_sub; ++k) l2.W(row, r1 + 2 * d + k) = sub_out.W(0, k);
      l2.W(row, r1 + 2 * d + N) = -1.0;
      l2.W(row, r1 + 2 * d + N + 1) = 1.0;
      l2.b[row] = sub_out.b[0] - (s == 0 ? 0.0 : delta);
    }

    // Layer 3: rho((1/eps) sum_j (t1 - t2 - t3 + t4) + (1/delta)(psi1 - psi2) - d).
    for (int j = 0; j < d; ++j) {
      l3.W(m, r2 + 4 * j + 0) = 1.0 / eps;
      l3.W(m, r2 + 4 * j + 1) = -1.0 / eps;
      l3.W(m, r2 + 4 * j + 2) = -1.0 / eps;
      l3.W(m, r2 + 4 * j + 3) = 1.0 / eps;
    }
    l3.W(m, r2 + 4 * d) = 1.0 / delta;
    l3.W(m, r2 + 4 * d + 1) = -1.0 / delta;
    l3.b[m] = -static_cast<double>(d);

    l4.W(0, m) = 1.0;
  }

  NeuralNetwork net(d, {l1, l2, l3, l4});
  const NetworkStats s = stats(net);
  report.architecture = s.architecture;
  report.num_neurons = s.num_neurons;
  report.num_nonzero_weights = s.num_nonzero_weights;
  report.max_abs_weight = s.max_abs_weight;
  report.bound_architecture = {d, M * w1, M * w2, M, 1};
  report.bound_neurons = 7LL * M * (static_cast<long long>(N) + d);
  report.bound_weights = 54LL * d * d * M * N;
  report.bound_magnitude = d * (4.0 + R) * (1.0 + B_max) +
                           std::sqrt(static_cast<double>(N)) *
                               (1.0 / B_max + 1.0 / std::sqrt(B_max));
  return ClassifierSynthesisResult{std::move(net), std::move(report)};
}

bool verify_architecture(const NeuralNetwork& net, const ClassifierBuildReport& report) {
  const NetworkStats s = stats(net);
  return s.architecture == report.bound_architecture &&
         s.num_neurons <= report.bound_neurons &&
         s.num_nonzero_weights <= report.bound_weights &&
         s.max_abs_weight <= report.bound_magnitude;
}

}  // namespace barron
