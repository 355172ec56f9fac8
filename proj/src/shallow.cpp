#include "barron/shallow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "barron/rng.hpp"

namespace barron {

namespace {

constexpr int kCdfNodes = 4096;

int half_period_sign(long long m) { return ((m % 2) + 2) % 2 == 0 ? 1 : -1; }

// Exact integral of |sin u| over [u0, u1] restricted to {sign(sin u) = sgn}.
// On each half-period [m pi, (m+1) pi] the sign is constant and cos is
// monotone, so the piece contributes |cos u0 - cos u1|.
double abs_sin_mass(double u0, double u1, int sgn) {
  if (!(u1 > u0)) return 0.0;
  double total = 0.0;
  for (long long m = static_cast<long long>(std::floor(u0 / kPi)); m * kPi < u1; ++m) {
    if (half_period_sign(m) != sgn) continue;
    const double lo = std::max(u0, m * kPi);
    const double hi = std::min(u1, (m + 1) * kPi);
    if (hi > lo) total += std::fabs(std::cos(lo) - std::cos(hi));
  }
  return total;
}

// Tabulated CDF of t -> |sin(a t + theta)| 1_{sign matches} on [0, 1];
// exact at the nodes, inverted with linear interpolation in between.
struct SignTable {
  double mass = 0.0;          // modulus * integral, the sampling weight
  Eigen::VectorXd cdf;        // kCdfNodes + 1 nodes, in |sin| units

  double invert(double u) const {
    const double target = u * cdf(kCdfNodes);
    const double* begin = cdf.data();
    const double* end = begin + kCdfNodes + 1;
    const double* it = std::upper_bound(begin, end, target);
    long long j = std::max<long long>(1, it - begin);
    j = std::min<long long>(j, kCdfNodes);
    const double c0 = cdf(j - 1), c1 = cdf(j);
    const double frac = (c1 > c0) ? (target - c0) / (c1 - c0) : 0.0;
    return (static_cast<double>(j - 1) + frac) / kCdfNodes;
  }
};

// One summand of the exact step-integral form of a recentered cosine atom.
// Writing z = <xi, x - x0> and H for the Heaviside step, for |z| <= a
//
//   r cos(z + theta) - r cos(theta)
//     = r sin(theta) Int_0^a [H(-z-u) - H(z-u)] cos(u) du      (odd part)
//     + r cos(theta) Int_0^a [-H(z-u) - H(-z-u)] sin(u) du     (even part),
//
// so each atom feeds two sampling sources: the odd one draws thresholds from
// |cos u| with amplitude r|sin theta|, the even one from |sin u| with
// amplitude r|cos theta|.  Since |cos u| = |sin(u + pi/2)| both reuse the
// same half-period integrator, shifted by the source offset.  The sample sign
// is sign(sin theta) (resp. sign(cos theta)) times the threshold-density sign.
struct SampleSource {
  Eigen::VectorXd xi_star;  // freq / |freq|_{X,x0}
  bool even = false;        // selects the step-pair pattern in the gadget
  SignTable part[2];        // 0: sign +1, 1: sign -1
};

struct SamplerState {
  std::vector<SampleSource> sources;
  double total[2] = {0.0, 0.0};      // summed sampling weights per sign
  std::vector<double> cum[2];        // cumulative weights for source selection
  double v = 0.0;                    // total[0] + total[1], at most C
};

SamplerState build_sampler(const BarronFunctionSpec& f) {
  SamplerState st;
  for (const SpectralAtom& atom : f.atoms) {
    if (atom.modulus <= 0.0) continue;
    const double a = seminorm_xi(atom.freq, f.domain, f.base_point);
    if (a <= 0.0) continue;  // such an atom contributes the zero function
    const double theta = atom.phase + atom.freq.dot(f.base_point);
    for (int parity = 0; parity < 2; ++parity) {
      const bool even = parity == 1;
      const double amp =
          atom.modulus * (even ? std::fabs(std::cos(theta)) : std::fabs(std::sin(theta)));
      if (amp <= 0.0) continue;
      const int amp_sign = (even ? std::cos(theta) : std::sin(theta)) > 0.0 ? 1 : -1;
      const double offset = even ? 0.0 : kPi / 2.0;
      SampleSource src;
      src.xi_star = atom.freq / a;
      src.even = even;
      for (int s = 0; s < 2; ++s) {
        const int sgn = ((s == 0) ? 1 : -1) * amp_sign;
        Eigen::VectorXd cdf(kCdfNodes + 1);
        cdf(0) = 0.0;
        double u_prev = offset;
        for (int j = 1; j <= kCdfNodes; ++j) {
          const double u = offset + a * (static_cast<double>(j) / kCdfNodes);
          cdf(j) = cdf(j - 1) + abs_sin_mass(u_prev, u, sgn);
          u_prev = u;
        }
        src.part[s].cdf = std::move(cdf);
        src.part[s].mass = amp * src.part[s].cdf(kCdfNodes);
      }
      st.sources.push_back(std::move(src));
    }
  }
  for (int s = 0; s < 2; ++s) {
    double acc = 0.0;
    st.cum[s].reserve(st.sources.size());
    for (const SampleSource& src : st.sources) {
      acc += src.part[s].mass;
      st.cum[s].push_back(acc);
    }
    st.total[s] = acc;
  }
  st.v = st.total[0] + st.total[1];
  return st;
}

NeuralNetwork draw_candidate(const BarronFunctionSpec& f, const SamplerState& st, int N,
                             std::uint64_t stream_seed, double C) {
  const int d = f.domain.dim();
  Eigen::MatrixXd W1 = Eigen::MatrixXd::Zero(8 * N, d);
  Eigen::VectorXd b1 = Eigen::VectorXd::Zero(8 * N);
  Eigen::MatrixXd Wout = Eigen::MatrixXd::Zero(1, 8 * N);
  Eigen::VectorXd bout(1);
  bout(0) = f.constant;

  if (st.v > 0.0) {
    const double sqrtC = std::sqrt(C);
    const double eps = 0.25 / std::sqrt(static_cast<double>(N));
    Rng rng(stream_seed);
    for (int s = 0; s < 2; ++s) {
      if (st.total[s] <= 0.0) continue;  // this sign part vanishes; keep zeros
      const double V = st.total[s] / st.v;
      const double coef = (s == 0 ? 1.0 : -1.0) * (1.0 / (N * eps)) * st.v * V / sqrtC;
      for (int i = 0; i < N; ++i) {
        const double target = rng.uniform01() * st.total[s];
        const std::size_t k =
            std::upper_bound(st.cum[s].begin(), st.cum[s].end(), target) - st.cum[s].begin();
        const SampleSource& src = st.sources[std::min(k, st.sources.size() - 1)];
        const double t = src.part[s].invert(rng.uniform01());

        // Four ramp neurons realizing the smoothed step pair, recentered so
        // the network takes x (not x - x0) as input.  Odd sources emit
        // H_eps(-<xi*, x - x0> - t) - H_eps(<xi*, x - x0> - t); even sources
        // emit -H_eps(<xi*, x - x0> - t) - H_eps(-<xi*, x - x0> - t).
        const double shift = src.xi_star.dot(f.base_point);
        const Eigen::Index r = static_cast<Eigen::Index>(s) * 4 * N + 4 * i;
        W1.row(r) = -sqrtC * src.xi_star.transpose();
        W1.row(r + 1) = -sqrtC * src.xi_star.transpose();
        W1.row(r + 2) = sqrtC * src.xi_star.transpose();
        W1.row(r + 3) = sqrtC * src.xi_star.transpose();
        b1(r) = sqrtC * (-t + shift);
        b1(r + 1) = sqrtC * (-t - eps + shift);
        b1(r + 2) = sqrtC * (-t - shift);
        b1(r + 3) = sqrtC * (-t - eps - shift);
        const double first = src.even ? -coef : coef;
        Wout(0, r) = first;
        Wout(0, r + 1) = -first;
        Wout(0, r + 2) = -coef;
        Wout(0, r + 3) = coef;
      }
    }
  }
  std::vector<Layer> layers;
  layers.push_back(Layer{std::move(W1), std::move(b1)});
  layers.push_back(Layer{std::move(Wout), std::move(bout)});
  return NeuralNetwork(d, std::move(layers));
}

}  // namespace

ShallowSynthesisResult synthesize_shallow(const BarronFunctionSpec& f, int N, int K,
                                          std::uint64_t seed,
                                          const Eigen::MatrixXd& validation_grid) {
  f.validate();
  if (N < 1) throw config_error("synthesize_shallow: sample budget N must be positive");
  if (K < 1) throw config_error("synthesize_shallow: candidate count K must be positive");
  if (validation_grid.rows() < 1)
    throw config_error("synthesize_shallow: validation grid is empty");
  if (validation_grid.cols() != f.domain.dim())
    throw config_error("synthesize_shallow: validation grid dimension mismatch");
  for (Eigen::Index r = 0; r < validation_grid.rows(); ++r)
    if (!f.domain.contains(validation_grid.row(r).transpose()))
      throw config_error("synthesize_shallow: validation grid point " + std::to_string(r + 1) +
                         " lies outside the domain");

  const double C = barron_constant(f);
  const double theta = vartheta(f.domain, f.base_point);
  const double bound =
      (5.0 + theta) * (1.0 + f.base_point.lpNorm<1>()) * std::sqrt(C);

  const SamplerState st = build_sampler(f);
  const Eigen::VectorXd targets = eval_barron_batch(f, validation_grid);

  std::optional<NeuralNetwork> best;
  double best_err = std::numeric_limits<double>::infinity();
  int best_k = 0;
  for (int k = 0; k < K; ++k) {
    NeuralNetwork cand = draw_candidate(f, st, N, mix(seed, static_cast<std::uint64_t>(k)), C);
    const double err =
        (evaluate_batch(cand, validation_grid).col(0) - targets).cwiseAbs().maxCoeff();
    if (err < best_err) {
      best_err = err;
      best_k = k;
      best = std::move(cand);
    }
  }

  ShallowSynthesisReport report;
  report.sup_error = best_err;
  report.weight_bound = bound;
  report.max_abs_weight = stats(*best).max_abs_weight;
  report.candidates = K;
  report.selected = best_k;
  report.v = st.v;
  if (report.max_abs_weight > bound * (1.0 + 1e-12))
    throw numerical_error(
        "synthesize_shallow: weight audit failed: max |w| = " +
        std::to_string(report.max_abs_weight) + " exceeds the admissible bound " +
        std::to_string(bound) + " (the constant term is too large to place in the output bias)");
  return ShallowSynthesisResult{std::move(*best), report};
}

Eigen::MatrixXd default_validation_grid(const DomainBox& box, std::uint64_t seed) {
  box.validate();
  const int d = box.dim();
  const int n1 = 101;
  const auto node = [&](int axis, int j) {
    return box.lower(axis) +
           (box.upper(axis) - box.lower(axis)) * (static_cast<double>(j) / (n1 - 1));
  };
  if (d == 1) {
    Eigen::MatrixXd G(n1, 1);
    for (int j = 0; j < n1; ++j) G(j, 0) = node(0, j);
    return G;
  }
  const Eigen::Index extra = (d > 2) ? 10000 : 0;
  Eigen::MatrixXd G(static_cast<Eigen::Index>(n1) * n1 + extra, d);
  Eigen::RowVectorXd center = 0.5 * (box.lower + box.upper).transpose();
  Eigen::Index r = 0;
  for (int j0 = 0; j0 < n1; ++j0)
    for (int j1 = 0; j1 < n1; ++j1) {
      G.row(r) = center;
      G(r, 0) = node(0, j0);
      G(r, 1) = node(1, j1);
      ++r;
    }
  if (extra > 0) {
    Rng rng(mix(seed, 0xD1CEull));
    for (; r < G.rows(); ++r)
      for (int i = 0; i < d; ++i) G(r, i) = rng.uniform(box.lower(i), box.upper(i));
  }
  return G;
}

}  // namespace barron
