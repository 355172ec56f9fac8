#include "barron/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "barron/rng.hpp"
#include "barron/threads.hpp"

namespace barron {

namespace {

constexpr double kZ95 = 1.959963984540054;  // 97.5% standard normal quantile
constexpr int kMaxRejectionTries = 10000;   // per point; 1/tries = 1e-4 acceptance

Estimate wilson(std::int64_t hits, std::int64_t n) {
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(hits) / nn;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / nn;
  const double hw = kZ95 * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  return Estimate{p, hw, n};
}

void draw_point(const MeasureSpec& mu, Rng& rng, Eigen::VectorXd& out) {
  switch (mu.kind) {
    case MeasureSpec::Kind::uniform_box:
      for (int j = 0; j < mu.box.dim(); ++j)
        out[j] = mu.box.lower[j] + (mu.box.upper[j] - mu.box.lower[j]) * rng.uniform01();
      return;
    case MeasureSpec::Kind::product_marginals:
      for (std::size_t j = 0; j < mu.marginals.size(); ++j)
        out[static_cast<int>(j)] = mu.marginals[j].invert(rng.uniform01());
      return;
    case MeasureSpec::Kind::density_weighted:
      for (int tries = 0; tries < kMaxRejectionTries; ++tries) {
        draw_point(*mu.base, rng, out);
        if (rng.uniform01() * mu.density.sup <= mu.density.fn(out)) return;
      }
      throw config_error("sample: rejection acceptance rate below 1e-4");
  }
  throw config_error("sample: unknown measure kind");
}

// Shared chunked-sampling skeleton for the estimators: fills per-chunk partial
// results that the caller combines in chunk order.
template <typename PerChunk>
void chunked_samples(const MeasureSpec& mu, std::int64_t n, std::uint64_t seed,
                     const PerChunk& per_chunk) {
  const int d = mu.dim();
  for_each_chunk(n, kMcChunk, [&](std::int64_t ci, std::int64_t begin, std::int64_t count) {
    Rng rng(mix(seed, static_cast<std::uint64_t>(ci)));
    Eigen::MatrixXd X(count, d);
    Eigen::VectorXd x(d);
    for (std::int64_t i = 0; i < count; ++i) {
      draw_point(mu, rng, x);
      X.row(i) = x.transpose();
    }
    per_chunk(ci, begin, X);
  });
}

void check_common(const MeasureSpec& mu, std::int64_t n) {
  mu.validate();
  if (n < 1) throw config_error("estimator: sample size must be positive");
}

}  // namespace

void MarginalTable::validate() const {
  if (x.size() < 2 || x.size() != cdf.size())
    throw config_error("marginal table: need matching x/cdf arrays with >= 2 knots");
  if (!x.allFinite() || !cdf.allFinite())
    throw config_error("marginal table: non-finite entries");
  for (Eigen::Index i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) throw config_error("marginal table: x must be strictly increasing");
    if (cdf[i] < cdf[i - 1]) throw config_error("marginal table: cdf must be non-decreasing");
  }
  if (cdf[0] != 0.0 || cdf[cdf.size() - 1] != 1.0)
    throw config_error("marginal table: cdf must run from 0 to 1");
}

double MarginalTable::invert(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  // First knot with cdf >= u; linear interpolation inside the segment.
  Eigen::Index j = 1;
  while (j < cdf.size() - 1 && cdf[j] < u) ++j;
  const double span = cdf[j] - cdf[j - 1];
  if (span <= 0.0) return x[j - 1];  // zero-mass segment
  const double t = (u - cdf[j - 1]) / span;
  return x[j - 1] + t * (x[j] - x[j - 1]);
}

double MarginalTable::holder_constant(double alpha) const {
  // For a piecewise-linear CDF the Hoelder quotient (F(t)-F(s))/(t-s)^alpha
  // is maximized with both s and t at knots.
  double best = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    for (Eigen::Index j = i + 1; j < x.size(); ++j)
      best = std::max(best, (cdf[j] - cdf[i]) / std::pow(x[j] - x[i], alpha));
  return best;
}

DensitySpec DensitySpec::named(const std::string& name, double a) {
  if (name != "one_plus_a_sin_pi_x1")
    throw config_error("density: unknown name '" + name + "'");
  if (!(std::fabs(a) <= 1.0))
    throw config_error("density: |a| must be <= 1 to keep 1 + a sin(pi x1) nonnegative");
  DensitySpec d;
  d.name = name;
  d.a = a;
  d.sup = 1.0 + std::fabs(a);
  d.fn = [a](const Eigen::VectorXd& x) { return 1.0 + a * std::sin(kPi * x[0]); };
  return d;
}

DensitySpec DensitySpec::ad_hoc(std::function<double(const Eigen::VectorXd&)> fn, double sup) {
  if (!fn) throw config_error("density: missing callable");
  if (!(sup > 0.0) || !std::isfinite(sup))
    throw config_error("density: sup bound must be a positive real");
  DensitySpec d;
  d.sup = sup;
  d.fn = std::move(fn);
  return d;
}

MeasureSpec MeasureSpec::uniform(const DomainBox& box) {
  MeasureSpec mu;
  mu.kind = Kind::uniform_box;
  mu.box = box;
  mu.alpha = 1.0;
  return mu;
}

MeasureSpec MeasureSpec::product(std::vector<MarginalTable> marginals, double alpha) {
  MeasureSpec mu;
  mu.kind = Kind::product_marginals;
  mu.marginals = std::move(marginals);
  mu.alpha = alpha;
  return mu;
}

MeasureSpec MeasureSpec::weighted(MeasureSpec base, DensitySpec density) {
  MeasureSpec mu;
  mu.kind = Kind::density_weighted;
  mu.alpha = base.alpha;
  mu.base = std::make_shared<const MeasureSpec>(std::move(base));
  mu.density = std::move(density);
  return mu;
}

int MeasureSpec::dim() const {
  switch (kind) {
    case Kind::uniform_box: return box.dim();
    case Kind::product_marginals: return static_cast<int>(marginals.size());
    case Kind::density_weighted: return base ? base->dim() : 0;
  }
  return 0;
}

void MeasureSpec::validate() const {
  switch (kind) {
    case Kind::uniform_box:
      box.validate();
      if (box.dim() < 1) throw config_error("measure: empty box");
      return;
    case Kind::product_marginals:
      if (marginals.empty()) throw config_error("measure: no marginals");
      if (!(alpha > 0.0) || !(alpha <= 1.0))
        throw config_error("measure: alpha must lie in (0, 1]");
      for (const MarginalTable& t : marginals) t.validate();
      return;
    case Kind::density_weighted:
      if (!base) throw config_error("measure: missing base measure");
      base->validate();
      if (!density.fn) throw config_error("measure: missing density callable");
      if (!(density.sup > 0.0) || !std::isfinite(density.sup))
        throw config_error("measure: density sup must be a positive real");
      return;
  }
  throw config_error("measure: unknown kind");
}

TubeCertificate tube_params(const MeasureSpec& mu) {
  mu.validate();
  switch (mu.kind) {
    case MeasureSpec::Kind::uniform_box: {
      double C = 0.0;
      for (int j = 0; j < mu.box.dim(); ++j) {
        const double side = mu.box.upper[j] - mu.box.lower[j];
        if (!(side > 0.0))
          throw config_error("tube_params: degenerate box axis has no tube certificate");
        C = std::max(C, 2.0 / side);
      }
      return TubeCertificate{1.0, C};
    }
    case MeasureSpec::Kind::product_marginals: {
      double H = 0.0;
      for (const MarginalTable& t : mu.marginals) H = std::max(H, t.holder_constant(mu.alpha));
      return TubeCertificate{mu.alpha, std::pow(2.0, mu.alpha) * H};
    }
    case MeasureSpec::Kind::density_weighted: {
      TubeCertificate c = tube_params(*mu.base);
      c.C *= mu.density.sup;
      return c;
    }
  }
  throw config_error("tube_params: unknown measure kind");
}

Eigen::MatrixXd sample(const MeasureSpec& mu, std::int64_t n, std::uint64_t seed) {
  check_common(mu, n);
  Eigen::MatrixXd out(n, mu.dim());
  chunked_samples(mu, n, seed,
                  [&](std::int64_t, std::int64_t begin, const Eigen::MatrixXd& X) {
                    out.middleRows(begin, X.rows()) = X;
                  });
  return out;
}

Estimate tube_mass_estimate(const MeasureSpec& mu,
                            const std::function<double(const Eigen::VectorXd&)>& f,
                            int axis, double eps, std::int64_t n, std::uint64_t seed) {
  check_common(mu, n);
  const int d = mu.dim();
  if (axis < 1 || axis > d) throw config_error("tube_mass_estimate: axis out of range");
  if (!(eps > 0.0) || !(eps <= 1.0))
    throw config_error("tube_mass_estimate: eps must lie in (0, 1]");
  if (!f) throw config_error("tube_mass_estimate: missing boundary function");

  const int axis0 = axis - 1;
  const std::int64_t chunks = (n + kMcChunk - 1) / kMcChunk;
  std::vector<std::int64_t> hits(static_cast<std::size_t>(chunks), 0);
  chunked_samples(mu, n, seed, [&](std::int64_t ci, std::int64_t, const Eigen::MatrixXd& X) {
    std::int64_t h = 0;
    Eigen::VectorXd face(d - 1);
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      for (int j = 0, k = 0; j < d; ++j)
        if (j != axis0) face[k++] = X(i, j);
      if (std::fabs(X(i, axis0) - f(face)) <= eps) ++h;
    }
    hits[static_cast<std::size_t>(ci)] = h;
  });
  std::int64_t total = 0;
  for (std::int64_t h : hits) total += h;
  return wilson(total, n);
}

Estimate disagreement_probability(const MeasureSpec& mu, const BarronBoundarySet& omega,
                                  const NeuralNetwork& net, std::int64_t n,
                                  std::uint64_t seed, double threshold) {
  check_common(mu, n);
  omega.validate();
  if (omega.dim != mu.dim() || net.input_dim() != mu.dim() || net.output_dim() != 1)
    throw config_error("disagreement_probability: dimension mismatch");

  const std::int64_t chunks = (n + kMcChunk - 1) / kMcChunk;
  std::vector<std::int64_t> miss(static_cast<std::size_t>(chunks), 0);
  chunked_samples(mu, n, seed, [&](std::int64_t ci, std::int64_t, const Eigen::MatrixXd& X) {
    const Eigen::MatrixXd out = evaluate_batch(net, X);
    const Eigen::VectorXi truth = indicator_eval_batch(omega, X);
    std::int64_t m = 0;
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      const int pred = out(i, 0) >= threshold ? 1 : 0;
      if (pred != truth[i]) ++m;
    }
    miss[static_cast<std::size_t>(ci)] = m;
  });
  std::int64_t total = 0;
  for (std::int64_t m : miss) total += m;
  return wilson(total, n);
}

Estimate lp_error(const MeasureSpec& mu, const BarronBoundarySet& omega,
                  const NeuralNetwork& net, double p, std::int64_t n, std::uint64_t seed) {
  check_common(mu, n);
  omega.validate();
  if (omega.dim != mu.dim() || net.input_dim() != mu.dim() || net.output_dim() != 1)
    throw config_error("lp_error: dimension mismatch");
  if (!(p >= 1.0) || !std::isfinite(p)) throw config_error("lp_error: p must be >= 1");

  const std::int64_t chunks = (n + kMcChunk - 1) / kMcChunk;
  std::vector<double> s1(static_cast<std::size_t>(chunks), 0.0);
  std::vector<double> s2(static_cast<std::size_t>(chunks), 0.0);
  chunked_samples(mu, n, seed, [&](std::int64_t ci, std::int64_t, const Eigen::MatrixXd& X) {
    const Eigen::MatrixXd out = evaluate_batch(net, X);
    const Eigen::VectorXi truth = indicator_eval_batch(omega, X);
    double a = 0.0, b = 0.0;
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      const double e = std::pow(std::fabs(static_cast<double>(truth[i]) - out(i, 0)), p);
      a += e;
      b += e * e;
    }
    s1[static_cast<std::size_t>(ci)] = a;
    s2[static_cast<std::size_t>(ci)] = b;
  });
  double sum = 0.0, sumsq = 0.0;
  for (std::int64_t c = 0; c < chunks; ++c) {  // fixed combine order
    sum += s1[static_cast<std::size_t>(c)];
    sumsq += s2[static_cast<std::size_t>(c)];
  }
  const double nn = static_cast<double>(n);
  const double mean = sum / nn;
  const double var = std::max(0.0, sumsq / nn - mean * mean);
  const double se = std::sqrt(var / nn);
  Estimate est;
  est.n = n;
  est.value = std::pow(mean, 1.0 / p);
  // Delta method for mean^(1/p); degenerate at mean = 0 where the error is 0.
  est.half_width = mean > 0.0 ? kZ95 * se * (1.0 / p) * std::pow(mean, 1.0 / p - 1.0) : 0.0;
  return est;
}

}  // namespace barron
