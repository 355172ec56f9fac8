#include "barron/erm.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "barron/rng.hpp"

namespace barron {

namespace {

// d/du of ln(1 + exp(-u)) is -sigmoid(-u); both branches stay in exp's
// safe range.
double sigmoid_neg(double u) {
  if (u >= 0.0) {
    const double e = std::exp(-u);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(u));
}

std::vector<Layer> he_init(const std::vector<int>& arch, Rng& rng) {
  std::vector<Layer> layers(arch.size() - 1);
  for (std::size_t l = 0; l + 1 < arch.size(); ++l) {
    const int fan_in = arch[l], rows = arch[l + 1];
    const double scale = std::sqrt(2.0 / static_cast<double>(fan_in));
    layers[l].W.resize(rows, fan_in);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < fan_in; ++c) layers[l].W(r, c) = scale * rng.normal();
    layers[l].b = Eigen::VectorXd::Zero(rows);
  }
  return layers;
}

long long count_01_errors(const Eigen::VectorXd& f, const Eigen::VectorXi& y) {
  long long errs = 0;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const int pred = f[i] >= 0.0 ? 1 : -1;  // sign(0) = +1
    if (pred != y[i]) ++errs;
  }
  return errs;
}

}  // namespace

long long choose_width(double B, double C, long long M, long long d, long long m,
                       double alpha) {
  if (!(B >= 1.0) || !(C >= 1.0) || !std::isfinite(B) || !std::isfinite(C))
    throw config_error("choose_width: B and C must be reals >= 1");
  if (M < 1 || d < 1 || m < 1)
    throw config_error("choose_width: M, d, m must be positive integers");
  if (!(alpha > 0.0) || !(alpha <= 1.0))
    throw config_error("choose_width: alpha must lie in (0, 1]");
  const long double prod = static_cast<long double>(B) * C * M * d * m;
  if (!(prod > 1.0L))
    throw config_error("choose_width: BCMdm must exceed 1 for a positive logarithm");
  const long double bc = static_cast<long double>(B) * C;
  const long double value =
      powl(bc * bc * d * m / logl(prod), 1.0L / (1.0L + static_cast<long double>(alpha)));
  return static_cast<long long>(ceill(value));
}

LabeledSample generate_dataset(const BarronBoundarySet& omega, const MeasureSpec& mu,
                               std::int64_t m, std::uint64_t seed) {
  omega.validate();
  if (mu.dim() != omega.dim) throw config_error("generate_dataset: dimension mismatch");
  LabeledSample out;
  out.X = sample(mu, m, seed);
  const Eigen::VectorXi ind = indicator_eval_batch(omega, out.X);
  out.y = 2 * ind.array() - 1;
  return out;
}

ErmResult approximate_erm(const LabeledSample& sample, const std::vector<int>& architecture,
                          const ErmConfig& config,
                          const std::optional<NeuralNetwork>& warm_start) {
  const std::int64_t m = sample.X.rows();
  if (m < 1) throw config_error("approximate_erm: empty sample");
  if (sample.y.size() != m) throw config_error("approximate_erm: label count mismatch");
  for (Eigen::Index i = 0; i < m; ++i)
    if (sample.y[i] != 1 && sample.y[i] != -1)
      throw config_error("approximate_erm: labels must be +1 or -1");
  if (architecture.size() < 2 || architecture.back() != 1)
    throw config_error("approximate_erm: architecture must end in one output");
  for (int w : architecture)
    if (w < 1) throw config_error("approximate_erm: layer widths must be positive");
  if (architecture.front() != sample.X.cols())
    throw config_error("approximate_erm: architecture input width must match the sample");
  if (config.restarts < 1 || config.steps < 0 || !(config.step_initial > 0.0) ||
      !(config.step_decay >= 0.0))
    throw config_error("approximate_erm: invalid optimizer configuration");
  if (warm_start && warm_start->architecture() != architecture)
    throw config_error("approximate_erm: warm start architecture mismatch");

  const int L = static_cast<int>(architecture.size()) - 1;
  const double inv_m = 1.0 / static_cast<double>(m);

  // Preallocated forward/backward buffers; rows are sample points.
  std::vector<Eigen::MatrixXd> Z(L), A(L), G(L), dW(L);
  std::vector<Eigen::VectorXd> db(L);
  for (int l = 0; l < L; ++l) {
    Z[l].resize(m, architecture[l + 1]);
    A[l].resize(m, architecture[l + 1]);
    G[l].resize(m, architecture[l + 1]);
    dW[l].resize(architecture[l + 1], architecture[l]);
    db[l].resize(architecture[l + 1]);
  }

  const auto forward = [&](const std::vector<Layer>& p) {
    for (int l = 0; l < L; ++l) {
      const Eigen::MatrixXd& in = (l == 0) ? sample.X : A[l - 1];
      Z[l].noalias() = in * p[l].W.transpose();
      Z[l].rowwise() += p[l].b.transpose();
      if (l + 1 < L) A[l] = Z[l].cwiseMax(0.0);
    }
  };

  long long best_errs = m + 1;
  int best_restart = 0;
  long long best_step = 0;
  std::vector<Layer> best_params;

  for (int r = 0; r < config.restarts; ++r) {
    std::vector<Layer> params;
    if (r == 0 && warm_start) {
      params = warm_start->layers();
    } else {
      Rng rng(mix(config.seed, static_cast<std::uint64_t>(r)));
      params = he_init(architecture, rng);
    }

    for (long long step = 0; step <= config.steps; ++step) {
      forward(params);
      const long long errs = count_01_errors(Z[L - 1].col(0), sample.y);
      if (errs < best_errs) {  // lexicographic: loss, then restart, then step
        best_errs = errs;
        best_restart = r;
        best_step = step;
        best_params = params;
      }
      if (step == config.steps) break;

      // dL/df for the logistic surrogate, then standard backprop.
      for (Eigen::Index i = 0; i < m; ++i) {
        const double u = sample.y[i] * Z[L - 1](i, 0);
        G[L - 1](i, 0) = -sample.y[i] * sigmoid_neg(u) * inv_m;
      }
      for (int l = L - 1; l >= 0; --l) {
        const Eigen::MatrixXd& in = (l == 0) ? sample.X : A[l - 1];
        dW[l].noalias() = G[l].transpose() * in;
        db[l] = G[l].colwise().sum().transpose();
        if (l > 0) {
          G[l - 1].noalias() = G[l] * params[l].W;
          G[l - 1] = (Z[l - 1].array() > 0.0).select(G[l - 1], 0.0);
        }
      }
      const double lr = config.step_initial / (1.0 + config.step_decay * step);
      for (int l = 0; l < L; ++l) {
        params[l].W -= lr * dW[l];
        params[l].b -= lr * db[l];
      }
    }
  }

  ErmResult out{NeuralNetwork(architecture.front(), std::move(best_params)),
                static_cast<double>(best_errs) * inv_m, best_restart, best_step};
  return out;
}

NeuralNetwork to_pm1(const NeuralNetwork& net) {
  std::vector<Layer> layers = net.layers();
  layers.back().W *= 2.0;
  layers.back().b = 2.0 * layers.back().b - Eigen::VectorXd::Ones(layers.back().b.size());
  return NeuralNetwork(net.input_dim(), std::move(layers));
}

Estimate risk_estimate(const NeuralNetwork& net, const BarronBoundarySet& omega,
                       const MeasureSpec& mu, std::int64_t n, std::uint64_t seed) {
  // sign(net) != 2*indicator - 1 is exactly "thresholded net at 0 disagrees
  // with the indicator".
  return disagreement_probability(mu, omega, net, n, seed, /*threshold=*/0.0);
}

ShatterResult shattering_demo(int n, int d) {
  if (n < 1 || n > 10) throw config_error("shattering_demo: n must lie in [1, 10]");
  if (d < 2) throw config_error("shattering_demo: ambient dimension must be at least 2");

  ShatterResult out;
  out.n = n;
  out.d = d;
  const double sigma = 1.0 / (4.0 * n);
  const double bump_moment =
      (d - 1) / sigma * std::sqrt(2.0 / kPi);  // int ||xi||_1 |F| dxi, unit bump
  out.bumps.reserve(n);
  std::vector<double> abscissa(n);
  for (int k = 0; k < n; ++k) {
    abscissa[k] = static_cast<double>(k) / n + 1.0 / (2.0 * n);
    ShatterBump b;
    b.center = Eigen::VectorXd::Zero(d - 1);
    b.center[0] = abscissa[k];
    b.sigma = sigma;
    b.moment_constant = bump_moment;
    out.bumps.push_back(std::move(b));
  }
  out.function_constant = n * bump_moment;

  // f_theta at test abscissa j: sum_k (2 theta_k - 1) exp(-8 (j-k)^2);
  // labels are the signs, cross-talk between bumps is < (n-1) e^-8.
  std::set<std::vector<int>> seen;
  for (long long theta = 0; theta < (1LL << n); ++theta) {
    std::vector<int> labels(n);
    for (int j = 0; j < n; ++j) {
      double f = 0.0;
      for (int k = 0; k < n; ++k) {
        const double dist = abscissa[j] - abscissa[k];
        f += ((theta >> k) & 1 ? 1.0 : -1.0) *
             std::exp(-dist * dist / (2.0 * sigma * sigma));
      }
      labels[j] = f >= 0.0 ? 1 : 0;
    }
    seen.insert(std::move(labels));
  }
  out.labelings_realized = static_cast<long long>(seen.size());
  return out;
}

}  // namespace barron
