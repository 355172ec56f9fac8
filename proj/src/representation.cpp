#include "barron/representation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace barron {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration; machine
// precision for the small orders used here.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

struct Quadrature {
  std::vector<double> x, w;
  explicit Quadrature(int n) { gauss_legendre(n, x, w); }

  template <typename F>
  double integrate(const F& f, double a, double b) const {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * f(mid + half * x[i]);
    return acc * half;
  }
};

}  // namespace

double HeavisideRepresentation::tv_norm() const {
  double acc = 0.0;
  for (const HeavisideAtom& a : atoms) acc += std::fabs(a.alpha);
  return acc;
}

double eval_relu_atoms(const std::vector<ReluAtom>& atoms, const Eigen::VectorXd& x) {
  double acc = 0.0;
  for (const ReluAtom& a : atoms) acc += a.a * std::max(0.0, a.w.dot(x) + a.c);
  return acc;
}

double eval_heaviside(const HeavisideRepresentation& rep, const Eigen::VectorXd& x) {
  double acc = 0.0;
  for (const HeavisideAtom& a : rep.atoms)
    if (a.w.dot(x) + a.c >= 0.0) acc += a.alpha;
  return acc;
}

double relu_norm(const std::vector<ReluAtom>& atoms) {
  double acc = 0.0;
  for (const ReluAtom& a : atoms) acc += std::fabs(a.a) * (a.w.norm() + std::fabs(a.c));
  return acc;
}

HeavisideRepresentation relu_to_heaviside(const std::vector<ReluAtom>& atoms, int dim,
                                          double R, long long Q) {
  if (dim < 1) throw config_error("relu_to_heaviside: dimension must be positive");
  if (!(R > 0.0)) throw config_error("relu_to_heaviside: domain radius R must be positive");
  if (Q < 1) throw config_error("relu_to_heaviside: quadrature size Q must be positive");

  HeavisideRepresentation rep;
  rep.dim = dim;
  rep.R = R;
  rep.C = 1.0 + R;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const ReluAtom& at = atoms[k];
    if (at.w.size() != dim)
      throw config_error("relu_to_heaviside: atom " + std::to_string(k + 1) +
                         " has the wrong dimension");
    if (!at.w.allFinite() || !std::isfinite(at.a) || !std::isfinite(at.c))
      throw config_error("relu_to_heaviside: atom " + std::to_string(k + 1) +
                         " has non-finite entries");
    const double theta = at.w.norm() + std::fabs(at.c);
    if (theta == 0.0) continue;  // the zero atom realizes the zero function
    // relu(y) = integral_0^C heaviside(y - t) dt for |y| <= R; midpoint rule
    // on the normalized argument y/theta (so |y/theta| <= max(R,1) <= C).
    const double alpha = at.a * theta * rep.C / static_cast<double>(Q);
    for (long long q = 1; q <= Q; ++q) {
      HeavisideAtom h;
      h.alpha = alpha;
      h.w = at.w / theta;
      h.c = at.c / theta - (static_cast<double>(q) - 0.5) * rep.C / static_cast<double>(Q);
      rep.atoms.push_back(std::move(h));
    }
  }
  return rep;
}

std::vector<GapRow> fourier_gap_demo(const std::vector<int>& n_list, double eps) {
  if (n_list.empty()) throw config_error("fourier_gap_demo: empty frequency list");
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw config_error("fourier_gap_demo: eps must be a positive real");
  for (int n : n_list)
    if (n < 1) throw config_error("fourier_gap_demo: frequencies must be positive integers");

  const Quadrature gl(20);

  // Plateau cutoff gamma = indicator[-w0, w0] convolved with a Gaussian of
  // width sig: equals 1 on [-2 eps, 2 eps] up to ~1e-12, and has the closed
  // spectrum gamma_hat(u) = 2 sin(w0 u)/u * exp(-sig^2 u^2 / 2).
  const double w0 = 2.5 * eps;
  const double sig = eps / 14.0;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const auto phi = [&](double u) {
    return std::exp(-0.5 * u * u / (sig * sig)) / (sig * std::sqrt(2.0 * kPi));
  };
  const auto gamma = [&](double t) {
    return 0.5 * (std::erf((t + w0) * inv_sqrt2 / sig) - std::erf((t - w0) * inv_sqrt2 / sig));
  };
  const auto dgamma = [&](double t) { return phi(t + w0) - phi(t - w0); };
  const auto ddgamma = [&](double t) {
    return -(t + w0) / (sig * sig) * phi(t + w0) + (t - w0) / (sig * sig) * phi(t - w0);
  };

  // Spectral mass integrals J0 = int |G|, J1 = int |u||G| for G = gamma_hat/(2 pi),
  // integrated lobe by lobe (zeros of sin(w0 u)) under the Gaussian damping.
  const auto absG = [&](double u) {
    const double osc = (std::fabs(u) < 1e-300) ? 2.0 * w0 : 2.0 * std::sin(w0 * u) / u;
    return std::fabs(osc) * std::exp(-0.5 * sig * sig * u * u) / (2.0 * kPi);
  };
  double J0 = 0.0, J1 = 0.0;
  {
    const double lobe = kPi / w0;
    const double U = 12.0 / sig;
    for (double u0 = 0.0; u0 < U; u0 += lobe) {
      const double u1 = std::min(u0 + lobe, U);
      J0 += gl.integrate(absG, u0, u1);
      J1 += gl.integrate([&](double u) { return u * absG(u); }, u0, u1);
    }
    J0 *= 2.0;  // even integrand
    J1 *= 2.0;
  }

  std::vector<GapRow> rows;
  rows.reserve(n_list.size());
  for (int n : n_list) {
    const double a = n * kPi / eps;
    const auto abs_f2 = [&](double t) {
      const double c = std::cos(a * t), s = std::sin(a * t);
      return std::fabs(ddgamma(t) * c - 2.0 * a * dgamma(t) * s - a * a * gamma(t) * c);
    };
    // |f''| is smooth between consecutive zeros of cos(a t); integrate each
    // piece of [-2 eps, 2 eps] separately.
    std::vector<double> cuts;
    cuts.push_back(-2.0 * eps);
    const double spacing = eps / n;  // = pi / a
    for (long long k = static_cast<long long>(std::ceil(-2.0 * n - 0.5)); ; ++k) {
      const double t = (static_cast<double>(k) + 0.5) * spacing;
      if (t >= 2.0 * eps) break;
      if (t > -2.0 * eps) cuts.push_back(t);
    }
    cuts.push_back(2.0 * eps);
    double I = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) I += gl.integrate(abs_f2, cuts[i], cuts[i + 1]);

    GapRow row;
    row.n = n;
    row.second_derivative_l1 = I;
    row.exact_value = 8.0 * kPi * n * n / eps;
    row.fourier_norm_estimate = (1.0 + a) * J0 + J1;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace barron
