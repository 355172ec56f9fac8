#include "barron/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace barron {

bool DomainBox::contains(const Eigen::VectorXd& x) const {
  if (x.size() != lower.size()) return false;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x(i) < lower(i) || x(i) > upper(i)) return false;
  return true;
}

void DomainBox::validate() const {
  if (lower.size() == 0) throw config_error("domain box is empty");
  if (lower.size() != upper.size())
    throw config_error("domain box bounds have mismatched dimensions");
  if (!lower.allFinite() || !upper.allFinite())
    throw config_error("domain box bounds must be finite");
  for (Eigen::Index i = 0; i < lower.size(); ++i)
    if (lower(i) > upper(i))
      throw config_error("domain box axis " + std::to_string(i + 1) +
                         " has lower bound above its upper bound");
}

namespace {

double wrap_phase(double p) {
  double w = std::remainder(p, 2.0 * kPi);  // (-pi, pi]
  if (w >= kPi) w -= 2.0 * kPi;             // [-pi, pi)
  return w;
}

}  // namespace

void BarronFunctionSpec::validate() const {
  domain.validate();
  if (base_point.size() != domain.dim())
    throw config_error("base point dimension does not match the domain");
  if (!domain.contains(base_point))
    throw config_error("base point must lie inside the domain box");
  if (!std::isfinite(constant)) throw config_error("constant term must be finite");
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const SpectralAtom& a = atoms[k];
    const std::string where = "spectral atom " + std::to_string(k + 1);
    if (a.freq.size() != domain.dim())
      throw config_error(where + " frequency dimension does not match the domain");
    if (!a.freq.allFinite()) throw config_error(where + " frequency must be finite");
    if (!(a.modulus >= 0.0) || !std::isfinite(a.modulus))
      throw config_error(where + " modulus must be a finite nonnegative real");
    if (!std::isfinite(a.phase)) throw config_error(where + " phase must be finite");
  }
}

BarronFunctionSpec BarronFunctionSpec::canonicalized() const {
  BarronFunctionSpec out = *this;
  for (SpectralAtom& a : out.atoms) a.phase = wrap_phase(a.phase);
  return out;
}

double seminorm_xi(const Eigen::VectorXd& xi, const DomainBox& X, const Eigen::VectorXd& x0) {
  X.validate();
  if (xi.size() != X.dim()) throw config_error("seminorm: frequency dimension mismatch");
  if (x0.size() != X.dim()) throw config_error("seminorm: base point dimension mismatch");
  if (!X.contains(x0)) throw config_error("seminorm: base point must lie inside the box");
  // The supremum of |<xi, x - x0>| over the box is attained at a corner chosen
  // coordinatewise; evaluate both signed extremes of the linear functional.
  double hi = 0.0, lo = 0.0;
  for (Eigen::Index i = 0; i < xi.size(); ++i) {
    const double e1 = xi(i) * (X.lower(i) - x0(i));
    const double e2 = xi(i) * (X.upper(i) - x0(i));
    hi += std::max(e1, e2);
    lo += std::min(e1, e2);
  }
  return std::max(hi, -lo);
}

double vartheta(const DomainBox& X, const Eigen::VectorXd& x0) {
  X.validate();
  if (x0.size() != X.dim()) throw config_error("vartheta: base point dimension mismatch");
  if (!X.contains(x0)) throw config_error("vartheta: base point must lie inside the box");
  // sup ||xi||_inf / |xi|_{X,x0} is attained at a standard basis vector: for
  // |xi_j| = ||xi||_inf the seminorm is at least |xi_j| * |e_j|_{X,x0}, with
  // equality when the other coordinates vanish.
  double best = 0.0;
  for (Eigen::Index i = 0; i < X.dim(); ++i) {
    const double reach = std::max(X.upper(i) - x0(i), x0(i) - X.lower(i));
    if (reach <= 0.0)
      throw config_error("vartheta: domain box is degenerate along axis " +
                         std::to_string(i + 1));
    best = std::max(best, 1.0 / reach);
  }
  return best;
}

double barron_constant(const BarronFunctionSpec& f) {
  f.validate();
  double moment = 0.0;
  for (const SpectralAtom& a : f.atoms)
    moment += a.modulus * seminorm_xi(a.freq, f.domain, f.base_point);
  return std::max(std::fabs(f.constant), moment);
}

double eval_barron(const BarronFunctionSpec& f, const Eigen::VectorXd& x) {
  if (x.size() != f.domain.dim()) throw config_error("eval: point dimension mismatch");
  double acc = f.constant;
  for (const SpectralAtom& a : f.atoms) {
    // Re[(e^{i<x,xi>} - e^{i<x0,xi>}) * r e^{i phase}]
    const double px = a.freq.dot(x) + a.phase;
    const double p0 = a.freq.dot(f.base_point) + a.phase;
    acc += a.modulus * (std::cos(px) - std::cos(p0));
  }
  return acc;
}

Eigen::VectorXd eval_barron_batch(const BarronFunctionSpec& f, const Eigen::MatrixXd& X) {
  if (X.cols() != f.domain.dim()) throw config_error("eval: point dimension mismatch");
  Eigen::VectorXd out = Eigen::VectorXd::Constant(X.rows(), f.constant);
  for (const SpectralAtom& a : f.atoms) {
    const double p0 = a.freq.dot(f.base_point) + a.phase;
    const double c0 = std::cos(p0);
    Eigen::ArrayXd px = (X * a.freq).array() + a.phase;
    out.array() += a.modulus * (px.cos() - c0);
  }
  return out;
}

}  // namespace barron
