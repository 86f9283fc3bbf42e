#include "thetacert/poisson.hpp"

#include "thetacert/errors.hpp"
#include "thetacert/theta.hpp"

#include <algorithm>
#include <string>

namespace thetacert {

Real combo_tail_bound(const GaussianCombo& h, std::int64_t max_norm) {
  Real bound = 0;
  for (const auto& term : h.terms())
    if (term.coeff != 0) bound += abs(term.coeff) * shell_tail_bound(h.dim(), max_norm, term.width);
  return bound;
}

std::int64_t required_max_norm(const GaussianCombo& h, const Real& tolerance) {
  if (!(tolerance > 0)) throw DomainError("tolerance must be positive");
  std::int64_t m = 0;
  const Real share = tolerance / Real(std::max<std::size_t>(h.terms().size(), 1));
  for (const auto& term : h.terms()) {
    if (term.coeff == 0) continue;
    m = std::max(m, required_max_norm(h.dim(), term.width, share / abs(term.coeff)));
  }
  return m;
}

Real shell_sum(const ShellSeries& shells, const GaussianCombo& h, std::int64_t first) {
  Real sum = 0;
  for (std::int64_t m = shells.max_norm; m >= first; --m) {
    const auto r = shells.counts[static_cast<std::size_t>(m)];
    if (r != 0) sum += Real(r) * h.eval(Real(m));
  }
  return sum;
}

namespace {

std::int64_t poisson_max_norm(const GaussianCombo& h, const GaussianCombo& transform, const Real& tolerance) {
  return std::max(required_max_norm(h, tolerance / 10), required_max_norm(transform, tolerance / 10));
}

}  // namespace

PoissonReport poisson_check(const GaussianCombo& h, const ShellSeries& shells, const Real& tolerance) {
  if (shells.dim != h.dim()) throw ConfigError("shell dimension does not match the function");
  const GaussianCombo transform = h.fourier();
  const auto needed = poisson_max_norm(h, transform, tolerance);
  if (shells.max_norm < needed)
    throw InsufficientShells("Poisson check needs shells up to norm " + std::to_string(needed));
  PoissonReport report;
  report.max_norm = shells.max_norm;
  report.tolerance = tolerance;
  report.lhs = shell_sum(shells, h);
  report.rhs = shell_sum(shells, transform);
  report.residual = abs(report.lhs - report.rhs);
  report.tail_bound = combo_tail_bound(h, shells.max_norm) + combo_tail_bound(transform, shells.max_norm);
  report.passed = report.residual <= tolerance + report.tail_bound;
  return report;
}

PoissonReport poisson_check(const GaussianCombo& h, const Lattice& lattice, const Real& tolerance,
                            const EnumerationOptions& options) {
  if (!is_integral(lattice) || !is_unimodular(lattice))
    throw DomainError("Poisson check needs an integral unimodular lattice");
  if (lattice.dim() != h.dim()) throw ConfigError("lattice dimension does not match the function");
  const auto needed = poisson_max_norm(h, h.fourier(), tolerance);
  return poisson_check(h, enumerate_shells(lattice, needed, options), tolerance);
}

NonCertificateReport gaussian_noncert_report(std::size_t dim, const Real& t, std::int64_t max_norm) {
  if (dim == 0) throw ConfigError("dimension must be >= 1");
  if (!(t > 0)) throw DomainError("gaussian_noncert_report requires t > 0");
  if (max_norm < 1) throw ConfigError("max_norm must be >= 1");
  const GaussianCombo g = GaussianCombo::gaussian(dim, t);
  const GaussianCombo transform = g.fourier();
  NonCertificateReport report;
  report.dim = dim;
  report.t = t;
  report.max_norm = max_norm;
  report.majorization_holds = true;
  report.transform_positive_everywhere = true;
  for (std::int64_t m = 1; m <= max_norm; ++m) {
    const Real r2 = Real(m);
    const Real slack = g.eval(r2) - exp(-t * r2);
    const Real fhat = transform.eval(r2);
    report.majorization_slack.push_back(slack);
    report.transform_values.push_back(fhat);
    if (slack < 0) report.majorization_holds = false;
    if (!(fhat > 0)) report.transform_positive_everywhere = false;
    report.min_violation = m == 1 ? fhat : std::min(report.min_violation, fhat);
  }
  return report;
}

}  // namespace thetacert
