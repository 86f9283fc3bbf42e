#include "thetacert/theta.hpp"

#include "thetacert/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace thetacert {

namespace {

void require_positive(const Real& t, const char* what) {
  if (!(t > 0) || !boost::multiprecision::isfinite(t))
    throw DomainError(std::string(what) + " requires a finite t > 0");
}

Real rounding_allowance(const Real& magnitude, std::int64_t terms) {
  return 4 * real_epsilon() * magnitude * Real(terms + 1);
}

}  // namespace

ThetaValue jacobi_theta(int kind, const Real& t) {
  if (kind < 2 || kind > 4) throw DomainError("jacobi_theta kind must be 2, 3 or 4");
  require_positive(t, "jacobi_theta");

  // Sum over m >= 0 of weight * sign^m * q^{e(m)}, doubled except for the
  // m = 0 term of theta_3 / theta_4.
  const bool shifted = kind == 2;
  auto exponent = [&](std::int64_t k) {
    Real x = shifted ? Real(k) + Real(0.5) : Real(k);
    return x * x;
  };
  Real sum = shifted ? Real(0) : Real(1);
  Real magnitude = sum;
  Real tail = 0;
  std::int64_t k = shifted ? 0 : 1;
  for (;; ++k) {
    const Real term = 2 * exp(-t * exponent(k));
    if (term == 0 || (k > 1 && term < kSeriesCutoff * magnitude)) {
      // Consecutive exponents grow by at least 2k + 1, so the remaining
      // terms shrink geometrically with ratio <= q^{2k+1}.
      const Real ratio = exp(-t * Real(2 * k + 1));
      tail = term / (1 - ratio);
      break;
    }
    const bool negative = kind == 4 && (k % 2 == 1);
    sum += negative ? Real(-term) : term;
    magnitude += term;
  }
  return {sum, tail + rounding_allowance(magnitude, k), t};
}

std::int64_t sigma3(std::int64_t m) {
  if (m < 1) throw DomainError("sigma3 requires m >= 1");
  std::int64_t s = 0;
  for (std::int64_t d = 1; d * d <= m; ++d) {
    if (m % d != 0) continue;
    const std::int64_t e = m / d;
    s += d * d * d;
    if (e != d) s += e * e * e;
  }
  return s;
}

ThetaValue eisenstein_e4(const Real& t) {
  require_positive(t, "eisenstein_e4");
  const Real big_q = exp(-2 * t);
  Real sum = 1;
  Real tail = 0;
  std::int64_t m = 1;
  for (;; ++m) {
    const Real mr = Real(m);
    const Real qm = pow(big_q, m);
    const Real bound = 240 * mr * mr * mr * mr * qm;
    const Real ratio = pow((mr + 1) / mr, 4) * big_q;
    if (ratio < 1 && (qm == 0 || bound < kSeriesCutoff * sum)) {
      tail = bound / (1 - ratio);
      break;
    }
    sum += 240 * Real(sigma3(m)) * qm;
  }
  return {sum, tail + rounding_allowance(sum, m), t};
}

Real shell_tail_bound(std::size_t dim, std::int64_t max_norm, const Real& t) {
  const Real first = Real(max_norm + 1);
  auto envelope = [&](const Real& m) { return pow(2 * sqrt(m) + 1, static_cast<int>(dim)) * exp(-t * m); };
  const Real ratio = pow((2 * sqrt(first + 1) + 1) / (2 * sqrt(first) + 1), static_cast<int>(dim)) * exp(-t);
  if (!(ratio < 1)) return std::numeric_limits<Real>::infinity();
  return envelope(first) / (1 - ratio);
}

std::int64_t required_max_norm(std::size_t dim, const Real& t, const Real& tolerance) {
  require_positive(t, "required_max_norm");
  if (!(tolerance > 0)) throw DomainError("tolerance must be positive");
  // Coarse doubling, then bisection; the bound is decreasing once finite.
  std::int64_t hi = 1;
  while (!(shell_tail_bound(dim, hi, t) <= tolerance)) {
    if (hi > (std::int64_t{1} << 40)) throw InsufficientShells("tail bound never reaches tolerance");
    hi *= 2;
  }
  std::int64_t lo = 0;
  if (shell_tail_bound(dim, lo, t) <= tolerance) return 0;
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (shell_tail_bound(dim, mid, t) <= tolerance)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

ThetaValue theta_from_shells(const ShellSeries& shells, const Real& t, const Real& tolerance) {
  require_positive(t, "theta_from_shells");
  const Real tail = shell_tail_bound(shells.dim, shells.max_norm, t);
  if (!(tail <= tolerance))
    throw InsufficientShells("shells up to norm " + std::to_string(shells.max_norm) +
                             " do not reach the requested tolerance");
  Real sum = 0;
  for (std::int64_t m = shells.max_norm; m >= 0; --m) {
    const auto r = shells.counts[static_cast<std::size_t>(m)];
    if (r != 0) sum += Real(r) * exp(-t * Real(m));
  }
  return {sum, tail + rounding_allowance(sum, shells.max_norm), t};
}

ThetaValue lattice_theta(const Lattice& lattice, const Real& t, const Real& tolerance,
                         const EnumerationOptions& options) {
  const auto m = required_max_norm(lattice.dim(), t, tolerance);
  return theta_from_shells(enumerate_shells(lattice, m, options), t, tolerance);
}

IdentityReport identity_suite(const Real& t, const EnumerationOptions& options) {
  require_positive(t, "identity_suite");
  const ThetaValue th2 = jacobi_theta(2, t);
  const ThetaValue th3 = jacobi_theta(3, t);
  const ThetaValue th4 = jacobi_theta(4, t);
  const ThetaValue e4 = eisenstein_e4(t);
  const Lattice e8 = make_e8();
  const Lattice z4 = make_zn(4);
  const Lattice parts[] = {e8, z4};
  const ThetaValue theta_e8 = lattice_theta(e8, t, Real(1e-20), options);
  const ThetaValue theta_e8_z4 = lattice_theta(direct_sum(parts), t, Real(1e-20), options);

  const Real a = pow(th2.value, 4), b = pow(th4.value, 4), c = pow(th3.value, 4);
  const Real theta_z8 = c * c;

  IdentityReport report;
  report.t = t;
  report.residuals["glaisher"] = abs(e4.value - (a * a + c * c + b * b) / 2);
  report.residuals["abstruse"] = abs(c - a - b);
  report.residuals["z8_minus_e8_gap"] = abs((theta_z8 - theta_e8.value) - a * b);
  report.residuals["e8_equals_e4"] = abs(theta_e8.value - e4.value);
  report.residuals["multiplicativity"] = abs(theta_e8_z4.value - theta_e8.value * c);
  report.gap = a * b;
  report.values["theta2"] = th2;
  report.values["theta3"] = th3;
  report.values["theta4"] = th4;
  report.values["e4"] = e4;
  report.values["theta_e8"] = theta_e8;
  report.values["theta_z8"] = {theta_z8, 8 * pow(th3.value, 7) * th3.abs_error * 2, t};
  report.values["theta_e8_z4"] = theta_e8_z4;
  return report;
}

namespace {

void require_self_dual(const Lattice& lattice) {
  if (!is_integral(lattice) || !is_unimodular(lattice))
    throw DomainError("lattice '" + lattice.name() + "' is not integral unimodular (not self-dual)");
}

}  // namespace

Real functional_equation_residual(const Lattice& lattice, const Real& t, const EnumerationOptions& options) {
  require_positive(t, "functional_equation_residual");
  require_self_dual(lattice);
  const Real pi = pi_real();
  const Real dual_t = pi * pi / t;
  const Real factor = pow(pi / t, static_cast<int>(lattice.dim()) / 2) *
                      (lattice.dim() % 2 ? sqrt(pi / t) : Real(1));
  const ThetaValue direct = lattice_theta(lattice, t, Real(1e-20), options);
  const ThetaValue dual = lattice_theta(lattice, dual_t, Real(1e-20) / factor, options);
  return abs(direct.value - factor * dual.value);
}

Real secrecy_function(const Lattice& lattice, const Real& y, const EnumerationOptions& options) {
  require_positive(y, "secrecy_function");
  require_self_dual(lattice);
  const Real t = pi_real() * y;
  const Real zn = pow(jacobi_theta(3, t).value, static_cast<int>(lattice.dim()));
  return zn / lattice_theta(lattice, t, Real(1e-20), options).value;
}

}  // namespace thetacert
