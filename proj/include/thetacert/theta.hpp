#pragma once

#include "thetacert/lattice.hpp"
#include "thetacert/real.hpp"
#include "thetacert/shells.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace thetacert {

/// A value together with a certified bound on its absolute error
/// (truncation tail plus accumulated rounding).
struct ThetaValue {
  Real value = 0;
  Real abs_error = 0;
  Real t = 0;
};

/// Relative size of the first omitted series term.
inline const Real kSeriesCutoff = Real(1e-30);

/// Jacobi nullwert theta_kind at tau = i t / pi, i.e. nome q = e^{-t}:
///   theta_2 = sum_m q^{(m+1/2)^2},  theta_3 = sum_m q^{m^2},
///   theta_4 = sum_m (-1)^m q^{m^2}   (sums over all integers m).
/// Throws DomainError for kind outside {2, 3, 4} or t <= 0.
ThetaValue jacobi_theta(int kind, const Real& t);

/// Sum of cubes of the divisors of m >= 1, by trial division up to sqrt(m).
std::int64_t sigma3(std::int64_t m);

/// E_4 at tau = i t / pi in the Q = q^2 = e^{-2t} convention:
/// 1 + 240 sum_{m>=1} sigma_3(m) Q^m. Tail bounded with sigma_3(m) <= m^4.
ThetaValue eisenstein_e4(const Real& t);

/// Bound on sum_{m > max_norm} (2 sqrt(m) + 1)^dim e^{-t m}. Every integral
/// lattice has at most (2 sqrt(m) + 1)^dim points of squared norm <= m, so
/// this bounds the omitted part of any integral theta series. Returns
/// infinity when the terms are not yet decreasing geometrically.
Real shell_tail_bound(std::size_t dim, std::int64_t max_norm, const Real& t);

/// Smallest max_norm whose shell_tail_bound is <= tolerance.
std::int64_t required_max_norm(std::size_t dim, const Real& t, const Real& tolerance);

/// sum_m r(m) e^{-t m} over the stored shells. Throws InsufficientShells if
/// the tail bound exceeds tolerance.
ThetaValue theta_from_shells(const ShellSeries& shells, const Real& t,
                             const Real& tolerance = Real(1e-20));

/// Theta series of an integral lattice with shells enumerated as far as the
/// tolerance requires.
ThetaValue lattice_theta(const Lattice& lattice, const Real& t, const Real& tolerance = Real(1e-20),
                         const EnumerationOptions& options = {});

/// Residuals of the classical identities at one t. The Z^8 and E_8 theta
/// values in the gap and multiplicativity checks come from enumerated
/// shells; the nullwerte and E_4 come from their q-series.
struct IdentityReport {
  Real t = 0;
  /// glaisher, abstruse, z8_minus_e8_gap, e8_equals_e4, multiplicativity.
  std::map<std::string, Real> residuals;
  /// theta_2^4 theta_4^4, which must be > 0.
  Real gap = 0;
  std::map<std::string, ThetaValue> values;
};

IdentityReport identity_suite(const Real& t, const EnumerationOptions& options = {});

/// |Theta_L(t) - (pi/t)^{n/2} Theta_L(pi^2/t)| with both sides from shells.
/// Throws DomainError unless L is integral and unimodular.
Real functional_equation_residual(const Lattice& lattice, const Real& t,
                                  const EnumerationOptions& options = {});

/// Theta_{Z^n}(pi y) / Theta_L(pi y). Throws DomainError for y <= 0 or a
/// lattice that is not integral unimodular.
Real secrecy_function(const Lattice& lattice, const Real& y, const EnumerationOptions& options = {});

}  // namespace thetacert
