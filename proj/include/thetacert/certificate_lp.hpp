#pragma once

#include "thetacert/gaussian_combo.hpp"
#include "thetacert/lattice.hpp"
#include "thetacert/real.hpp"
#include "thetacert/saturation.hpp"
#include "thetacert/simplex.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace thetacert {

/// Coefficient box used unless a problem says otherwise. Without it the
/// truncated program is unbounded (see README).
inline const Real kDefaultCoefficientBound = Real(1e4);

/// Shell constraints on m = 1..max_shell:
///   sum_k c_k e^{-a_k m} >= e^{-t m},   sum_k c_k (pi/a_k)^{n/2} e^{-pi^2 m / a_k} <= 0,
/// minimizing 1 + h^(0) - h(0) = 1 + sum_k c_k ((pi/a_k)^{n/2} - 1).
struct LPProblem {
  std::size_t dim = 0;
  Real t = 0;
  std::vector<Real> widths;
  std::int64_t max_shell = 0;
  Real tolerance = Real(1e-9);
  /// |c_k| <= bound when set.
  std::optional<Real> coefficient_bound = kDefaultCoefficientBound;

  std::vector<std::int64_t> shell_norms() const;
};

/// count widths geometric in [t/8, 8t].
std::vector<Real> default_dictionary(const Real& t, std::size_t count = 40);

/// Throws ConfigError for n < 4, t <= 0, max_shell < 2, an empty dictionary
/// or a nonpositive width.
LPProblem build_lp(std::size_t n, const Real& t, std::vector<Real> widths, std::int64_t max_shell);

/// Smallest max_shell at which every coefficient within the box leaves a
/// truncation tail (both h and h^, any integral lattice) below tail_tol.
std::int64_t shells_for_tail(std::size_t n, const std::vector<Real>& widths, const Real& coefficient_bound,
                             const Real& tail_tol);

struct LPSolution {
  LPStatus status = LPStatus::IterLimit;
  std::vector<Real> coeffs;
  Real objective = 0;  ///< 1 + h^(0) - h(0), recomputed from coeffs
  Real theta_zn = 0;
  Real epsilon = 0;  ///< objective - Theta_{Z^n}(t)
  std::vector<Real> slacks_majorize;
  std::vector<Real> slacks_fourier;
  std::size_t pivots = 0;
  Real duality_gap = 0;
  /// Infeasible: nonnegative multipliers of the rows (in >= form) that
  /// combine to 0 >= positive. Unbounded: a primal ray in coefficient space.
  std::vector<Real> witness;
  std::string witness_kind;
  /// Bound on sum_{m > max_shell} (2 sqrt(m) + 1)^n (|h(m)| + |h^(m)|).
  Real truncation_tail = 0;
};

/// Pivot tolerances for the extended-precision solve behind solve_lp.
inline SimplexOptions certificate_simplex_options() {
  SimplexOptions o;
  o.tolerance = 1e-60;
  o.feasibility_tolerance = 1e-45;
  return o;
}

/// Solved through the dual program (one equality row per width) in HighReal.
LPSolution solve_lp(const LPProblem& problem, const SimplexOptions& options = certificate_simplex_options());

/// The solved certificate as a function.
GaussianCombo certificate(const LPProblem& problem, const LPSolution& solution);

/// Re-derives the slack decomposition A + B = epsilon on L outside the
/// solver. Throws ConfigError unless the solution is Optimal.
SaturationReport verify_solution(const LPProblem& problem, const LPSolution& solution, const Lattice& lattice,
                                 const AuditOptions& options = {});

}  // namespace thetacert
