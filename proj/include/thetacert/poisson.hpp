#pragma once

#include "thetacert/gaussian_combo.hpp"
#include "thetacert/lattice.hpp"
#include "thetacert/shells.hpp"

#include <cstdint>
#include <vector>

namespace thetacert {

/// Bound on sum_{m > max_norm} r(m) |h(m)| for any integral lattice of
/// dimension h.dim(), from r(m) <= (2 sqrt(m) + 1)^n termwise.
Real combo_tail_bound(const GaussianCombo& h, std::int64_t max_norm);

/// Smallest max_norm with combo_tail_bound(h, max_norm) <= tolerance.
std::int64_t required_max_norm(const GaussianCombo& h, const Real& tolerance);

/// sum_{m=first..max_norm} r(m) h(m) over stored shells.
Real shell_sum(const ShellSeries& shells, const GaussianCombo& h, std::int64_t first = 0);

struct PoissonReport {
  Real lhs = 0;         ///< sum over L of h
  Real rhs = 0;         ///< sum over L of h^
  Real residual = 0;    ///< |lhs - rhs|
  Real tail_bound = 0;  ///< bound on what the truncated sums omit
  Real tolerance = 0;
  std::int64_t max_norm = 0;
  bool passed = false;  ///< residual <= tolerance + tail_bound
};

/// Poisson summation check on a self-dual lattice. Shells are extended until
/// the tail bound of both h and h^ is below tolerance / 10.
/// Throws DomainError unless the lattice is integral unimodular.
PoissonReport poisson_check(const GaussianCombo& h, const Lattice& lattice, const Real& tolerance,
                            const EnumerationOptions& options = {});

/// Same check against precomputed shells; throws InsufficientShells if they
/// stop short of what the tail policy needs.
PoissonReport poisson_check(const GaussianCombo& h, const ShellSeries& shells, const Real& tolerance);

/// Why the bare Gaussian g_t is not a certificate: it meets condition (i)
/// with equality on every shell, while its transform is strictly positive.
struct NonCertificateReport {
  std::size_t dim = 0;
  Real t = 0;
  std::int64_t max_norm = 0;
  std::vector<Real> majorization_slack;  ///< g_t(m) - e^{-tm}, m = 1..max_norm
  std::vector<Real> transform_values;    ///< g_t^(m), m = 1..max_norm
  Real min_violation = 0;                ///< min_m g_t^(m); > 0 means (ii) fails on every shell
  bool majorization_holds = false;
  bool transform_positive_everywhere = false;
};

NonCertificateReport gaussian_noncert_report(std::size_t dim, const Real& t, std::int64_t max_norm = 10);

}  // namespace thetacert
