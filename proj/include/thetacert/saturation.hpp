#pragma once

#include "thetacert/gaussian_combo.hpp"
#include "thetacert/lattice.hpp"
#include "thetacert/real.hpp"
#include "thetacert/rotation.hpp"
#include "thetacert/shells.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace thetacert {

inline const Real kChainTolerance = Real(1e-8);
inline const Real kSignTolerance = Real(1e-10);

/// A radial candidate certificate seen only through its values on integer
/// squared norms: h(m), h^(m) for m >= 0 and a bound on what lies beyond a
/// truncation point. Built from a GaussianCombo, or prescribed directly as a
/// test double (values no Gaussian combination realizes).
struct ShellFunction {
  std::size_t dim = 0;
  std::function<Real(std::int64_t)> h;
  std::function<Real(std::int64_t)> hhat;
  /// Bound on sum_{m > M} (2 sqrt(m) + 1)^dim (|h(m)| + |h^(m)|).
  std::function<Real(std::int64_t)> tail;
  /// Smallest M whose tail is below the given tolerance.
  std::function<std::int64_t(const Real&)> cutoff;
  /// h and h^ at a real squared radius; empty for test doubles, which are
  /// then read at the nearest integer norm.
  std::function<Real(const Real&)> h_at;
  std::function<Real(const Real&)> hhat_at;
  bool test_double = false;

  static ShellFunction from_combo(const GaussianCombo& h);
  /// Values h(0), h^(0) and h(m), h^(m) for m = 1..size; zero beyond, with
  /// the caller vouching for `tail_bound` as the omitted mass.
  static ShellFunction prescribed(std::size_t dim, const Real& h0, const Real& hhat0,
                                  std::vector<Real> h_values, std::vector<Real> hhat_values,
                                  const Real& tail_bound = 0);
};

struct AuditOptions {
  Real chain_tolerance = kChainTolerance;
  Real sign_tolerance = kSignTolerance;
  /// Target for the truncation tail of every shell sum.
  Real tail_tolerance = Real(1e-12);
  /// Prescribed-value inputs are refused unless this is set.
  bool allow_test_doubles = false;
  /// Point-level evaluation of rotated vectors up to this squared norm.
  std::int64_t point_level_max_norm = 6;
  EnumerationOptions enumeration{};
};

enum class VerdictKind { Sharp, NearSharp, Violated };

struct Verdict {
  VerdictKind kind = VerdictKind::Violated;
  Real epsilon = 0;
  /// "i", "ii", "bound", "bookkeeping" or "tail" when Violated.
  std::string condition;
  std::int64_t shell = 0;
};

/// "Sharp", "NearSharp(<eps>)" or "Violated(<condition>, <shell>)".
std::string describe(const Verdict& verdict);

struct ShellSlack {
  std::int64_t m = 0;
  std::int64_t count = 0;
  Real point_majorize = 0;  ///< h(m) - e^{-tm}
  Real point_fourier = 0;   ///< -h^(m)
  Real a = 0;               ///< count * point_majorize
  Real b = 0;               ///< count * point_fourier
};

struct ChainLine {
  std::string label;
  Real value = 0;
};

struct SaturationReport {
  std::string lattice_label;
  std::size_t dim = 0;
  Real t = 0;
  Real bound = 0;  ///< 1 + h^(0) - h(0)
  Real theta_zn = 0;
  Real theta_lattice = 0;
  Real epsilon = 0;          ///< bound - Theta_{Z^n}(t)
  Real lattice_epsilon = 0;  ///< bound - Theta_L(t); equals sum A + sum B
  Real theta_gap = 0;        ///< Theta_{Z^n}(t) - Theta_L(t)
  std::vector<ChainLine> chain;
  std::vector<ShellSlack> per_shell;
  Real sum_a = 0;
  Real sum_b = 0;
  Real bookkeeping_residual = 0;  ///< |sum A + sum B - lattice_epsilon|
  Real tail_bound = 0;
  std::int64_t max_norm = 0;
  std::optional<std::uint64_t> rotation_seed;
  /// Largest |contribution at rotated points - shell-level contribution|.
  Real rotation_deviation = 0;
  Verdict verdict;
};

/// Runs the saturation chain for f on L (integral unimodular), optionally on
/// U L with point-level evaluation of the rotated vectors of small norm.
SaturationReport chain_audit(const ShellFunction& f, const Lattice& lattice, const Real& t,
                             const std::optional<RotationMatrix>& rotation = std::nullopt,
                             const AuditOptions& options = {});
SaturationReport chain_audit(const GaussianCombo& h, const Lattice& lattice, const Real& t,
                             const std::optional<RotationMatrix>& rotation = std::nullopt,
                             const AuditOptions& options = {});

/// Chain for Lambda = E8 + Z^{n-8} under the saturation hypotheses.
struct CollapseStep {
  std::string label;
  Real value = 0;
  Real residual = 0;  ///< distance from the previous line
  bool holds = false;
};

struct CollapseReport {
  std::size_t dim = 0;
  Real t = 0;
  std::vector<CollapseStep> steps;
  /// First step whose equality fails, or empty.
  std::string failed_step;
  Real collapse_residual = 0;  ///< |(h^(0) - h(0)) - (Theta_Lambda - 1)|
  Real sharpness_defect = 0;   ///< (h^(0) - h(0)) - (Theta_{Z^n} - 1)
  /// theta_2^4 theta_4^4 from the nullwerte; > 0 is the contradiction.
  Real contradiction_magnitude = 0;
  Real lattice_gap = 0;  ///< Theta_{Z^n} - Theta_Lambda
  Real tail_bound = 0;
  std::int64_t max_norm = 0;
};

CollapseReport e8_collapse_audit(const ShellFunction& f, std::size_t n, const Real& t,
                                 const AuditOptions& options = {});
CollapseReport e8_collapse_audit(const GaussianCombo& h, std::size_t n, const Real& t,
                                 const AuditOptions& options = {});

struct GradedPair {
  GaussianCombo h_zn;
  GaussianCombo h_lc;
  /// h_lc - h_zn as a signed concatenation of terms.
  GaussianCombo f() const { return h_lc - h_zn; }
};

struct GradedReport {
  std::size_t dim = 0;
  Real t = 0;
  Real f_hat0_minus_f0 = 0;
  Real sum_f = 0;      ///< over nonzero points of E8 + Z^{n-8}
  Real sum_f_hat = 0;  ///< same
  Real residual = 0;   ///< |(F^(0) - F(0)) - (sum F - sum F^)|
  Real tail_bound = 0;
  std::int64_t max_norm = 0;
  bool signs_hold = false;
  std::string first_violation;  ///< "F>=0" or "F^<=0", empty if none
  std::int64_t violation_shell = 0;
  Real bound_zn = 0;  ///< 1 + h_zn^(0) - h_zn(0)
  Real bound_lc = 0;  ///< 1 + h_lc^(0) - h_lc(0)
  bool comparison_holds = false;  ///< residual <= chain tolerance + tails
};

GradedReport graded_audit(const GradedPair& pair, std::size_t n, const Real& t,
                          const AuditOptions& options = {});

/// Per-shell envelope coeff * e^{-decay m}, summable over any lattice when
/// decay > 0.
struct Envelope {
  Real coeff = 1;
  Real decay = 1;
};

struct Dominators {
  Envelope a;  ///< bounds |h_j(m)|
  Envelope b;  ///< bounds |h_j^(m)|
};

struct SequenceElement {
  std::size_t index = 0;
  Real epsilon = 0;
  bool bounds_hold = false;  ///< both per-shell bounds of the approximate saturation
  std::int64_t first_bad_shell = 0;
  Real max_majorize_slack = 0;
  Real max_fourier_slack = 0;
  bool dominated = true;
};

struct SequenceReport {
  std::size_t dim = 0;
  Real t = 0;
  std::vector<SequenceElement> elements;
  std::vector<SaturationReport> chains;  ///< chain_audit on Z^n per element
  bool dominated = false;
  /// With dominators: limits forced by pointwise convergence on E8 + Z^{n-8}.
  Real limit_sum_h = 0;     ///< Theta_Lambda - 1
  Real limit_sum_hhat = 0;  ///< 0
  Real limit_bound = 0;     ///< Theta_{Z^n} - 1
  Real final_sum_h = 0;     ///< same sums at the last element
  Real final_sum_hhat = 0;
  /// limit_bound - (limit_sum_h - limit_sum_hhat); Poisson would need 0.
  Real theta_clash = 0;
  Real theta_gap = 0;  ///< Theta_{Z^n} - Theta_Lambda from the theta engine
  Real envelope_tail = 0;
  std::int64_t max_norm = 0;
};

/// Throws ConfigError when an envelope is not summable to tail tolerance at
/// any norm the enumeration budget allows.
SequenceReport sequence_audit(const std::vector<ShellFunction>& hs, std::size_t n, const Real& t,
                              const std::optional<Dominators>& dominators = std::nullopt,
                              const AuditOptions& options = {});
SequenceReport sequence_audit(const std::vector<GaussianCombo>& hs, std::size_t n, const Real& t,
                              const std::optional<Dominators>& dominators = std::nullopt,
                              const AuditOptions& options = {});

}  // namespace thetacert
