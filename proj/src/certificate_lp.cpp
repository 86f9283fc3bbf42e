#include "thetacert/certificate_lp.hpp"

#include "thetacert/errors.hpp"
#include "thetacert/poisson.hpp"
#include "thetacert/theta.hpp"

#include <algorithm>
#include <cmath>

namespace thetacert {

std::vector<std::int64_t> LPProblem::shell_norms() const {
  std::vector<std::int64_t> norms(static_cast<std::size_t>(std::max<std::int64_t>(max_shell, 0)));
  for (std::size_t i = 0; i < norms.size(); ++i) norms[i] = static_cast<std::int64_t>(i) + 1;
  return norms;
}

std::vector<Real> default_dictionary(const Real& t, std::size_t count) {
  if (!(t > 0)) throw ConfigError("dictionary needs t > 0");
  if (count == 0) throw ConfigError("dictionary needs at least one width");
  if (count == 1) return {t};
  std::vector<Real> widths(count);
  const Real lo = t / 8;
  const Real step = log(Real(64)) / Real(count - 1);
  for (std::size_t k = 0; k < count; ++k) widths[k] = lo * exp(step * Real(k));
  widths.back() = 8 * t;
  return widths;
}

LPProblem build_lp(std::size_t n, const Real& t, std::vector<Real> widths, std::int64_t max_shell) {
  if (n < 4) throw ConfigError("certificate LP needs n >= 4");
  if (!(t > 0) || !isfinite(t)) throw ConfigError("certificate LP needs t > 0");
  if (max_shell < 2) throw ConfigError("certificate LP needs at least 2 shells");
  if (widths.empty()) throw ConfigError("empty dictionary");
  for (const auto& a : widths)
    if (!(a > 0) || !isfinite(a)) throw ConfigError("dictionary widths must be positive");
  LPProblem p;
  p.dim = n;
  p.t = t;
  p.widths = std::move(widths);
  p.max_shell = max_shell;
  return p;
}

std::int64_t shells_for_tail(std::size_t n, const std::vector<Real>& widths, const Real& coefficient_bound,
                             const Real& tail_tol) {
  if (widths.empty()) throw ConfigError("empty dictionary");
  std::vector<GaussianTerm> terms;
  for (const auto& a : widths) terms.push_back({coefficient_bound, a});
  const GaussianCombo worst(n, terms);
  return std::max<std::int64_t>(
      2, std::max(required_max_norm(worst, tail_tol / 2), required_max_norm(worst.fourier(), tail_tol / 2)));
}

namespace {

using H = HighReal;

struct ScaledProgram {
  // Rows in >= form over the coefficients c_k, each divided by row_scale.
  std::vector<std::vector<H>> rows;
  std::vector<H> rhs;
  std::vector<H> row_scale;
  std::vector<H> cost;
};

ScaledProgram scaled_program(const LPProblem& p) {
  const std::size_t K = p.widths.size();
  const H pi = boost::math::constants::pi<H>();
  const H t = static_cast<H>(p.t);
  std::vector<H> width(K), weight(K);
  for (std::size_t k = 0; k < K; ++k) {
    width[k] = static_cast<H>(p.widths[k]);
    weight[k] = sqrt(pow(pi / width[k], static_cast<int>(p.dim)));
  }

  // Every shell row is divided by its largest entry, so all constraint data
  // lies in [-1, 1]; the right-hand side e^{-tm} shrinks accordingly.
  ScaledProgram s;
  auto add_row = [&s](std::vector<H> row, const H& rhs) {
    H big = 0;
    for (const auto& v : row) big = std::max(big, abs(v));
    if (big == 0) big = 1;
    for (auto& v : row) v /= big;
    s.rows.push_back(std::move(row));
    s.rhs.push_back(rhs / big);
    s.row_scale.push_back(big);
  };
  for (auto m : p.shell_norms()) {
    std::vector<H> row(K);
    for (std::size_t k = 0; k < K; ++k) row[k] = exp(-width[k] * m);
    add_row(std::move(row), exp(-t * m));
  }
  for (auto m : p.shell_norms()) {
    std::vector<H> row(K);
    for (std::size_t k = 0; k < K; ++k) row[k] = -weight[k] * exp(-pi * pi * m / width[k]);
    add_row(std::move(row), H(0));
  }
  if (p.coefficient_bound) {
    const H bound = static_cast<H>(*p.coefficient_bound);
    for (std::size_t k = 0; k < K; ++k) {
      for (int sign : {1, -1}) {
        std::vector<H> row(K, H(0));
        row[k] = sign;
        s.rows.push_back(std::move(row));
        s.rhs.push_back(-bound);
        s.row_scale.push_back(1);
      }
    }
  }
  s.cost.resize(K);
  for (std::size_t k = 0; k < K; ++k) s.cost[k] = weight[k] - 1;
  return s;
}

// max b.y  s.t.  A^T y = cost, y >= 0, written as a minimization.
BasicDenseLP<H> dual_program(const ScaledProgram& s, const std::vector<H>& cost) {
  const std::size_t K = cost.size();
  BasicDenseLP<H> d;
  d.num_vars = s.rows.size();
  d.objective.resize(d.num_vars);
  for (std::size_t i = 0; i < d.num_vars; ++i) d.objective[i] = -s.rhs[i];
  d.rows.assign(K, std::vector<H>(d.num_vars));
  for (std::size_t i = 0; i < d.num_vars; ++i)
    for (std::size_t k = 0; k < K; ++k) d.rows[k][i] = s.rows[i][k];
  d.senses.assign(K, RowSense::Equal);
  d.rhs = cost;
  return d;
}

Real to_real(const H& x) { return static_cast<Real>(x); }

void fill_slacks(const LPProblem& p, LPSolution& out) {
  const GaussianCombo h = certificate(p, out);
  const GaussianCombo hhat = h.fourier();
  out.objective = 1 + hhat.at_origin() - h.at_origin();
  out.theta_zn = pow(jacobi_theta(3, p.t).value, static_cast<int>(p.dim));
  out.epsilon = out.objective - out.theta_zn;
  for (auto m : p.shell_norms()) {
    out.slacks_majorize.push_back(h.eval(Real(m)) - exp(-p.t * Real(m)));
    out.slacks_fourier.push_back(-hhat.eval(Real(m)));
  }
  out.truncation_tail = combo_tail_bound(h, p.max_shell) + combo_tail_bound(hhat, p.max_shell);
}

}  // namespace

LPSolution solve_lp(const LPProblem& p, const SimplexOptions& options) {
  if (p.widths.empty() || p.dim < 4 || p.max_shell < 2 || !(p.t > 0))
    throw ConfigError("malformed LP problem");
  const ScaledProgram s = scaled_program(p);
  const std::size_t K = p.widths.size();
  const auto dual = solve_dense_lp(dual_program(s, s.cost), options);

  LPSolution out;
  out.pivots = dual.pivots;
  switch (dual.status) {
    case LPStatus::IterLimit:
      out.status = LPStatus::IterLimit;
      return out;
    case LPStatus::Unbounded: {
      // A dual ray is a Farkas certificate: rows combining to 0 >= positive.
      out.status = LPStatus::Infeasible;
      out.witness_kind = "farkas";
      out.witness.resize(s.rows.size());
      for (std::size_t i = 0; i < s.rows.size(); ++i) out.witness[i] = to_real(dual.ray[i] / s.row_scale[i]);
      return out;
    }
    case LPStatus::Infeasible: {
      // Either the primal is unbounded or infeasible; a zero-cost dual
      // decides which.
      const auto probe = solve_dense_lp(dual_program(s, std::vector<H>(K, H(0))), options);
      out.pivots += probe.pivots;
      if (probe.status == LPStatus::Unbounded) {
        out.status = LPStatus::Infeasible;
        out.witness_kind = "farkas";
        out.witness.resize(s.rows.size());
        for (std::size_t i = 0; i < s.rows.size(); ++i) out.witness[i] = to_real(probe.ray[i] / s.row_scale[i]);
      } else {
        out.status = LPStatus::Unbounded;
        out.witness_kind = "ray";
        out.witness.resize(K);
        for (std::size_t k = 0; k < K; ++k) out.witness[k] = to_real(-dual.duals[k]);
      }
      return out;
    }
    case LPStatus::Optimal:
      break;
  }
  out.status = LPStatus::Optimal;
  out.coeffs.resize(K);
  H primal = 0;
  for (std::size_t k = 0; k < K; ++k) {
    const H scaled = -dual.duals[k];
    out.coeffs[k] = to_real(scaled);
    primal += s.cost[k] * scaled;
  }
  out.duality_gap = to_real(abs(primal + dual.objective));
  fill_slacks(p, out);
  return out;
}

GaussianCombo certificate(const LPProblem& p, const LPSolution& solution) {
  if (solution.coeffs.size() != p.widths.size()) throw ConfigError("solution does not match the dictionary");
  std::vector<GaussianTerm> terms;
  for (std::size_t k = 0; k < p.widths.size(); ++k) terms.push_back({solution.coeffs[k], p.widths[k]});
  return GaussianCombo(p.dim, std::move(terms));
}

SaturationReport verify_solution(const LPProblem& p, const LPSolution& solution, const Lattice& lattice,
                                 const AuditOptions& options) {
  if (solution.status != LPStatus::Optimal) throw ConfigError("only Optimal solutions can be verified");
  if (lattice.dim() != p.dim) throw ConfigError("lattice dimension does not match the problem");
  SaturationReport report = chain_audit(certificate(p, solution), lattice, p.t, std::nullopt, options);
  // The solver only saw shells up to max_shell; beyond them the certificate
  // is unconstrained and only its size is controlled.
  if (report.verdict.kind != VerdictKind::Violated && solution.truncation_tail > p.tolerance) {
    report.verdict.kind = VerdictKind::Violated;
    report.verdict.condition = "tail";
    report.verdict.shell = p.max_shell;
  }
  return report;
}

}  // namespace thetacert
