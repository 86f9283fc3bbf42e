#include "thetacert/saturation.hpp"

#include "thetacert/errors.hpp"
#include "thetacert/poisson.hpp"
#include "thetacert/theta.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <sstream>

namespace thetacert {

ShellFunction ShellFunction::from_combo(const GaussianCombo& h) {
  const GaussianCombo hhat = h.fourier();
  ShellFunction f;
  f.dim = h.dim();
  f.h = [h](std::int64_t m) { return h.eval(Real(m)); };
  f.hhat = [hhat](std::int64_t m) { return hhat.eval(Real(m)); };
  f.tail = [h, hhat](std::int64_t m) { return combo_tail_bound(h, m) + combo_tail_bound(hhat, m); };
  f.cutoff = [h, hhat](const Real& tol) {
    return std::max(required_max_norm(h, tol / 2), required_max_norm(hhat, tol / 2));
  };
  f.h_at = [h](const Real& r2) { return h.eval(r2); };
  f.hhat_at = [hhat](const Real& r2) { return hhat.eval(r2); };
  return f;
}

ShellFunction ShellFunction::prescribed(std::size_t dim, const Real& h0, const Real& hhat0,
                                        std::vector<Real> h_values, std::vector<Real> hhat_values,
                                        const Real& tail_bound) {
  if (dim == 0) throw ConfigError("dimension must be >= 1");
  if (h_values.size() != hhat_values.size()) throw ConfigError("prescribed value lists differ in length");
  if (tail_bound < 0) throw ConfigError("tail bound must be nonnegative");
  const auto size = static_cast<std::int64_t>(h_values.size());
  auto hv = std::make_shared<const std::vector<Real>>(std::move(h_values));
  auto hh = std::make_shared<const std::vector<Real>>(std::move(hhat_values));
  ShellFunction f;
  f.dim = dim;
  f.test_double = true;
  f.h = [hv, h0, size](std::int64_t m) {
    if (m == 0) return h0;
    return m <= size ? (*hv)[static_cast<std::size_t>(m - 1)] : Real(0);
  };
  f.hhat = [hh, hhat0, size](std::int64_t m) {
    if (m == 0) return hhat0;
    return m <= size ? (*hh)[static_cast<std::size_t>(m - 1)] : Real(0);
  };
  f.tail = [hv, hh, size, dim, tail_bound](std::int64_t from) {
    Real sum = tail_bound;
    for (std::int64_t m = std::max<std::int64_t>(from + 1, 1); m <= size; ++m) {
      const auto i = static_cast<std::size_t>(m - 1);
      sum += pow(2 * sqrt(Real(m)) + 1, static_cast<int>(dim)) * (abs((*hv)[i]) + abs((*hh)[i]));
    }
    return sum;
  };
  f.cutoff = [size](const Real&) { return std::max<std::int64_t>(size, 1); };
  return f;
}

std::string describe(const Verdict& v) {
  std::ostringstream out;
  switch (v.kind) {
    case VerdictKind::Sharp: out << "Sharp"; break;
    case VerdictKind::NearSharp: out << "NearSharp(" << to_double(v.epsilon) << ")"; break;
    case VerdictKind::Violated: out << "Violated(" << v.condition << ", " << v.shell << ")"; break;
  }
  return out.str();
}

namespace {

void check_input(const ShellFunction& f, const AuditOptions& options) {
  if (f.test_double && !options.allow_test_doubles)
    throw ConfigError("prescribed shell values are test doubles; set allow_test_doubles to audit them");
  if (!f.h || !f.hhat || !f.tail || !f.cutoff) throw ConfigError("incomplete shell function");
}

Real theta_zn(std::size_t n, const Real& t) { return pow(jacobi_theta(3, t).value, static_cast<int>(n)); }

std::int64_t audit_max_norm(const ShellFunction& f, std::size_t n, const Real& t, const AuditOptions& options) {
  return std::max({f.cutoff(options.tail_tolerance), required_max_norm(n, t, options.tail_tolerance),
                   std::int64_t{1}});
}

Lattice competitor(std::size_t n) {
  if (n < 8) throw ConfigError("the E8 competitor needs n >= 8");
  return n == 8 ? make_e8() : make_named("E8+Z" + std::to_string(n - 8));
}

Real nullwerte_gap(const Real& t) {
  const Real t2 = jacobi_theta(2, t).value, t4 = jacobi_theta(4, t).value;
  return pow(t2 * t4, 4);
}

}  // namespace

SaturationReport chain_audit(const ShellFunction& f, const Lattice& lattice, const Real& t,
                             const std::optional<RotationMatrix>& rotation, const AuditOptions& options) {
  check_input(f, options);
  if (!(t > 0)) throw DomainError("chain audit needs t > 0");
  if (!is_integral(lattice) || !is_unimodular(lattice))
    throw DomainError("chain audit needs an integral unimodular lattice");
  if (lattice.dim() != f.dim) throw ConfigError("lattice dimension does not match the function");
  const std::size_t n = f.dim;
  if (rotation && rotation->dim != n) throw ConfigError("rotation dimension does not match the lattice");

  const std::int64_t max_norm =
      std::max(audit_max_norm(f, n, t, options), rotation ? options.point_level_max_norm : std::int64_t{1});
  const ShellSeries shells = enumerate_shells(lattice, max_norm, options.enumeration);

  SaturationReport rep;
  rep.lattice_label = lattice.name();
  rep.dim = n;
  rep.t = t;
  rep.max_norm = max_norm;
  const Real h0 = f.h(0), hhat0 = f.hhat(0);
  rep.bound = 1 + hhat0 - h0;
  rep.theta_zn = theta_zn(n, t);

  for (std::int64_t m = 1; m <= max_norm; ++m) {
    const auto r = shells.counts[static_cast<std::size_t>(m)];
    if (r == 0) continue;
    ShellSlack s;
    s.m = m;
    s.count = r;
    s.point_majorize = f.h(m) - exp(-t * Real(m));
    s.point_fourier = -f.hhat(m);
    s.a = Real(r) * s.point_majorize;
    s.b = Real(r) * s.point_fourier;
    rep.per_shell.push_back(s);
  }

  if (rotation) {
    // Point-level pass over U L: each rotated vector is evaluated at its own
    // floating-point norm, then the shell contributions are compared.
    rep.rotation_seed = rotation->seed;
    const RotatedLattice rotated(lattice, *rotation);
    std::map<std::int64_t, std::pair<Real, Real>> rotated_ab;
    for (const auto& x : rotated.points(options.point_level_max_norm, options.enumeration.node_budget)) {
      Real r2 = 0;
      for (double v : x) r2 += Real(v) * Real(v);
      const auto m = static_cast<std::int64_t>(llround(to_double(r2)));
      if (m == 0) continue;
      auto& [a, b] = rotated_ab[m];
      a += (f.h_at ? f.h_at(r2) : f.h(m)) - exp(-t * r2);
      b -= f.hhat_at ? f.hhat_at(r2) : f.hhat(m);
    }
    for (auto& s : rep.per_shell) {
      auto it = rotated_ab.find(s.m);
      if (it == rotated_ab.end()) continue;
      rep.rotation_deviation = std::max({rep.rotation_deviation, abs(it->second.first - s.a),
                                         abs(it->second.second - s.b)});
      s.a = it->second.first;
      s.b = it->second.second;
    }
  }

  Real sum_h = 0, sum_hhat = 0, sum_gauss = 0;
  for (auto it = rep.per_shell.rbegin(); it != rep.per_shell.rend(); ++it) {
    const Real g = Real(it->count) * exp(-t * Real(it->m));
    sum_gauss += g;
    sum_h += it->a + g;
    sum_hhat += -it->b;
    rep.sum_a += it->a;
    rep.sum_b += it->b;
  }
  rep.theta_lattice = 1 + sum_gauss;
  rep.epsilon = rep.bound - rep.theta_zn;
  rep.lattice_epsilon = rep.bound - rep.theta_lattice;
  rep.theta_gap = rep.theta_zn - rep.theta_lattice;
  rep.bookkeeping_residual = abs(rep.sum_a + rep.sum_b - rep.lattice_epsilon);
  rep.tail_bound = f.tail(max_norm) + shell_tail_bound(n, max_norm, t);

  rep.chain = {
      {"theta_minus_one", sum_gauss},
      {"sum_h_nonzero", sum_h},
      {"sum_h_minus_h0", (h0 + sum_h) - h0},
      {"sum_hhat_minus_h0", (hhat0 + sum_hhat) - h0},
      {"hhat0_minus_h0_plus_sum_hhat", hhat0 - h0 + sum_hhat},
      {"hhat0_minus_h0", hhat0 - h0},
      {"theta_zn_minus_one", rep.theta_zn - 1},
  };

  Verdict v;
  v.epsilon = rep.epsilon;
  auto violate = [&](const char* condition, std::int64_t shell) {
    v.kind = VerdictKind::Violated;
    v.condition = condition;
    v.shell = shell;
  };
  for (const auto& s : rep.per_shell) {
    if (s.point_majorize < -options.sign_tolerance) {
      violate("i", s.m);
      break;
    }
    if (s.point_fourier < -options.sign_tolerance) {
      violate("ii", s.m);
      break;
    }
  }
  const Real slack_tol = options.chain_tolerance + rep.tail_bound;
  if (v.condition.empty() && rep.bookkeeping_residual > slack_tol) violate("bookkeeping", 0);
  if (v.condition.empty()) {
    for (const auto& s : rep.per_shell) {
      if (s.point_majorize > rep.lattice_epsilon + slack_tol || s.point_fourier > rep.lattice_epsilon + slack_tol) {
        violate("bound", s.m);
        break;
      }
    }
  }
  if (v.condition.empty()) v.kind = abs(rep.epsilon) <= options.chain_tolerance ? VerdictKind::Sharp : VerdictKind::NearSharp;
  rep.verdict = v;
  return rep;
}

SaturationReport chain_audit(const GaussianCombo& h, const Lattice& lattice, const Real& t,
                             const std::optional<RotationMatrix>& rotation, const AuditOptions& options) {
  return chain_audit(ShellFunction::from_combo(h), lattice, t, rotation, options);
}

CollapseReport e8_collapse_audit(const ShellFunction& f, std::size_t n, const Real& t,
                                 const AuditOptions& options) {
  check_input(f, options);
  if (n < 8) throw ConfigError("E8 collapse audit needs n >= 8");
  if (f.dim != n) throw ConfigError("function dimension does not match n");
  if (!(t > 0)) throw DomainError("E8 collapse audit needs t > 0");
  const Lattice lambda = competitor(n);
  const std::int64_t max_norm = audit_max_norm(f, n, t, options);
  const ShellSeries shells = enumerate_shells(lambda, max_norm, options.enumeration);

  Real sum_gauss = 0, sum_h = 0, sum_hhat = 0;
  for (std::int64_t m = max_norm; m >= 1; --m) {
    const auto r = shells.counts[static_cast<std::size_t>(m)];
    if (r == 0) continue;
    sum_gauss += Real(r) * exp(-t * Real(m));
    sum_h += Real(r) * f.h(m);
    sum_hhat += Real(r) * f.hhat(m);
  }
  const Real h0 = f.h(0), hhat0 = f.hhat(0);
  const Real zn = theta_zn(n, t);

  CollapseReport rep;
  rep.dim = n;
  rep.t = t;
  rep.max_norm = max_norm;
  rep.tail_bound = f.tail(max_norm) + shell_tail_bound(n, max_norm, t);
  const Real tol = options.chain_tolerance + rep.tail_bound;
  auto step = [&](const char* label, const Real& value, const Real& residual) {
    rep.steps.push_back({label, value, residual, residual <= tol});
    if (rep.failed_step.empty() && residual > tol) rep.failed_step = label;
  };
  step("theta_minus_one", sum_gauss, 0);
  step("sum_h_nonzero", sum_h, abs(sum_h - sum_gauss));
  step("sum_h_minus_h0", (h0 + sum_h) - h0, abs((h0 + sum_h) - h0 - sum_h));
  step("sum_hhat_minus_h0", (hhat0 + sum_hhat) - h0, abs((hhat0 + sum_hhat) - (h0 + sum_h)));
  step("hhat0_minus_h0", hhat0 - h0, abs(sum_hhat));
  step("theta_zn_minus_one", zn - 1, abs(hhat0 - h0 - (zn - 1)));

  rep.collapse_residual = abs(hhat0 - h0 - sum_gauss);
  rep.sharpness_defect = hhat0 - h0 - (zn - 1);
  rep.contradiction_magnitude = nullwerte_gap(t);
  rep.lattice_gap = zn - (1 + sum_gauss);
  return rep;
}

CollapseReport e8_collapse_audit(const GaussianCombo& h, std::size_t n, const Real& t,
                                 const AuditOptions& options) {
  return e8_collapse_audit(ShellFunction::from_combo(h), n, t, options);
}

GradedReport graded_audit(const GradedPair& pair, std::size_t n, const Real& t, const AuditOptions& options) {
  if (pair.h_zn.dim() != n || pair.h_lc.dim() != n) throw ConfigError("graded pair dimension does not match n");
  if (!(t > 0)) throw DomainError("graded audit needs t > 0");
  const Lattice lambda = competitor(n);
  const GaussianCombo f = pair.f();
  const GaussianCombo fhat = f.fourier();
  const ShellFunction sf = ShellFunction::from_combo(f);

  GradedReport rep;
  rep.dim = n;
  rep.t = t;
  rep.max_norm = std::max<std::int64_t>(sf.cutoff(options.tail_tolerance), 1);
  const ShellSeries shells = enumerate_shells(lambda, rep.max_norm, options.enumeration);
  rep.signs_hold = true;
  for (std::int64_t m = 1; m <= rep.max_norm; ++m) {
    const auto r = shells.counts[static_cast<std::size_t>(m)];
    if (r == 0 || !rep.signs_hold) continue;
    if (f.eval(Real(m)) < -options.sign_tolerance) {
      rep.signs_hold = false;
      rep.first_violation = "F>=0";
      rep.violation_shell = m;
    } else if (fhat.eval(Real(m)) > options.sign_tolerance) {
      rep.signs_hold = false;
      rep.first_violation = "F^<=0";
      rep.violation_shell = m;
    }
  }
  rep.sum_f = shell_sum(shells, f, 1);
  rep.sum_f_hat = shell_sum(shells, fhat, 1);
  rep.f_hat0_minus_f0 = fhat.at_origin() - f.at_origin();
  rep.residual = abs(rep.f_hat0_minus_f0 - (rep.sum_f - rep.sum_f_hat));
  rep.tail_bound = sf.tail(rep.max_norm);
  rep.comparison_holds = rep.residual <= options.chain_tolerance + rep.tail_bound;
  rep.bound_zn = 1 + pair.h_zn.fourier().at_origin() - pair.h_zn.at_origin();
  rep.bound_lc = 1 + pair.h_lc.fourier().at_origin() - pair.h_lc.at_origin();
  return rep;
}

SequenceReport sequence_audit(const std::vector<ShellFunction>& hs, std::size_t n, const Real& t,
                              const std::optional<Dominators>& dominators, const AuditOptions& options) {
  if (hs.empty()) throw ConfigError("sequence audit needs at least one element");
  if (!(t > 0)) throw DomainError("sequence audit needs t > 0");
  for (const auto& f : hs) {
    check_input(f, options);
    if (f.dim != n) throw ConfigError("sequence element dimension does not match n");
  }
  SequenceReport rep;
  rep.dim = n;
  rep.t = t;
  const Lattice zn = make_zn(n);
  const Real slack_tol = options.chain_tolerance;
  for (std::size_t j = 0; j < hs.size(); ++j) {
    SaturationReport chain = chain_audit(hs[j], zn, t, std::nullopt, options);
    SequenceElement e;
    e.index = j;
    e.epsilon = chain.epsilon;
    e.bounds_hold = true;
    for (const auto& s : chain.per_shell) {
      e.max_majorize_slack = std::max(e.max_majorize_slack, s.point_majorize);
      e.max_fourier_slack = std::max(e.max_fourier_slack, s.point_fourier);
      const bool ok = s.point_majorize >= -options.sign_tolerance && s.point_fourier >= -options.sign_tolerance &&
                      s.point_majorize <= e.epsilon + slack_tol + chain.tail_bound &&
                      s.point_fourier <= e.epsilon + slack_tol + chain.tail_bound;
      if (!ok && e.bounds_hold) {
        e.bounds_hold = false;
        e.first_bad_shell = s.m;
      }
    }
    rep.elements.push_back(e);
    rep.chains.push_back(std::move(chain));
  }
  if (!dominators) return rep;

  for (const Envelope* env : {&dominators->a, &dominators->b})
    if (!(env->decay > 0) || !(env->coeff >= 0)) throw ConfigError("envelope is not summable");
  auto envelope_norm = [&](const Envelope& env) {
    if (env.coeff == 0) return std::int64_t{1};
    return required_max_norm(n, env.decay, options.tail_tolerance / env.coeff);
  };
  const std::int64_t max_norm =
      std::max({envelope_norm(dominators->a), envelope_norm(dominators->b), required_max_norm(n, t, options.tail_tolerance)});
  const ShellSeries shells = enumerate_shells(competitor(n), max_norm, options.enumeration);
  rep.max_norm = max_norm;
  rep.envelope_tail = dominators->a.coeff * shell_tail_bound(n, max_norm, dominators->a.decay) +
                      dominators->b.coeff * shell_tail_bound(n, max_norm, dominators->b.decay);
  rep.dominated = true;
  // Domination is only needed on nonzero points; h(0) and h^(0) are finite
  // numbers that enter the bound separately.
  for (std::size_t j = 0; j < hs.size(); ++j) {
    for (std::int64_t m = 1; m <= max_norm; ++m) {
      if (shells.counts[static_cast<std::size_t>(m)] == 0) continue;
      const Real ea = dominators->a.coeff * exp(-dominators->a.decay * Real(m));
      const Real eb = dominators->b.coeff * exp(-dominators->b.decay * Real(m));
      if (abs(hs[j].h(m)) > ea * (1 + real_epsilon() * 64) || abs(hs[j].hhat(m)) > eb * (1 + real_epsilon() * 64)) {
        rep.elements[j].dominated = false;
        rep.dominated = false;
        break;
      }
    }
  }
  const auto& last = hs.back();
  for (std::int64_t m = max_norm; m >= 1; --m) {
    const auto r = shells.counts[static_cast<std::size_t>(m)];
    if (r == 0) continue;
    rep.limit_sum_h += Real(r) * exp(-t * Real(m));
    rep.final_sum_h += Real(r) * last.h(m);
    rep.final_sum_hhat += Real(r) * last.hhat(m);
  }
  rep.limit_sum_hhat = 0;
  rep.limit_bound = theta_zn(n, t) - 1;
  rep.theta_clash = rep.limit_bound - (rep.limit_sum_h - rep.limit_sum_hhat);
  rep.theta_gap = nullwerte_gap(t) * pow(jacobi_theta(3, t).value, static_cast<int>(n - 8));
  return rep;
}

SequenceReport sequence_audit(const std::vector<GaussianCombo>& hs, std::size_t n, const Real& t,
                              const std::optional<Dominators>& dominators, const AuditOptions& options) {
  std::vector<ShellFunction> fs;
  for (const auto& h : hs) fs.push_back(ShellFunction::from_combo(h));
  return sequence_audit(fs, n, t, dominators, options);
}

}  // namespace thetacert
