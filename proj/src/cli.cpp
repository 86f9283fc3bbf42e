#include "thetacert/cli.hpp"

#include "thetacert/errors.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>

namespace thetacert {

namespace {

constexpr double kIdentityTolerance = 1e-12;
constexpr double kFunctionalTolerance = 1e-9;

EnumerationOptions enumeration(const RunConfig& c) {
  EnumerationOptions o;
  o.node_budget = c.budget;
  return o;
}

AuditOptions audit_options(const RunConfig& c) {
  AuditOptions o;
  o.enumeration = enumeration(c);
  return o;
}

std::vector<Real> t_values(const RunConfig& c) {
  std::vector<Real> out;
  for (double t : c.t) out.push_back(Real(t));
  if (out.empty()) out.push_back(Real(1));
  return out;
}

std::size_t dimension(const RunConfig& c) {
  if (c.n < 1) throw ConfigError("n must be >= 1");
  return static_cast<std::size_t>(c.n);
}

std::vector<GaussianCombo> certificates(const RunConfig& c) {
  std::vector<GaussianCombo> out;
  for (const auto& path : c.certificates) out.push_back(combo_from_json(read_json_file(path)));
  if (c.gaussian_t) out.push_back(GaussianCombo::gaussian(dimension(c), Real(*c.gaussian_t)));
  if (out.empty()) throw ConfigError("no certificate given (use --certificate or --gaussian)");
  return out;
}

Json tagged(Json j) {
  j["schema"] = kSchemaVersion;
  return j;
}

Json theta_report(const RunConfig& c, const Real& t, bool& ok) {
  const auto opts = enumeration(c);
  Json identities = Json::object();
  Json values = Json::object();
  for (int kind : {2, 3, 4}) values["theta" + std::to_string(kind)] = to_json(jacobi_theta(kind, t));
  values["e4"] = to_json(eisenstein_e4(t));
  if (c.identity_suite) {
    const IdentityReport r = identity_suite(t, opts);
    for (const auto& [k, v] : r.residuals) {
      identities[k] = real_to_json(v);
      if (!(v <= kIdentityTolerance)) ok = false;
    }
    for (const auto& [k, v] : r.values) values[k] = to_json(v);
    values["gap"] = real_to_json(r.gap);
    if (!(r.gap > 0)) ok = false;
  }
  if (c.gap) {
    const Real t2 = jacobi_theta(2, t).value, t3 = jacobi_theta(3, t).value, t4 = jacobi_theta(4, t).value;
    const Real gap = pow(t2 * t4, 4);
    values["gap"] = real_to_json(gap);
    values["theta_Z8"] = real_to_json(pow(t3, 8));
    values["theta_Z8_over_4"] = real_to_json(pow(t3, 8) / 4);
    if (!(gap > 0)) ok = false;
  }
  if (!c.lattice.empty()) {
    const Lattice l = resolve_lattice(c.lattice);
    values["theta_" + l.name()] = to_json(lattice_theta(l, t, Real(1e-20), opts));
    if (c.functional_equation) {
      const Real r = functional_equation_residual(l, t, opts);
      identities["functional_equation"] = real_to_json(r);
      if (!(r <= kFunctionalTolerance)) ok = false;
    }
  }
  if (c.secrecy_y) {
    const Lattice l = c.lattice.empty() ? make_e8() : resolve_lattice(c.lattice);
    values["secrecy"] = real_to_json(secrecy_function(l, Real(*c.secrecy_y), opts));
    values["secrecy_y"] = *c.secrecy_y;
  }
  return tagged({{"t", real_to_json(t)}, {"identities", identities}, {"values", values}});
}

CommandResult cmd_theta(const RunConfig& c) {
  bool ok = true;
  std::vector<Json> reports;
  for (const auto& t : t_values(c)) reports.push_back(theta_report(c, t, ok));
  CommandResult out;
  out.report = reports.size() == 1 ? reports.front() : tagged({{"reports", reports}});
  out.exit_code = ok ? kExitOk : kExitVerificationFailed;
  return out;
}

CommandResult cmd_lattice(const RunConfig& c) {
  if (c.lattice.empty()) throw ConfigError("lattice: --lattice is required");
  const Lattice l = resolve_lattice(c.lattice);
  Json j;
  j["lattice"] = to_json(l);
  j["integral"] = is_integral(l);
  j["unimodular"] = is_unimodular(l);
  j["even"] = is_even(l);
  j["stability"] = std::string(to_string(stability_certificate(l)));
  j["gram_determinant"] = l.gram_determinant().get_str();
  j["covolume"] = l.covolume();
  if (c.max_norm > 0) {
    const ShellSeries s = enumerate_shells(l, c.max_norm, enumeration(c));
    j["shells"] = to_json(s);
    j["cumulative"] = s.cumulative(c.max_norm);
  }
  Json rotations = Json::array();
  for (auto seed : c.seeds) {
    const RotatedLattice r(l, random_rotation(l.dim(), seed));
    double drift = 0;
    const auto gram = r.gram();
    for (std::size_t i = 0; i < l.dim(); ++i)
      for (std::size_t k = 0; k < l.dim(); ++k)
        drift = std::max(drift, std::abs(gram[i * l.dim() + k] - l.gram()(i, k).get_d()));
    Json rj{{"seed", seed}, {"orthogonality_error", r.rotation().orthogonality_error()}, {"gram_drift", drift}};
    if (c.max_norm > 0) rj["shells"] = to_json(r.shells(c.max_norm, c.budget));
    rotations.push_back(rj);
  }
  if (!c.seeds.empty()) j["rotations"] = rotations;
  return {tagged(j), kExitOk};
}

CommandResult cmd_lp(const RunConfig& c) {
  const std::size_t n = dimension(c);
  const Real t = t_values(c).front();
  std::vector<Real> widths;
  for (double w : c.dictionary) widths.push_back(Real(w));
  if (widths.empty()) widths = default_dictionary(t, static_cast<std::size_t>(std::max<std::int64_t>(c.dictionary_size, 1)));
  std::int64_t shells = c.shells;
  if (shells <= 0) {
    if (!c.coefficient_bound) throw ConfigError("lp: choosing shells automatically needs a coefficient bound");
    shells = shells_for_tail(n, widths, Real(*c.coefficient_bound), Real(c.tolerance));
  }
  LPProblem p = build_lp(n, t, widths, shells);
  p.tolerance = Real(c.tolerance);
  p.coefficient_bound = c.coefficient_bound ? std::optional<Real>(Real(*c.coefficient_bound)) : std::nullopt;
  const LPSolution s = solve_lp(p);

  Json j;
  j["problem"] = to_json(p);
  j["solution"] = to_json(s);
  int code = kExitVerificationFailed;
  if (s.status == LPStatus::Optimal) {
    const Lattice l = c.lattice.empty() ? make_zn(n) : resolve_lattice(c.lattice);
    const SaturationReport v = verify_solution(p, s, l, audit_options(c));
    j["verification"] = to_json(v);
    if (v.verdict.kind != VerdictKind::Violated) code = kExitOk;
    if (c.audit_e8) j["e8_audit"] = to_json(e8_collapse_audit(certificate(p, s), n, t, audit_options(c)));
  }
  return {tagged(j), code};
}

CommandResult cmd_audit(const RunConfig& c) {
  const Real t = t_values(c).front();
  const auto hs = certificates(c);
  const std::size_t n = hs.front().dim();
  const AuditOptions opts = audit_options(c);
  Json j;
  j["kind"] = c.audit_kind;
  int code = kExitOk;
  if (c.audit_kind == "chain") {
    const Lattice l = c.lattice.empty() ? make_zn(n) : resolve_lattice(c.lattice);
    Json reports = Json::array();
    std::vector<std::optional<RotationMatrix>> rotations;
    if (c.seeds.empty()) rotations.push_back(std::nullopt);
    for (auto seed : c.seeds) rotations.push_back(random_rotation(n, seed));
    for (const auto& h : hs)
      for (const auto& u : rotations) {
        const SaturationReport r = chain_audit(h, l, t, u, opts);
        if (r.verdict.kind == VerdictKind::Violated && !c.allow_violated) code = kExitVerificationFailed;
        reports.push_back(to_json(r));
      }
    j["reports"] = reports;
  } else if (c.audit_kind == "e8") {
    Json reports = Json::array();
    for (const auto& h : hs) reports.push_back(to_json(e8_collapse_audit(h, n, t, opts)));
    j["reports"] = reports;
  } else if (c.audit_kind == "graded") {
    if (hs.size() != 2) throw ConfigError("graded audit needs two certificates: h_zn then h_lc");
    const GradedReport r = graded_audit({hs[0], hs[1]}, n, t, opts);
    if (!r.comparison_holds || (!r.signs_hold && !c.allow_violated)) code = kExitVerificationFailed;
    j["report"] = to_json(r);
  } else if (c.audit_kind == "sequence") {
    const SequenceReport r = sequence_audit(hs, n, t, std::nullopt, opts);
    for (const auto& e : r.elements)
      if (!e.bounds_hold && !c.allow_violated) code = kExitVerificationFailed;
    j["report"] = to_json(r);
  } else if (c.audit_kind == "noncert") {
    if (!c.gaussian_t) throw ConfigError("noncert audit needs --gaussian");
    const auto r = gaussian_noncert_report(dimension(c), Real(*c.gaussian_t), std::max<std::int64_t>(c.max_norm, 10));
    j["report"] = to_json(r);
  } else {
    throw ConfigError("unknown audit kind " + c.audit_kind);
  }
  return {tagged(j), code};
}

CommandResult cmd_poisson(const RunConfig& c) {
  const auto hs = certificates(c);
  const std::size_t n = hs.front().dim();
  const Lattice l = c.lattice.empty() ? make_zn(n) : resolve_lattice(c.lattice);
  Json reports = Json::array();
  int code = kExitOk;
  for (const auto& h : hs) {
    const PoissonReport r = poisson_check(h, l, Real(c.tolerance), enumeration(c));
    if (!r.passed) code = kExitVerificationFailed;
    reports.push_back(to_json(r));
  }
  return {tagged({{"lattice", l.name()}, {"reports", reports}}), code};
}

void flatten(const Json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array()) {
    const bool scalars = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
    if (scalars && j.size() > 8) {
      out << prefix << ": [" << j.size() << " values]\n";
    } else if (scalars) {
      out << prefix << ": " << j.dump() << "\n";
    } else {
      for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    }
  } else {
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

Lattice resolve_lattice(const std::string& spec) {
  if (spec.ends_with(".json") || std::filesystem::exists(spec)) return lattice_from_json(read_json_file(spec));
  return make_named(spec);
}

CommandResult run_command(const RunConfig& c) {
  if (c.command == "theta") return cmd_theta(c);
  if (c.command == "lattice") return cmd_lattice(c);
  if (c.command == "lp") return cmd_lp(c);
  if (c.command == "audit") return cmd_audit(c);
  if (c.command == "poisson") return cmd_poisson(c);
  throw ConfigError("unknown command \"" + c.command + "\"");
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const BudgetExceeded*>(&e) || dynamic_cast<const InsufficientShells*>(&e))
    return kExitBudgetExceeded;
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const DomainError*>(&e)) return kExitConfigError;
  return 1;
}

std::string pretty_print(const Json& report) {
  std::ostringstream out;
  flatten(report, "", out);
  return out.str();
}

}  // namespace thetacert
