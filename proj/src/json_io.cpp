#include "thetacert/json_io.hpp"

#include "thetacert/errors.hpp"

#include <fstream>
#include <limits>
#include <set>

namespace thetacert {

namespace {

Json with_schema(Json j) {
  j["schema"] = kSchemaVersion;
  return j;
}

void check_schema(const Json& j, const char* what) {
  if (!j.is_object()) throw ConfigError(std::string(what) + ": expected a JSON object");
  auto it = j.find("schema");
  if (it != j.end() && *it != kSchemaVersion)
    throw ConfigError(std::string(what) + ": unsupported schema " + it->dump());
}

template <class T>
T get(const Json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(std::string(what) + ": missing \"" + key + "\"");
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string(what) + ": bad \"" + key + "\": " + e.what());
  }
}

Json integer_to_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Integer z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw ConfigError("bad integer " + j.dump());
    return z;
  }
  throw ConfigError("expected an integer, got " + j.dump());
}

Json matrix_to_json(const RationalMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k)
      out.push_back(Json::array({integer_to_json(m(i, k).get_num()), integer_to_json(m(i, k).get_den())}));
  return out;
}

RationalMatrix matrix_from_json(const Json& j, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n * n)
    throw ConfigError(std::string(what) + ": expected " + std::to_string(n * n) + " [num, den] entries");
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n * n; ++i) {
    const Json& e = j[i];
    Rational q;
    if (e.is_array() && e.size() == 2) {
      const Integer den = integer_from_json(e[1]);
      if (den == 0) throw ConfigError(std::string(what) + ": zero denominator");
      q = Rational(integer_from_json(e[0]), den);
      q.canonicalize();
    } else {
      q = Rational(integer_from_json(e));
    }
    m(i / n, i % n) = q;
  }
  return m;
}

Json reals(const std::vector<Real>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(real_to_json(x));
  return out;
}

std::vector<Real> reals_from(const Json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_array()) throw ConfigError(std::string(what) + ": missing array \"" + key + "\"");
  std::vector<Real> out;
  for (const auto& e : *it) out.push_back(real_from_json(e));
  return out;
}

LPStatus status_from_string(const std::string& s) {
  for (auto st : {LPStatus::Optimal, LPStatus::Infeasible, LPStatus::Unbounded, LPStatus::IterLimit})
    if (to_string(st) == s) return st;
  throw ConfigError("unknown LP status " + s);
}

Json verdict_json(const Verdict& v) {
  Json j;
  j["kind"] = v.kind == VerdictKind::Sharp ? "Sharp" : v.kind == VerdictKind::NearSharp ? "NearSharp" : "Violated";
  j["epsilon"] = real_to_json(v.epsilon);
  j["condition"] = v.condition;
  j["shell"] = v.shell;
  j["text"] = describe(v);
  return j;
}

}  // namespace

Json real_to_json(const Real& x) {
  const double d = to_double(x);
  if (std::isnan(d)) return Json("nan");
  if (std::isinf(d)) return Json(d > 0 ? "inf" : "-inf");
  return Json(d);
}

Real real_from_json(const Json& j) {
  if (j.is_number()) return Real(j.get<double>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<Real>::infinity();
    if (s == "-inf") return -std::numeric_limits<Real>::infinity();
    try {
      return Real(s);
    } catch (const std::exception&) {
      throw ConfigError("bad real " + j.dump());
    }
  }
  throw ConfigError("expected a real number, got " + j.dump());
}

Json to_json(const Lattice& lattice) {
  Json j;
  j["dim"] = lattice.dim();
  j["name"] = lattice.name();
  if (lattice.basis()) j["basis"] = matrix_to_json(*lattice.basis());
  j["gram"] = matrix_to_json(lattice.gram());
  return with_schema(j);
}

Lattice lattice_from_json(const Json& j) {
  check_schema(j, "lattice");
  const auto n = get<std::size_t>(j, "dim", "lattice");
  if (n == 0) throw ConfigError("lattice: dim must be >= 1");
  const std::string name = j.value("name", std::string{});
  if (j.contains("basis")) {
    Lattice l = Lattice::from_basis(matrix_from_json(j["basis"], n, "lattice basis"), name);
    if (j.contains("gram") && !(matrix_from_json(j["gram"], n, "lattice gram") == l.gram()))
      throw ConfigError("lattice: gram does not equal basis^T basis");
    return l;
  }
  if (j.contains("gram")) return Lattice::from_gram(matrix_from_json(j["gram"], n, "lattice gram"), name);
  throw ConfigError("lattice: needs \"basis\" or \"gram\"");
}

Json to_json(const ShellSeries& s) {
  Json j;
  j["dim"] = s.dim;
  j["max_norm"] = s.max_norm;
  j["lattice"] = s.lattice_label;
  Json counts = Json::object();
  for (std::size_t m = 0; m < s.counts.size(); ++m) counts[std::to_string(m)] = s.counts[m];
  j["counts"] = counts;
  return with_schema(j);
}

ShellSeries shells_from_json(const Json& j) {
  check_schema(j, "shells");
  ShellSeries s;
  s.dim = j.value("dim", std::size_t{0});
  s.max_norm = get<std::int64_t>(j, "max_norm", "shells");
  if (s.max_norm < 0) throw ConfigError("shells: negative max_norm");
  s.lattice_label = j.value("lattice", std::string{});
  s.counts.assign(static_cast<std::size_t>(s.max_norm) + 1, 0);
  const auto& counts = j.at("counts");
  for (auto it = counts.begin(); it != counts.end(); ++it) {
    std::size_t pos = 0;
    const long long m = std::stoll(it.key(), &pos);
    if (pos != it.key().size() || m < 0 || m > s.max_norm) throw ConfigError("shells: bad norm key " + it.key());
    s.counts[static_cast<std::size_t>(m)] = it.value().get<std::int64_t>();
  }
  return s;
}

Json to_json(const GaussianCombo& h) {
  Json terms = Json::array();
  for (const auto& term : h.terms()) terms.push_back({{"c", real_to_json(term.coeff)}, {"a", real_to_json(term.width)}});
  return with_schema({{"dim", h.dim()}, {"terms", terms}});
}

GaussianCombo combo_from_json(const Json& j) {
  check_schema(j, "certificate");
  const auto n = get<std::size_t>(j, "dim", "certificate");
  std::vector<GaussianTerm> terms;
  for (const auto& e : j.at("terms")) {
    if (!e.contains("c") || !e.contains("a")) throw ConfigError("certificate: each term needs \"c\" and \"a\"");
    terms.push_back({real_from_json(e["c"]), real_from_json(e["a"])});
  }
  return GaussianCombo(n, std::move(terms));
}

Json to_json(const RotationMatrix& u) {
  return with_schema({{"dim", u.dim}, {"seed", u.seed}, {"entries", u.entries}});
}

Json to_json(const LPProblem& p) {
  Json j;
  j["dim"] = p.dim;
  j["t"] = real_to_json(p.t);
  j["widths"] = reals(p.widths);
  j["max_shell"] = p.max_shell;
  j["tolerance"] = real_to_json(p.tolerance);
  j["coefficient_bound"] = p.coefficient_bound ? real_to_json(*p.coefficient_bound) : Json(nullptr);
  return with_schema(j);
}

LPProblem problem_from_json(const Json& j) {
  check_schema(j, "lp problem");
  LPProblem p = build_lp(get<std::size_t>(j, "dim", "lp problem"), real_from_json(j.at("t")),
                         reals_from(j, "widths", "lp problem"), get<std::int64_t>(j, "max_shell", "lp problem"));
  if (j.contains("tolerance")) p.tolerance = real_from_json(j["tolerance"]);
  if (j.contains("coefficient_bound")) {
    if (j["coefficient_bound"].is_null())
      p.coefficient_bound.reset();
    else
      p.coefficient_bound = real_from_json(j["coefficient_bound"]);
  }
  return p;
}

Json to_json(const LPSolution& s) {
  Json j;
  j["status"] = std::string(to_string(s.status));
  j["coeffs"] = reals(s.coeffs);
  j["objective"] = real_to_json(s.objective);
  j["theta_zn"] = real_to_json(s.theta_zn);
  j["epsilon"] = real_to_json(s.epsilon);
  j["slacks_majorize"] = reals(s.slacks_majorize);
  j["slacks_fourier"] = reals(s.slacks_fourier);
  j["pivots"] = s.pivots;
  j["duality_gap"] = real_to_json(s.duality_gap);
  j["witness"] = reals(s.witness);
  j["witness_kind"] = s.witness_kind;
  j["truncation_tail"] = real_to_json(s.truncation_tail);
  return with_schema(j);
}

LPSolution solution_from_json(const Json& j) {
  check_schema(j, "lp solution");
  LPSolution s;
  s.status = status_from_string(get<std::string>(j, "status", "lp solution"));
  s.coeffs = reals_from(j, "coeffs", "lp solution");
  s.objective = real_from_json(j.at("objective"));
  s.theta_zn = real_from_json(j.at("theta_zn"));
  s.epsilon = real_from_json(j.at("epsilon"));
  s.slacks_majorize = reals_from(j, "slacks_majorize", "lp solution");
  s.slacks_fourier = reals_from(j, "slacks_fourier", "lp solution");
  s.pivots = j.value("pivots", std::size_t{0});
  s.duality_gap = real_from_json(j.at("duality_gap"));
  s.witness = reals_from(j, "witness", "lp solution");
  s.witness_kind = j.value("witness_kind", std::string{});
  s.truncation_tail = real_from_json(j.at("truncation_tail"));
  return s;
}

Json to_json(const ThetaValue& v) {
  return {{"value", real_to_json(v.value)}, {"abs_error", real_to_json(v.abs_error)}, {"t", real_to_json(v.t)}};
}

Json to_json(const IdentityReport& r) {
  Json identities = Json::object();
  for (const auto& [k, v] : r.residuals) identities[k] = real_to_json(v);
  Json values = Json::object();
  for (const auto& [k, v] : r.values) values[k] = to_json(v);
  return with_schema({{"t", real_to_json(r.t)}, {"identities", identities}, {"values", values},
                      {"gap", real_to_json(r.gap)}});
}

Json to_json(const PoissonReport& r) {
  return with_schema({{"lhs", real_to_json(r.lhs)},
                      {"rhs", real_to_json(r.rhs)},
                      {"residual", real_to_json(r.residual)},
                      {"tail_bound", real_to_json(r.tail_bound)},
                      {"tolerance", real_to_json(r.tolerance)},
                      {"max_norm", r.max_norm},
                      {"passed", r.passed}});
}

Json to_json(const NonCertificateReport& r) {
  return with_schema({{"dim", r.dim},
                      {"t", real_to_json(r.t)},
                      {"max_norm", r.max_norm},
                      {"majorization_slack", reals(r.majorization_slack)},
                      {"transform_values", reals(r.transform_values)},
                      {"min_violation", real_to_json(r.min_violation)},
                      {"majorization_holds", r.majorization_holds},
                      {"transform_positive_everywhere", r.transform_positive_everywhere}});
}

Json to_json(const SaturationReport& r) {
  Json chain = Json::array();
  for (const auto& line : r.chain) chain.push_back({{"label", line.label}, {"value", real_to_json(line.value)}});
  Json shells = Json::array();
  for (const auto& s : r.per_shell)
    shells.push_back({{"m", s.m},
                      {"count", s.count},
                      {"point_majorize", real_to_json(s.point_majorize)},
                      {"point_fourier", real_to_json(s.point_fourier)},
                      {"A", real_to_json(s.a)},
                      {"B", real_to_json(s.b)}});
  Json j;
  j["lattice"] = r.lattice_label;
  j["dim"] = r.dim;
  j["t"] = real_to_json(r.t);
  j["bound"] = real_to_json(r.bound);
  j["theta_zn"] = real_to_json(r.theta_zn);
  j["theta_lattice"] = real_to_json(r.theta_lattice);
  j["epsilon"] = real_to_json(r.epsilon);
  j["lattice_epsilon"] = real_to_json(r.lattice_epsilon);
  j["theta_gap"] = real_to_json(r.theta_gap);
  j["chain"] = chain;
  j["per_shell"] = shells;
  j["sum_A"] = real_to_json(r.sum_a);
  j["sum_B"] = real_to_json(r.sum_b);
  j["bookkeeping_residual"] = real_to_json(r.bookkeeping_residual);
  j["tail_bound"] = real_to_json(r.tail_bound);
  j["max_norm"] = r.max_norm;
  j["rotation_seed"] = r.rotation_seed ? Json(*r.rotation_seed) : Json(nullptr);
  j["rotation_deviation"] = real_to_json(r.rotation_deviation);
  j["verdict"] = verdict_json(r.verdict);
  return with_schema(j);
}

Json to_json(const CollapseReport& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps)
    steps.push_back({{"label", s.label}, {"value", real_to_json(s.value)}, {"residual", real_to_json(s.residual)},
                     {"holds", s.holds}});
  return with_schema({{"dim", r.dim},
                      {"t", real_to_json(r.t)},
                      {"steps", steps},
                      {"failed_step", r.failed_step},
                      {"collapse_residual", real_to_json(r.collapse_residual)},
                      {"sharpness_defect", real_to_json(r.sharpness_defect)},
                      {"contradiction_magnitude", real_to_json(r.contradiction_magnitude)},
                      {"lattice_gap", real_to_json(r.lattice_gap)},
                      {"tail_bound", real_to_json(r.tail_bound)},
                      {"max_norm", r.max_norm}});
}

Json to_json(const GradedReport& r) {
  return with_schema({{"dim", r.dim},
                      {"t", real_to_json(r.t)},
                      {"f_hat0_minus_f0", real_to_json(r.f_hat0_minus_f0)},
                      {"sum_f", real_to_json(r.sum_f)},
                      {"sum_f_hat", real_to_json(r.sum_f_hat)},
                      {"residual", real_to_json(r.residual)},
                      {"tail_bound", real_to_json(r.tail_bound)},
                      {"max_norm", r.max_norm},
                      {"signs_hold", r.signs_hold},
                      {"first_violation", r.first_violation},
                      {"violation_shell", r.violation_shell},
                      {"bound_zn", real_to_json(r.bound_zn)},
                      {"bound_lc", real_to_json(r.bound_lc)},
                      {"comparison_holds", r.comparison_holds}});
}

Json to_json(const SequenceReport& r) {
  Json elements = Json::array();
  for (const auto& e : r.elements)
    elements.push_back({{"index", e.index},
                        {"epsilon", real_to_json(e.epsilon)},
                        {"bounds_hold", e.bounds_hold},
                        {"first_bad_shell", e.first_bad_shell},
                        {"max_majorize_slack", real_to_json(e.max_majorize_slack)},
                        {"max_fourier_slack", real_to_json(e.max_fourier_slack)},
                        {"dominated", e.dominated}});
  Json chains = Json::array();
  for (const auto& c : r.chains) chains.push_back(to_json(c));
  return with_schema({{"dim", r.dim},
                      {"t", real_to_json(r.t)},
                      {"elements", elements},
                      {"chains", chains},
                      {"dominated", r.dominated},
                      {"limit_sum_h", real_to_json(r.limit_sum_h)},
                      {"limit_sum_hhat", real_to_json(r.limit_sum_hhat)},
                      {"limit_bound", real_to_json(r.limit_bound)},
                      {"final_sum_h", real_to_json(r.final_sum_h)},
                      {"final_sum_hhat", real_to_json(r.final_sum_hhat)},
                      {"theta_clash", real_to_json(r.theta_clash)},
                      {"theta_gap", real_to_json(r.theta_gap)},
                      {"envelope_tail", real_to_json(r.envelope_tail)},
                      {"max_norm", r.max_norm}});
}

Json to_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["lattice"] = c.lattice;
  j["t"] = c.t;
  j["secrecy_y"] = c.secrecy_y ? Json(*c.secrecy_y) : Json(nullptr);
  j["identity_suite"] = c.identity_suite;
  j["gap"] = c.gap;
  j["functional_equation"] = c.functional_equation;
  j["n"] = c.n;
  j["dictionary"] = c.dictionary;
  j["dictionary_size"] = c.dictionary_size;
  j["max_norm"] = c.max_norm;
  j["shells"] = c.shells;
  j["tolerance"] = c.tolerance;
  j["coefficient_bound"] = c.coefficient_bound ? Json(*c.coefficient_bound) : Json(nullptr);
  j["seeds"] = c.seeds;
  j["audit_kind"] = c.audit_kind;
  j["certificates"] = c.certificates;
  j["gaussian_t"] = c.gaussian_t ? Json(*c.gaussian_t) : Json(nullptr);
  j["audit_e8"] = c.audit_e8;
  j["allow_violated"] = c.allow_violated;
  j["pretty"] = c.pretty;
  j["output"] = c.output;
  j["budget"] = c.budget;
  return with_schema(j);
}

RunConfig run_config_from_json(const Json& j) {
  check_schema(j, "config");
  static const std::set<std::string> known = {
      "schema",     "command",  "lattice",      "t",          "secrecy_y",      "identity_suite",
      "gap",        "functional_equation",      "n",          "dictionary",     "dictionary_size",
      "max_norm",   "shells",   "tolerance",    "coefficient_bound",            "seeds",
      "audit_kind", "certificates",             "gaussian_t", "audit_e8",       "allow_violated",
      "pretty",     "output",   "budget"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw ConfigError("config: unknown key \"" + it.key() + "\"");
  RunConfig c;
  try {
    c.command = j.value("command", c.command);
    c.lattice = j.value("lattice", c.lattice);
    if (j.contains("t")) c.t = j["t"].is_array() ? j["t"].get<std::vector<double>>() : std::vector<double>{j["t"].get<double>()};
    if (j.contains("secrecy_y") && !j["secrecy_y"].is_null()) c.secrecy_y = j["secrecy_y"].get<double>();
    c.identity_suite = j.value("identity_suite", c.identity_suite);
    c.gap = j.value("gap", c.gap);
    c.functional_equation = j.value("functional_equation", c.functional_equation);
    c.n = j.value("n", c.n);
    c.dictionary = j.value("dictionary", c.dictionary);
    c.dictionary_size = j.value("dictionary_size", c.dictionary_size);
    c.max_norm = j.value("max_norm", c.max_norm);
    c.shells = j.value("shells", c.shells);
    c.tolerance = j.value("tolerance", c.tolerance);
    if (j.contains("coefficient_bound"))
      c.coefficient_bound = j["coefficient_bound"].is_null() ? std::nullopt
                                                             : std::optional<double>(j["coefficient_bound"].get<double>());
    c.seeds = j.value("seeds", c.seeds);
    c.audit_kind = j.value("audit_kind", c.audit_kind);
    c.certificates = j.value("certificates", c.certificates);
    if (j.contains("gaussian_t") && !j["gaussian_t"].is_null()) c.gaussian_t = j["gaussian_t"].get<double>();
    c.audit_e8 = j.value("audit_e8", c.audit_e8);
    c.allow_violated = j.value("allow_violated", c.allow_violated);
    c.pretty = j.value("pretty", c.pretty);
    c.output = j.value("output", c.output);
    c.budget = j.value("budget", c.budget);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace thetacert
