#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "thetacert/certificate_lp.hpp"
#include "thetacert/cli.hpp"
#include "thetacert/errors.hpp"
#include "thetacert/json_io.hpp"
#include "thetacert/lattice.hpp"
#include "thetacert/poisson.hpp"
#include "thetacert/rotation.hpp"
#include "thetacert/saturation.hpp"
#include "thetacert/shells.hpp"
#include "thetacert/theta.hpp"

namespace py = pybind11;
using namespace thetacert;

namespace {

// Structured results cross the boundary as JSON text; the Python side parses them.
std::string dump(const Json& j) { return j.dump(); }

std::pair<double, double> theta_pair(const ThetaValue& v) { return {to_double(v.value), to_double(v.abs_error)}; }

GaussianCombo combo_arg(const std::string& text) { return combo_from_json(Json::parse(text)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lattice theta series, Poisson-certificate LPs and saturation audits";

  static py::exception<BudgetExceeded> budget_exc(m, "BudgetExceeded", PyExc_RuntimeError);
  static py::exception<InsufficientShells> shells_exc(m, "InsufficientShells", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const BudgetExceeded& e) {
      budget_exc(e.what());
    } catch (const InsufficientShells& e) {
      shells_exc(e.what());
    } catch (const nlohmann::json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("lattice_json", [](const std::string& name) { return dump(to_json(make_named(name))); }, py::arg("name"));
  m.def("lattice_info", [](const std::string& name) {
    const Lattice l = resolve_lattice(name);
    py::dict d;
    d["dim"] = l.dim();
    d["integral"] = is_integral(l);
    d["unimodular"] = is_unimodular(l);
    d["even"] = is_even(l);
    d["stability"] = std::string(to_string(stability_certificate(l)));
    return d;
  }, py::arg("name"));
  m.def("shell_counts", [](const std::string& name, std::int64_t max_norm, std::uint64_t budget) {
    EnumerationOptions o;
    o.node_budget = budget;
    return enumerate_shells(resolve_lattice(name), max_norm, o).counts;
  }, py::arg("name"), py::arg("max_norm"), py::arg("budget") = kDefaultNodeBudget);

  m.def("jacobi_theta", [](int kind, double t) { return theta_pair(jacobi_theta(kind, Real(t))); }, py::arg("kind"),
        py::arg("t"));
  m.def("eisenstein_e4", [](double t) { return theta_pair(eisenstein_e4(Real(t))); }, py::arg("t"));
  m.def("sigma3", &sigma3, py::arg("m"));
  m.def("lattice_theta", [](const std::string& name, double t, double tolerance) {
    return theta_pair(lattice_theta(resolve_lattice(name), Real(t), Real(tolerance)));
  }, py::arg("name"), py::arg("t"), py::arg("tolerance") = 1e-20);
  m.def("identity_suite", [](double t) { return dump(to_json(identity_suite(Real(t)))); }, py::arg("t"));
  m.def("functional_equation_residual", [](const std::string& name, double t) {
    return to_double(functional_equation_residual(resolve_lattice(name), Real(t)));
  }, py::arg("name"), py::arg("t"));
  m.def("secrecy_function", [](const std::string& name, double y) {
    return to_double(secrecy_function(resolve_lattice(name), Real(y)));
  }, py::arg("name"), py::arg("y"));

  m.def("poisson_check", [](const std::string& combo, const std::string& name, double tolerance) {
    return dump(to_json(poisson_check(combo_arg(combo), resolve_lattice(name), Real(tolerance))));
  }, py::arg("combo"), py::arg("lattice"), py::arg("tolerance") = 1e-9);
  m.def("gaussian_combo", [](std::size_t dim, double t) { return dump(to_json(GaussianCombo::gaussian(dim, Real(t)))); },
        py::arg("dim"), py::arg("t"));

  m.def("default_dictionary", [](double t, std::size_t count) {
    std::vector<double> out;
    for (const auto& w : default_dictionary(Real(t), count)) out.push_back(to_double(w));
    return out;
  }, py::arg("t"), py::arg("count") = 40);
  m.def("solve_lp", [](std::size_t n, double t, const std::vector<double>& widths, std::int64_t shells,
                       std::optional<double> coefficient_bound, double tail) {
    std::vector<Real> w;
    for (double x : widths) w.emplace_back(x);
    if (w.empty()) w = default_dictionary(Real(t));
    if (shells <= 0) shells = shells_for_tail(n, w, Real(coefficient_bound.value_or(1e4)), Real(tail));
    LPProblem p = build_lp(n, Real(t), w, shells);
    if (coefficient_bound) p.coefficient_bound = Real(*coefficient_bound);
    else p.coefficient_bound.reset();
    LPSolution s;
    {
      py::gil_scoped_release release;
      s = solve_lp(p);
    }
    return std::make_pair(dump(to_json(p)), dump(to_json(s)));
  }, py::arg("n"), py::arg("t"), py::arg("widths") = std::vector<double>{}, py::arg("shells") = 0,
     py::arg("coefficient_bound") = 1e4, py::arg("tail") = 1e-9);
  m.def("verify_solution", [](const std::string& problem, const std::string& solution, const std::string& name) {
    return dump(to_json(verify_solution(problem_from_json(Json::parse(problem)), solution_from_json(Json::parse(solution)),
                                        resolve_lattice(name))));
  }, py::arg("problem"), py::arg("solution"), py::arg("lattice"));

  m.def("chain_audit", [](const std::string& combo, const std::string& name, double t,
                          std::optional<std::uint64_t> seed) {
    const Lattice l = resolve_lattice(name);
    std::optional<RotationMatrix> u;
    if (seed) u = random_rotation(l.dim(), *seed);
    return dump(to_json(chain_audit(combo_arg(combo), l, Real(t), u)));
  }, py::arg("combo"), py::arg("lattice"), py::arg("t"), py::arg("seed") = py::none());
  m.def("e8_collapse_audit", [](const std::string& combo, std::size_t n, double t) {
    return dump(to_json(e8_collapse_audit(combo_arg(combo), n, Real(t))));
  }, py::arg("combo"), py::arg("n"), py::arg("t"));

  m.def("four_squares", &four_squares, py::arg("m"));
  m.def("random_rotation", [](std::size_t n, std::uint64_t seed) { return random_rotation(n, seed).entries; },
        py::arg("n"), py::arg("seed"));

  m.def("run_command", [](const std::string& config) {
    const CommandResult r = run_command(run_config_from_json(Json::parse(config)));
    return std::make_pair(dump(r.report), r.exit_code);
  }, py::arg("config"));
}
