#include "thetacert/cli.hpp"
#include "thetacert/errors.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace thetacert;

namespace {

std::vector<double> parse_dictionary(const std::string& spec) {
  if (spec.empty() || spec == "default") return {};
  std::vector<double> widths;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      widths.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("bad dictionary width \"" + item + "\"");
    }
  }
  return widths;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Theta-series and Poisson-certificate verification toolkit"};
  app.require_subcommand(0, 1);

  RunConfig cfg;
  std::string config_path, dict = "default", shells = "auto", bound = "1e4";
  std::uint64_t budget = 0;
  bool print_config = false;
  std::optional<double> secrecy, gaussian;

  app.add_option("--config", config_path, "JSON run configuration");
  app.add_flag("--pretty", cfg.pretty, "human-readable output instead of JSON");
  app.add_option("--output", cfg.output, "write the report to this file");
  app.add_option("--budget", budget, "enumeration node budget (default: THETA_CERT_BUDGET or 1e8)");
  app.add_flag("--print-config", print_config, "print the canonical run configuration and exit");

  auto* theta = app.add_subcommand("theta", "theta values and identity checks");
  theta->add_option("--t", cfg.t, "evaluation points t > 0");
  theta->add_option("--lattice", cfg.lattice, "lattice name or JSON file");
  theta->add_flag("--identity-suite", cfg.identity_suite, "residuals of the classical identities");
  theta->add_flag("--gap", cfg.gap, "theta_2^4 theta_4^4 and Theta_Z8");
  theta->add_flag("--functional-equation", cfg.functional_equation, "self-dual functional equation residual");
  theta->add_option("--secrecy", secrecy, "secrecy function at y");

  auto* lattice = app.add_subcommand("lattice", "lattice properties and shell counts");
  lattice->add_option("--lattice", cfg.lattice, "lattice name or JSON file")->required();
  lattice->add_option("--shells", cfg.max_norm, "count shells up to this squared norm");
  lattice->add_option("--seed", cfg.seeds, "also rotate by random_rotation(n, seed)");

  auto* lp = app.add_subcommand("lp", "solve and verify the certificate LP");
  lp->add_option("--n", cfg.n, "dimension");
  lp->add_option("--t", cfg.t, "Gaussian parameter");
  lp->add_option("--dict", dict, "\"default\" or comma-separated widths");
  lp->add_option("--dict-size", cfg.dictionary_size, "number of default widths");
  lp->add_option("--shells", shells, "constrained shells M_c, or \"auto\"");
  lp->add_option("--bound", bound, "coefficient box, or \"none\"");
  lp->add_option("--tolerance", cfg.tolerance, "truncation tail target");
  lp->add_option("--lattice", cfg.lattice, "lattice for verification (default Z^n)");
  lp->add_flag("--audit-e8", cfg.audit_e8, "append the E8 collapse audit");

  auto* audit = app.add_subcommand("audit", "saturation audits of certificates");
  audit->add_option("--kind", cfg.audit_kind, "chain, e8, graded, sequence or noncert");
  audit->add_option("--certificate", cfg.certificates, "certificate JSON files");
  audit->add_option("--gaussian", gaussian, "use the Gaussian g_t as a certificate");
  audit->add_option("--n", cfg.n, "dimension for --gaussian");
  audit->add_option("--t", cfg.t, "Gaussian parameter");
  audit->add_option("--lattice", cfg.lattice, "lattice for chain audits (default Z^n)");
  audit->add_option("--seed", cfg.seeds, "rotation seeds for chain audits");
  audit->add_option("--max-norm", cfg.max_norm, "shells for the noncert report");
  audit->add_flag("--allow-violated", cfg.allow_violated, "exit 0 even on Violated verdicts");

  auto* poisson = app.add_subcommand("poisson", "Poisson summation check");
  poisson->add_option("--certificate", cfg.certificates, "certificate JSON files");
  poisson->add_option("--gaussian", gaussian, "use the Gaussian g_t");
  poisson->add_option("--n", cfg.n, "dimension for --gaussian");
  poisson->add_option("--lattice", cfg.lattice, "self-dual lattice (default Z^n)");
  poisson->add_option("--tolerance", cfg.tolerance, "residual tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  try {
    if (!config_path.empty()) {
      const bool pretty = cfg.pretty;
      const std::string output = cfg.output;
      cfg = run_config_from_json(read_json_file(config_path));
      cfg.pretty = cfg.pretty || pretty;
      if (!output.empty()) cfg.output = output;
    } else {
      cfg.secrecy_y = secrecy;
      cfg.gaussian_t = gaussian;
      cfg.dictionary = parse_dictionary(dict);
      cfg.shells = shells == "auto" ? 0 : std::stoll(shells);
      cfg.coefficient_bound = bound == "none" ? std::nullopt : std::optional<double>(std::stod(bound));
    }
    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    if (cfg.command.empty()) throw ConfigError("no subcommand given");
    if (budget != 0) {
      cfg.budget = budget;
    } else if (const char* env = std::getenv("THETA_CERT_BUDGET")) {
      cfg.budget = std::stoull(env);
    }

    if (print_config) {
      std::cout << to_json(cfg).dump(2) << "\n";
      return kExitOk;
    }

    const CommandResult result = run_command(cfg);
    const std::string text = cfg.pretty ? pretty_print(result.report) : result.report.dump() + "\n";
    if (cfg.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(cfg.output);
      if (!out) throw ConfigError("cannot write " + cfg.output);
      out << text;
    }
    return result.exit_code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}
