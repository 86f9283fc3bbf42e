#pragma once

#include "thetacert/certificate_lp.hpp"
#include "thetacert/gaussian_combo.hpp"
#include "thetacert/lattice.hpp"
#include "thetacert/poisson.hpp"
#include "thetacert/rotation.hpp"
#include "thetacert/saturation.hpp"
#include "thetacert/shells.hpp"
#include "thetacert/theta.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace thetacert {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "v1";

// Reals are written as JSON numbers (double). Readers also accept decimal
// strings, parsed at full Real precision. Every object written here carries
// "schema": "v1"; readers reject any other version.

Json real_to_json(const Real& x);
Real real_from_json(const Json& j);

Json to_json(const Lattice& lattice);
Lattice lattice_from_json(const Json& j);

Json to_json(const ShellSeries& shells);
ShellSeries shells_from_json(const Json& j);

Json to_json(const GaussianCombo& h);
GaussianCombo combo_from_json(const Json& j);

Json to_json(const RotationMatrix& u);

Json to_json(const LPProblem& p);
LPProblem problem_from_json(const Json& j);

Json to_json(const LPSolution& s);
LPSolution solution_from_json(const Json& j);

Json to_json(const ThetaValue& v);
Json to_json(const IdentityReport& r);
Json to_json(const PoissonReport& r);
Json to_json(const NonCertificateReport& r);
Json to_json(const SaturationReport& r);
Json to_json(const CollapseReport& r);
Json to_json(const GradedReport& r);
Json to_json(const SequenceReport& r);

/// Everything one CLI invocation needs. Parsed configs re-serialize to the
/// same canonical JSON.
struct RunConfig {
  std::string command;  ///< theta, lattice, lp, audit, poisson
  std::string lattice;  ///< named lattice, e.g. "E8+Z4", or a path to lattice JSON
  std::vector<double> t;
  std::optional<double> secrecy_y;
  bool identity_suite = false;
  bool gap = false;
  bool functional_equation = false;
  std::int64_t n = 8;
  /// Empty means the default geometric dictionary.
  std::vector<double> dictionary;
  std::int64_t dictionary_size = 40;
  std::int64_t max_norm = 0;  ///< shell count M; 0 means none requested
  std::int64_t shells = 0;    ///< LP shells M_c; 0 means chosen by the tail rule
  double tolerance = 1e-9;
  std::optional<double> coefficient_bound = 1e4;
  std::vector<std::uint64_t> seeds;
  std::string audit_kind = "chain";  ///< chain, e8, graded, sequence
  std::vector<std::string> certificates;
  std::optional<double> gaussian_t;  ///< use g_t as the certificate
  bool audit_e8 = false;
  bool allow_violated = false;
  bool pretty = false;
  std::string output;
  std::uint64_t budget = kDefaultNodeBudget;
};

Json to_json(const RunConfig& c);
/// Missing keys take their defaults; unknown keys are a ConfigError.
RunConfig run_config_from_json(const Json& j);

/// Reads and parses a JSON file; ConfigError on failure.
Json read_json_file(const std::string& path);

}  // namespace thetacert
