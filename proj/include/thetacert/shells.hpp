#pragma once

#include "thetacert/lattice.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace thetacert {

/// Representation counts r(m) = #{x in L : |x|^2 = m} for 0 <= m <= max_norm.
struct ShellSeries {
  std::size_t dim = 0;
  std::int64_t max_norm = 0;
  std::vector<std::int64_t> counts;
  std::string lattice_label;

  /// Throws std::out_of_range beyond max_norm.
  std::int64_t count(std::int64_t m) const;
  std::int64_t cumulative(std::int64_t m) const;
  ShellSeries truncated(std::int64_t m) const;
};

inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;

enum class EnumerationMethod {
  Auto,              ///< coset convolution when a rational basis allows it
  FinckePohst,       ///< recursive coordinate bounding over the Gram matrix
  CosetConvolution,  ///< cosets of a scaled cubic sublattice, 1-D series convolved
};

struct EnumerationOptions {
  std::uint64_t node_budget = kDefaultNodeBudget;
  EnumerationMethod method = EnumerationMethod::Auto;
  /// Largest index [L : K] accepted for the coset route under Auto.
  std::uint64_t max_coset_index = 1u << 20;
};

/// Exact shell counts of an integral lattice up to squared norm max_norm.
/// Throws ConfigError for non-integral input or negative max_norm and
/// BudgetExceeded when the work would exceed options.node_budget.
ShellSeries enumerate_shells(const Lattice& lattice, std::int64_t max_norm,
                             const EnumerationOptions& options = {});

/// Lattice points with |x|^2 <= max_norm, as basis coefficient vectors with
/// their exact squared norms. Fincke-Pohst order; deterministic.
struct LatticeVectors {
  std::vector<std::vector<std::int64_t>> coefficients;
  std::vector<std::int64_t> norms;
};

LatticeVectors enumerate_vectors(const Lattice& lattice, std::int64_t max_norm,
                                 std::uint64_t node_budget = kDefaultNodeBudget);

/// Ambient coordinates of basis coefficient vectors, in double precision.
/// Uses the rational basis when present and the Cholesky factor otherwise.
std::vector<std::vector<double>> embed(const Lattice& lattice, const LatticeVectors& vectors);

}  // namespace thetacert
