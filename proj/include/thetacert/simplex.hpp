#pragma once

#include "thetacert/real.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <cstddef>
#include <string_view>
#include <vector>

namespace thetacert {

/// About 80 significant digits. The certificate LP mixes Gaussians of close
/// widths, whose basis matrices are too ill-conditioned for Real.
using HighReal = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<80, boost::multiprecision::allocate_stack>,
    boost::multiprecision::et_off>;

enum class RowSense { GreaterEqual, LessEqual, Equal };

/// min objective . x + offset  subject to  rows[i] . x (sense_i) rhs[i],
/// with x_j free when free_vars[j] is set and x_j >= 0 otherwise.
template <class T>
struct BasicDenseLP {
  std::size_t num_vars = 0;
  std::vector<T> objective;
  T offset = 0;
  std::vector<std::vector<T>> rows;
  std::vector<RowSense> senses;
  std::vector<T> rhs;
  std::vector<bool> free_vars;
};

enum class LPStatus { Optimal, Infeasible, Unbounded, IterLimit };

std::string_view to_string(LPStatus status);

struct SimplexOptions {
  std::size_t max_pivots = 200000;
  /// Reduced-cost and pivot-magnitude threshold.
  double tolerance = 1e-28;
  /// Phase-I objective above this means infeasible.
  double feasibility_tolerance = 1e-22;
  /// Consecutive degenerate pivots after which pricing falls back to
  /// Bland's rule until the objective moves again.
  std::size_t degenerate_streak = 50;
};

template <class T>
struct BasicSimplexResult {
  LPStatus status = LPStatus::IterLimit;
  std::vector<T> x;
  T objective = 0;
  /// Row multipliers of the original rows (>= 0 on GreaterEqual rows,
  /// <= 0 on LessEqual rows at an optimum). On Infeasible these are the
  /// phase-I multipliers, a Farkas certificate.
  std::vector<T> duals;
  T dual_objective = 0;
  T duality_gap = 0;
  /// Primal ray on Unbounded: feasible direction with objective . ray < 0.
  std::vector<T> ray;
  std::size_t pivots = 0;
};

/// Two-phase revised simplex with a fresh LU factorization of the basis at
/// every pivot. Dantzig pricing with lowest-index ties, switching to Bland's
/// rule on degenerate streaks; ratio-test ties go to the lowest basic
/// column. Deterministic.
template <class T>
BasicSimplexResult<T> solve_dense_lp(const BasicDenseLP<T>& lp, const SimplexOptions& options = {});

using DenseLP = BasicDenseLP<Real>;
using SimplexResult = BasicSimplexResult<Real>;

extern template BasicSimplexResult<Real> solve_dense_lp(const BasicDenseLP<Real>&, const SimplexOptions&);
extern template BasicSimplexResult<HighReal> solve_dense_lp(const BasicDenseLP<HighReal>&, const SimplexOptions&);

}  // namespace thetacert
