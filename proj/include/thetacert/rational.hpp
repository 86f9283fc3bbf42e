#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

namespace thetacert {

using Rational = mpq_class;
using Integer = mpz_class;

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RationalMatrix transpose() const;
  RationalMatrix operator*(const RationalMatrix& rhs) const;
  bool operator==(const RationalMatrix& rhs) const;

  bool is_symmetric() const;
  bool all_integers() const;

  /// Exact determinant by fraction-preserving Gaussian elimination.
  Rational determinant() const;

  /// Exact inverse; nullopt when singular.
  std::optional<RationalMatrix> inverse() const;

  /// Pivots of the symmetric LDL^T factorization; nullopt once a pivot
  /// vanishes. The matrix is positive definite iff every pivot is > 0.
  std::optional<std::vector<Rational>> ldl_pivots() const;

  /// Block-diagonal composition.
  static RationalMatrix block_diagonal(const std::vector<RationalMatrix>& blocks);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace thetacert
