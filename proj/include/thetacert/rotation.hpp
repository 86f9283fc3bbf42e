#pragma once

#include "thetacert/lattice.hpp"
#include "thetacert/shells.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace thetacert {

/// Orthogonal n x n matrix in double precision, row-major.
struct RotationMatrix {
  std::size_t dim = 0;
  std::vector<double> entries;
  std::uint64_t seed = 0;

  double operator()(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }
  std::vector<double> apply(std::span<const double> x) const;
  /// max |U^T U - I|.
  double orthogonality_error() const;
};

/// Haar-distributed element of O(n): QR of a seeded Gaussian matrix with the
/// signs of R's diagonal folded into Q. Reproducible from the seed.
RotationMatrix random_rotation(std::size_t n, std::uint64_t seed);

/// A reflection U with U * from = to. Requires |from| == |to| (up to 1e-9
/// relative) and both nonzero; throws DomainError otherwise.
RotationMatrix transport_rotation(std::span<const double> from, std::span<const double> to);

/// Lexicographically smallest (a, b, c, d) with a >= b >= c >= d >= 0 and
/// a^2 + b^2 + c^2 + d^2 = m.
std::array<std::int64_t, 4> four_squares(std::int64_t m);

/// The integer point (a, b, c, d, 0, ..., 0) of Z^n with squared norm m, and
/// a rotation carrying it onto x. Requires n >= 4 and |x|^2 within 1e-9 of a
/// positive integer.
struct ShellTransport {
  std::vector<std::int64_t> lattice_point;
  RotationMatrix rotation;
};
ShellTransport transport_to_integer_point(std::span<const double> x);

/// U * L for an exact parent lattice. Not exact itself: shells are read off
/// the parent's enumerated points after rotation, never re-enumerated.
class RotatedLattice {
 public:
  RotatedLattice(Lattice parent, RotationMatrix rotation);

  const Lattice& parent() const { return parent_; }
  const RotationMatrix& rotation() const { return rotation_; }
  bool exact() const { return false; }

  /// Rotated basis (columns), row-major.
  std::vector<double> basis() const;
  /// Gram matrix of the rotated basis, row-major.
  std::vector<double> gram() const;

  /// Rotated lattice points with |x|^2 <= max_norm.
  std::vector<std::vector<double>> points(std::int64_t max_norm,
                                          std::uint64_t node_budget = kDefaultNodeBudget) const;

  /// Shell counts from rotated points binned by rounded squared norm. Throws
  /// std::logic_error if a norm drifts more than 1e-9 from an integer.
  ShellSeries shells(std::int64_t max_norm, std::uint64_t node_budget = kDefaultNodeBudget) const;

 private:
  Lattice parent_;
  RotationMatrix rotation_;
};

}  // namespace thetacert
