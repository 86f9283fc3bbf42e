#pragma once

#include "thetacert/rational.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace thetacert {

/// A full-rank lattice in R^n held exactly.
///
/// The basis matrix stores basis vectors as columns, so gram = basis^T basis.
/// A lattice built from a Gram matrix alone has no rational embedding and
/// carries no basis; everything except coset-based shell counting works from
/// the Gram matrix.
class Lattice {
 public:
  /// Throws ConfigError if the basis is not square or is singular.
  static Lattice from_basis(RationalMatrix basis, std::string name = {});
  /// Throws ConfigError unless gram is symmetric positive definite.
  static Lattice from_gram(RationalMatrix gram, std::string name = {});

  std::size_t dim() const { return gram_.rows(); }
  const std::optional<RationalMatrix>& basis() const { return basis_; }
  const RationalMatrix& gram() const { return gram_; }
  const std::string& name() const { return name_; }

  Rational gram_determinant() const { return gram_.determinant(); }
  /// sqrt(det gram), rounded to double.
  double covolume() const;

 private:
  Lattice(std::optional<RationalMatrix> basis, RationalMatrix gram, std::string name);

  std::optional<RationalMatrix> basis_;
  RationalMatrix gram_;
  std::string name_;
};

Lattice make_zn(std::size_t n);
Lattice make_dn(std::size_t n);
Lattice make_e8();
/// Orthogonal direct sum; blocks occupy consecutive coordinates.
Lattice direct_sum(std::span<const Lattice> parts);

/// Parses names such as "Z8", "Zn(8)", "D4", "Dn(4)", "E8" and direct sums
/// joined by '+', e.g. "E8+Z4". "Z0" is accepted only as a summand and
/// contributes nothing.
Lattice make_named(std::string_view name);

bool is_integral(const Lattice& lattice);
bool is_unimodular(const Lattice& lattice);
/// Integral with every diagonal Gram entry even.
bool is_even(const Lattice& lattice);

enum class StabilityCertificate { CertifiedStable, NotApplicable };

/// Integral + unimodular is a sufficient condition for stability: every
/// sublattice has an integer Gram matrix with positive determinant. Anything
/// else is reported NotApplicable, not "unstable".
StabilityCertificate stability_certificate(const Lattice& lattice);

std::string_view to_string(StabilityCertificate c);

}  // namespace thetacert
