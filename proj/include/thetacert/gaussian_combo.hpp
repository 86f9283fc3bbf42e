#pragma once

#include "thetacert/real.hpp"

#include <cstddef>
#include <vector>

namespace thetacert {

struct GaussianTerm {
  Real coeff = 0;
  Real width = 1;
};

/// Radial function h(x) = sum_k c_k exp(-a_k |x|^2) on R^n.
///
/// Fourier transform convention: f^(xi) = int f(x) e^{-2 pi i <x, xi>} dx, so
/// each term maps to c_k (pi/a_k)^{n/2} exp(-pi^2 |xi|^2 / a_k). Terms are
/// kept in insertion order and never merged.
class GaussianCombo {
 public:
  /// Throws ConfigError for dim == 0 or a nonpositive / non-finite width.
  GaussianCombo(std::size_t dim, std::vector<GaussianTerm> terms);

  /// coeff * exp(-t |x|^2).
  static GaussianCombo gaussian(std::size_t dim, const Real& t, const Real& coeff = 1);

  std::size_t dim() const { return dim_; }
  const std::vector<GaussianTerm>& terms() const { return terms_; }

  /// h at squared radius r2 >= 0; throws DomainError for r2 < 0.
  Real eval(const Real& r2) const;
  Real at_origin() const { return eval(0); }

  GaussianCombo fourier() const;

  Real min_width() const;
  Real abs_coeff_sum() const;

  /// Term lists concatenated (with negated coefficients for subtraction).
  GaussianCombo operator+(const GaussianCombo& rhs) const;
  GaussianCombo operator-(const GaussianCombo& rhs) const;
  GaussianCombo scaled(const Real& factor) const;

 private:
  std::size_t dim_;
  std::vector<GaussianTerm> terms_;
};

/// (pi / a)^{n/2}.
Real fourier_weight(std::size_t dim, const Real& width);

}  // namespace thetacert
