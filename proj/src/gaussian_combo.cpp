#include "thetacert/gaussian_combo.hpp"

#include "thetacert/errors.hpp"

#include <utility>

namespace thetacert {

GaussianCombo::GaussianCombo(std::size_t dim, std::vector<GaussianTerm> terms)
    : dim_(dim), terms_(std::move(terms)) {
  if (dim_ == 0) throw ConfigError("GaussianCombo dimension must be >= 1");
  for (const auto& term : terms_) {
    if (!(term.width > 0) || !boost::multiprecision::isfinite(term.width))
      throw ConfigError("GaussianCombo widths must be finite and > 0");
    if (!boost::multiprecision::isfinite(term.coeff))
      throw ConfigError("GaussianCombo coefficients must be finite");
  }
}

GaussianCombo GaussianCombo::gaussian(std::size_t dim, const Real& t, const Real& coeff) {
  return GaussianCombo(dim, {{coeff, t}});
}

Real GaussianCombo::eval(const Real& r2) const {
  if (r2 < 0) throw DomainError("eval requires a nonnegative squared radius");
  Real sum = 0;
  for (const auto& term : terms_) sum += term.coeff * exp(-term.width * r2);
  return sum;
}

Real fourier_weight(std::size_t dim, const Real& width) {
  return pow(pi_real() / width, Real(dim) / 2);
}

GaussianCombo GaussianCombo::fourier() const {
  const Real pi2 = pi_real() * pi_real();
  std::vector<GaussianTerm> out;
  out.reserve(terms_.size());
  for (const auto& term : terms_)
    out.push_back({term.coeff * fourier_weight(dim_, term.width), pi2 / term.width});
  return GaussianCombo(dim_, std::move(out));
}

Real GaussianCombo::min_width() const {
  if (terms_.empty()) return std::numeric_limits<Real>::infinity();
  Real w = terms_.front().width;
  for (const auto& term : terms_) w = term.width < w ? term.width : w;
  return w;
}

Real GaussianCombo::abs_coeff_sum() const {
  Real s = 0;
  for (const auto& term : terms_) s += abs(term.coeff);
  return s;
}

GaussianCombo GaussianCombo::operator+(const GaussianCombo& rhs) const {
  if (rhs.dim_ != dim_) throw ConfigError("GaussianCombo dimension mismatch");
  auto terms = terms_;
  terms.insert(terms.end(), rhs.terms_.begin(), rhs.terms_.end());
  return GaussianCombo(dim_, std::move(terms));
}

GaussianCombo GaussianCombo::operator-(const GaussianCombo& rhs) const { return *this + rhs.scaled(-1); }

GaussianCombo GaussianCombo::scaled(const Real& factor) const {
  auto terms = terms_;
  for (auto& term : terms) term.coeff *= factor;
  return GaussianCombo(dim_, std::move(terms));
}

}  // namespace thetacert
