#include "thetacert/lattice.hpp"

#include "thetacert/errors.hpp"

#include <cctype>
#include <cmath>
#include <string>
#include <utility>

namespace thetacert {

Lattice::Lattice(std::optional<RationalMatrix> basis, RationalMatrix gram, std::string name)
    : basis_(std::move(basis)), gram_(std::move(gram)), name_(std::move(name)) {}

Lattice Lattice::from_basis(RationalMatrix basis, std::string name) {
  if (!basis.is_square() || basis.rows() == 0)
    throw ConfigError("lattice basis must be a nonempty square matrix");
  if (sgn(basis.determinant()) == 0) throw ConfigError("lattice basis is singular");
  RationalMatrix gram = basis.transpose() * basis;
  return Lattice(std::move(basis), std::move(gram), std::move(name));
}

Lattice Lattice::from_gram(RationalMatrix gram, std::string name) {
  if (!gram.is_square() || gram.rows() == 0)
    throw ConfigError("Gram matrix must be a nonempty square matrix");
  if (!gram.is_symmetric()) throw ConfigError("Gram matrix is not symmetric");
  auto pivots = gram.ldl_pivots();
  if (!pivots) throw ConfigError("Gram matrix is not positive definite");
  for (const auto& p : *pivots)
    if (sgn(p) <= 0) throw ConfigError("Gram matrix is not positive definite");
  return Lattice(std::nullopt, std::move(gram), std::move(name));
}

double Lattice::covolume() const { return std::sqrt(gram_determinant().get_d()); }

Lattice make_zn(std::size_t n) {
  if (n == 0) throw ConfigError("Zn requires n >= 1");
  return Lattice::from_basis(RationalMatrix::identity(n), "Z" + std::to_string(n));
}

Lattice make_dn(std::size_t n) {
  if (n == 0) throw ConfigError("Dn requires n >= 1");
  // Columns 2e_1, e_2 - e_1, ..., e_n - e_{n-1}: all integer vectors of even sum.
  RationalMatrix b(n, n);
  b(0, 0) = 2;
  for (std::size_t j = 1; j < n; ++j) {
    b(j, j) = 1;
    b(j - 1, j) = -1;
  }
  return Lattice::from_basis(std::move(b), "D" + std::to_string(n));
}

Lattice make_e8() {
  // Simple roots in the even coordinate system. The first root is a glue
  // vector of D8 + (1/2, ..., 1/2); the rest lie in D8.
  RationalMatrix b(8, 8);
  const Rational half(1, 2);
  for (std::size_t i = 0; i < 8; ++i) b(i, 0) = (i == 0 || i == 7) ? half : Rational(-half);
  b(0, 1) = 1;
  b(1, 1) = 1;
  for (std::size_t j = 2; j < 8; ++j) {
    b(j - 1, j) = 1;
    b(j - 2, j) = -1;
  }
  return Lattice::from_basis(std::move(b), "E8");
}

Lattice direct_sum(std::span<const Lattice> parts) {
  if (parts.empty()) throw ConfigError("direct_sum requires at least one summand");
  std::vector<RationalMatrix> grams;
  std::vector<RationalMatrix> bases;
  bool have_bases = true;
  std::string name;
  for (const auto& p : parts) {
    grams.push_back(p.gram());
    if (p.basis())
      bases.push_back(*p.basis());
    else
      have_bases = false;
    if (!name.empty()) name += "+";
    name += p.name().empty() ? "L" + std::to_string(p.dim()) : p.name();
  }
  if (have_bases) return Lattice::from_basis(RationalMatrix::block_diagonal(bases), name);
  return Lattice::from_gram(RationalMatrix::block_diagonal(grams), name);
}

namespace {

std::string strip(std::string_view s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
  return out;
}

// Splits on the separator at parenthesis depth zero.
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::size_t parse_dim(const std::string& s, const std::string& whole) {
  if (s.empty()) throw ConfigError("missing dimension in lattice name '" + whole + "'");
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw ConfigError("bad dimension in lattice name '" + whole + "'");
  return static_cast<std::size_t>(std::stoul(s));
}

// Returns nullopt for the zero-dimensional summand Z0.
std::optional<Lattice> parse_atom(const std::string& atom) {
  if (atom == "E8") return make_e8();
  auto family = [&](const std::string& prefix) -> std::optional<std::string> {
    if (atom.rfind(prefix + "n(", 0) == 0 && atom.back() == ')')
      return atom.substr(prefix.size() + 2, atom.size() - prefix.size() - 3);
    if (atom.rfind(prefix + "^", 0) == 0) return atom.substr(prefix.size() + 1);
    if (atom.rfind(prefix, 0) == 0) return atom.substr(prefix.size());
    return std::nullopt;
  };
  if (auto d = family("Z")) {
    std::size_t n = parse_dim(*d, atom);
    if (n == 0) return std::nullopt;
    return make_zn(n);
  }
  if (auto d = family("D")) {
    std::size_t n = parse_dim(*d, atom);
    if (n == 0) throw ConfigError("Dn requires n >= 1");
    return make_dn(n);
  }
  throw ConfigError("unknown lattice name '" + atom + "'");
}

}  // namespace

Lattice make_named(std::string_view name) {
  std::string s = strip(name);
  if (s.rfind("direct_sum(", 0) == 0 && s.back() == ')') s = s.substr(11, s.size() - 12);
  auto pieces = split_top(s, s.find('+') != std::string::npos ? '+' : ',');
  std::vector<Lattice> parts;
  for (const auto& piece : pieces) {
    if (piece.empty()) throw ConfigError("empty summand in lattice name '" + std::string(name) + "'");
    if (piece.rfind("direct_sum(", 0) == 0) {
      parts.push_back(make_named(piece));
      continue;
    }
    if (auto l = parse_atom(piece)) parts.push_back(std::move(*l));
  }
  if (parts.empty()) throw ConfigError("lattice '" + std::string(name) + "' has dimension 0");
  if (parts.size() == 1) return std::move(parts.front());
  return direct_sum(parts);
}

bool is_integral(const Lattice& lattice) { return lattice.gram().all_integers(); }

bool is_unimodular(const Lattice& lattice) { return lattice.gram_determinant() == 1; }

bool is_even(const Lattice& lattice) {
  if (!is_integral(lattice)) return false;
  for (std::size_t i = 0; i < lattice.dim(); ++i)
    if (mpz_odd_p(lattice.gram()(i, i).get_num_mpz_t())) return false;
  return true;
}

StabilityCertificate stability_certificate(const Lattice& lattice) {
  return is_integral(lattice) && is_unimodular(lattice) ? StabilityCertificate::CertifiedStable
                                                        : StabilityCertificate::NotApplicable;
}

std::string_view to_string(StabilityCertificate c) {
  return c == StabilityCertificate::CertifiedStable ? "CertifiedStable" : "NotApplicable";
}

}  // namespace thetacert
