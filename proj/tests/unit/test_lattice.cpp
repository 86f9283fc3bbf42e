#include <doctest.h>

#include "oracles.hpp"
#include "thetacert/errors.hpp"
#include "thetacert/lattice.hpp"
#include "thetacert/rotation.hpp"
#include "thetacert/shells.hpp"

#include <cmath>
#include <vector>

using namespace thetacert;

namespace {

std::vector<std::int64_t> counts_of(const Lattice& l, std::int64_t m, EnumerationMethod method = EnumerationMethod::Auto) {
  EnumerationOptions o;
  o.method = method;
  return enumerate_shells(l, m, o).counts;
}

Lattice diag_lattice(const Rational& a, const Rational& b) {
  RationalMatrix basis(2, 2);
  basis(0, 0) = a;
  basis(1, 1) = b;
  return Lattice::from_basis(basis);
}

}  // namespace

TEST_CASE("named lattices") {
  const Lattice z3 = make_named("Zn(3)");
  CHECK(z3.gram() == RationalMatrix::identity(3));

  const Lattice e8 = make_named("E8");
  CHECK(e8.gram().all_integers());
  for (std::size_t i = 0; i < 8; ++i) CHECK(Integer(e8.gram()(i, i).get_num()) % 2 == 0);
  CHECK(e8.gram_determinant() == 1);
  CHECK(is_even(e8));

  // glue-vector coordinates are halves
  bool has_half = false;
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j)
      if ((*e8.basis())(i, j).get_den() == 2) has_half = true;
  CHECK(has_half);

  const Lattice sum = make_named("direct_sum(E8,Zn(4))");
  CHECK(sum.dim() == 12);
  CHECK(sum.gram_determinant() == 1);
  CHECK(make_named("E8+Z4").gram() == sum.gram());

  CHECK_THROWS_AS(make_named("Q7"), ConfigError);
  CHECK_THROWS_AS(make_named("Zn(0)"), ConfigError);
  CHECK_THROWS_AS(make_zn(0), ConfigError);
  CHECK_THROWS_AS(make_named("direct_sum()"), ConfigError);
}

TEST_CASE("gram equals basis^T basis") {
  for (const char* name : {"Z5", "D6", "E8", "E8+D4"}) {
    const Lattice l = make_named(name);
    REQUIRE(l.basis());
    CHECK(l.basis()->transpose() * *l.basis() == l.gram());
  }
}

TEST_CASE("integrality and unimodularity") {
  CHECK(is_integral(make_zn(5)));
  CHECK(is_integral(make_e8()));

  const Rational r(141421, 100000);
  const Lattice approx = diag_lattice(r, r);
  CHECK_FALSE(is_integral(approx));
  CHECK(approx.gram()(0, 0) == Rational(19999899241, 10000000000));

  CHECK(is_unimodular(make_zn(8)));
  CHECK(is_unimodular(make_e8()));
  CHECK_FALSE(is_unimodular(make_dn(8)));
  CHECK(make_dn(8).gram_determinant() == 4);
}

TEST_CASE("stability certificate") {
  CHECK(stability_certificate(make_zn(8)) == StabilityCertificate::CertifiedStable);
  CHECK(stability_certificate(make_named("E8+Z4")) == StabilityCertificate::CertifiedStable);
  RationalMatrix g(2, 2);
  g(0, 0) = 2;
  g(1, 1) = Rational(1, 2);
  CHECK(stability_certificate(Lattice::from_gram(g)) == StabilityCertificate::NotApplicable);
  CHECK(stability_certificate(make_dn(4)) == StabilityCertificate::NotApplicable);
}

TEST_CASE("bad gram input") {
  RationalMatrix g(2, 2);
  g(0, 0) = 1;
  g(0, 1) = 2;
  g(1, 0) = 2;
  g(1, 1) = 1;
  CHECK_THROWS_AS(Lattice::from_gram(g), ConfigError);
  g(1, 0) = 0;
  CHECK_THROWS_AS(Lattice::from_gram(g), ConfigError);
}

TEST_CASE("shell counts at small norms") {
  const auto z8 = enumerate_shells(make_zn(8), 2);
  CHECK(z8.counts == std::vector<std::int64_t>{1, 16, 112});
  CHECK(z8.cumulative(2) == 129);

  const auto e8 = enumerate_shells(make_e8(), 6);
  CHECK(e8.count(1) == 0);
  CHECK(e8.count(2) == 240);
  CHECK(e8.cumulative(2) == 241);
  CHECK(e8.count(4) == 2160);
  CHECK(e8.count(6) == 6720);
  for (std::int64_t m : {2, 4, 6}) CHECK(e8.count(m) == 240 * oracle::sigma3(m / 2));
}

TEST_CASE("brute-force oracles") {
  const std::int64_t M = 10;
  for (std::size_t n = 1; n <= 6; ++n) {
    CAPTURE(n);
    CHECK(counts_of(make_zn(n), M) == oracle::zn_counts(n, M));
    CHECK(counts_of(make_zn(n), M) == oracle::coefficient_box_counts(make_zn(n), M));
  }
  for (std::size_t n = 2; n <= 6; ++n) {
    CAPTURE(n);
    CHECK(counts_of(make_dn(n), M) == oracle::dn_counts(n, M));
    CHECK(counts_of(make_dn(n), M) == oracle::coefficient_box_counts(make_dn(n), M));
  }
  CHECK(counts_of(make_e8(), 8) == oracle::e8_counts(8));
}

TEST_CASE("enumeration methods agree") {
  for (const char* name : {"E8", "D5+Z3", "E8+Z2", "D4"}) {
    CAPTURE(name);
    const Lattice l = make_named(name);
    CHECK(counts_of(l, 8, EnumerationMethod::FinckePohst) == counts_of(l, 8, EnumerationMethod::CosetConvolution));
  }
  // gram-only input has no basis, so it must go through the recursive bound
  const Lattice gram_only = Lattice::from_gram(make_e8().gram());
  CHECK_FALSE(gram_only.basis());
  CHECK(counts_of(gram_only, 8) == counts_of(make_e8(), 8));
  CHECK_THROWS_AS(counts_of(gram_only, 4, EnumerationMethod::CosetConvolution), ConfigError);
}

TEST_CASE("shell series invariants and convolution") {
  const auto e8 = enumerate_shells(make_e8(), 12).counts;
  const auto z4 = enumerate_shells(make_zn(4), 12).counts;
  const auto sum = enumerate_shells(make_named("E8+Z4"), 12).counts;
  for (std::size_t m = 0; m <= 12; ++m) {
    std::int64_t conv = 0;
    for (std::size_t j = 0; j <= m; ++j) conv += e8[j] * z4[m - j];
    CHECK(sum[m] == conv);
    if (m > 0) CHECK(sum[m] % 2 == 0);
    if (m % 2 == 1) CHECK(e8[m] == 0);
  }
  CHECK(sum[0] == 1);
}

TEST_CASE("enumeration errors") {
  const Rational r(141421, 100000);
  CHECK_THROWS_AS(enumerate_shells(diag_lattice(r, r), 3), ConfigError);
  CHECK_THROWS_AS(enumerate_shells(make_zn(3), -1), ConfigError);
  EnumerationOptions tiny;
  tiny.node_budget = 50;
  tiny.method = EnumerationMethod::FinckePohst;
  CHECK_THROWS_AS(enumerate_shells(make_e8(), 8, tiny), BudgetExceeded);
  tiny.method = EnumerationMethod::CosetConvolution;
  CHECK_THROWS_AS(enumerate_shells(make_e8(), 8, tiny), BudgetExceeded);
}

TEST_CASE("enumerate_vectors matches shell counts") {
  const Lattice l = make_named("D4+Z2");
  const auto vecs = enumerate_vectors(l, 5);
  const auto shells = enumerate_shells(l, 5);
  std::vector<std::int64_t> hist(6, 0);
  const auto pts = embed(l, vecs);
  REQUIRE(pts.size() == vecs.norms.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double r2 = 0;
    for (double v : pts[i]) r2 += v * v;
    CHECK(std::abs(r2 - static_cast<double>(vecs.norms[i])) < 1e-12);
    ++hist[static_cast<std::size_t>(vecs.norms[i])];
  }
  CHECK(hist == shells.counts);
}

TEST_CASE("four squares") {
  CHECK(four_squares(0) == std::array<std::int64_t, 4>{0, 0, 0, 0});
  CHECK(four_squares(7) == std::array<std::int64_t, 4>{2, 1, 1, 1});
  const auto r = four_squares(9999);
  CHECK(r[0] * r[0] + r[1] * r[1] + r[2] * r[2] + r[3] * r[3] == 9999);
  for (std::int64_t m = 0; m <= 2000; ++m) {
    CAPTURE(m);
    CHECK(four_squares(m) == oracle::four_squares_lex(m));
  }
  CHECK_THROWS_AS(four_squares(-1), DomainError);
}

TEST_CASE("random rotations") {
  CHECK(random_rotation(3, 42).orthogonality_error() <= 1e-12);
  const auto a = random_rotation(8, 7);
  const auto b = random_rotation(8, 7);
  CHECK(a.entries == b.entries);
  CHECK(a.entries != random_rotation(8, 8).entries);

  const RotatedLattice rz4(make_zn(4), random_rotation(4, 11));
  CHECK_FALSE(rz4.exact());
  const auto g = rz4.gram();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(g[i * 4 + j] - (i == j ? 1.0 : 0.0)) <= 1e-10);

  const RotatedLattice re8(make_e8(), random_rotation(8, 5));
  CHECK(re8.shells(6).counts == enumerate_shells(make_e8(), 6).counts);
  const auto vecs = enumerate_vectors(make_e8(), 4);
  const auto pts = embed(make_e8(), vecs);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto y = re8.rotation().apply(pts[i]);
    double r2 = 0;
    for (double v : y) r2 += v * v;
    CHECK(std::abs(r2 - static_cast<double>(vecs.norms[i])) <= 1e-9);
  }
}

TEST_CASE("shell transport to an integer point") {
  const auto u = random_rotation(6, 3);
  std::vector<double> x = {1, 2, 0, 1, 1, 1};  // norm 8
  x = u.apply(x);
  const auto tr = transport_to_integer_point(x);
  CHECK(tr.rotation.orthogonality_error() <= 1e-12);
  std::int64_t m = 0;
  std::vector<double> z;
  for (auto v : tr.lattice_point) {
    m += v * v;
    z.push_back(static_cast<double>(v));
  }
  CHECK(m == 8);
  const auto image = tr.rotation.apply(z);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(image[i] - x[i]) <= 1e-12);

  CHECK_THROWS_AS(transport_to_integer_point(std::vector<double>{1, 1, 1}), DomainError);
  CHECK_THROWS_AS(transport_to_integer_point(std::vector<double>{0.5, 0.5, 0.5, 0.6}), DomainError);
}
