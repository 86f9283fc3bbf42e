#include <doctest.h>

#include "oracles.hpp"
#include "thetacert/errors.hpp"
#include "thetacert/lattice.hpp"
#include "thetacert/theta.hpp"

using namespace thetacert;

namespace {

const Real kPi = boost::math::constants::pi<Real>();

double d(const Real& x) { return to_double(x); }

}  // namespace

TEST_CASE("nullwerte against naive two-sided sums") {
  for (double tv : {0.3, 0.5, 1.0, 3.14159, 5.0, 20.0}) {
    CAPTURE(tv);
    const Real t(tv);
    CHECK(d(abs(jacobi_theta(2, t).value - oracle::theta2(t))) <= 1e-25);
    CHECK(d(abs(jacobi_theta(3, t).value - oracle::theta3(t))) <= 1e-25);
    CHECK(d(abs(jacobi_theta(4, t).value - oracle::theta4(t))) <= 1e-25);
    for (int k : {2, 3, 4}) {
      CHECK(jacobi_theta(k, t).value > 0);
      CHECK(jacobi_theta(k, t).abs_error >= 0);
    }
  }
}

TEST_CASE("jacobi_theta examples") {
  const Real t20(20);
  CHECK(d(abs(jacobi_theta(3, t20).value - (1 + 2 * exp(-t20)))) <= 1e-8);
  CHECK(d(abs(jacobi_theta(4, Real(1)).value - oracle::theta4_product(Real(1)))) <= 1e-12);
  CHECK(d(abs(jacobi_theta(2, kPi).value - jacobi_theta(4, kPi).value)) <= 1e-10);
  CHECK_THROWS_AS(jacobi_theta(3, Real(0)), DomainError);
  CHECK_THROWS_AS(jacobi_theta(3, Real(-1)), DomainError);
  CHECK_THROWS_AS(jacobi_theta(5, Real(1)), DomainError);
}

TEST_CASE("Eisenstein E4") {
  for (std::int64_t m = 1; m <= 300; ++m) CHECK(sigma3(m) == oracle::sigma3(m));
  CHECK(240 * sigma3(1) == 240);
  CHECK(240 * sigma3(2) == 2160);

  // Leading coefficients read off the series numerically.
  const Real t(20);
  const Real big_q = exp(-2 * t);
  const Real c1 = (eisenstein_e4(t).value - 1) / big_q;
  CHECK(d(abs(c1 - 240)) <= 1e-10);
  // Q^2 is below the working precision at t = 20, so read c2 at t = 12.
  const Real t12(12);
  const Real q12 = exp(-2 * t12);
  const Real c2 = (eisenstein_e4(t12).value - 1 - 240 * q12) / (q12 * q12);
  CHECK(d(abs(c2 - 2160)) <= 1e-6);

  const Real th3 = oracle::theta3(kPi);
  CHECK(d(abs(eisenstein_e4(kPi).value - Real(0.75) * pow(th3, 8))) <= 1e-10);
  CHECK_THROWS_AS(eisenstein_e4(Real(0)), DomainError);
}

TEST_CASE("theta from shells") {
  const Real one(1);
  const auto z1 = lattice_theta(make_zn(1), one);
  const auto j3 = jacobi_theta(3, one);
  CHECK(d(abs(z1.value - j3.value)) <= d(z1.abs_error + j3.abs_error) + 1e-25);

  const auto e8 = lattice_theta(make_e8(), one);
  CHECK(d(abs(e8.value - eisenstein_e4(one).value)) <= 1e-10);

  CHECK(d(abs(lattice_theta(make_e8(), Real(1e9)).value - 1)) <= 1e-30);
  CHECK(d(abs(lattice_theta(make_zn(3), Real(200)).value - 1)) <= 1e-80);

  for (std::size_t n = 1; n <= 8; ++n) {
    const Real t(0.7);
    CHECK(d(abs(lattice_theta(make_zn(n), t).value - pow(oracle::theta3(t), static_cast<int>(n)))) <= 1e-18);
  }

  // monotone decreasing in t
  Real prev = lattice_theta(make_e8(), Real(0.3)).value;
  for (double tv : {0.5, 1.0, 2.0, 5.0}) {
    const Real cur = lattice_theta(make_e8(), Real(tv)).value;
    CHECK(cur < prev);
    prev = cur;
  }

  const auto shells = enumerate_shells(make_zn(4), 3);
  CHECK_THROWS_AS(theta_from_shells(shells, Real(0.3), Real(1e-20)), InsufficientShells);
}

TEST_CASE("identity suite") {
  for (double tv : {0.3, 0.5, 1.0, 3.141592653589793, 5.0}) {
    CAPTURE(tv);
    const auto rep = identity_suite(Real(tv));
    CHECK(rep.residuals.size() >= 5);
    for (const auto& [name, r] : rep.residuals) {
      CAPTURE(name);
      CHECK(d(r) <= 1e-12);
    }
    CHECK(rep.gap > 0);
    const Real th2 = oracle::theta2(Real(tv));
    const Real th4 = oracle::theta4(Real(tv));
    CHECK(d(abs(rep.gap - pow(th2, 4) * pow(th4, 4))) <= 1e-20);
  }
  const auto at_pi = identity_suite(kPi);
  const Real z8 = pow(oracle::theta3(kPi), 8);
  CHECK(d(abs(at_pi.gap - z8 / 4)) <= 1e-10);
  CHECK_THROWS_AS(identity_suite(Real(-2)), DomainError);
}

TEST_CASE("functional equation") {
  CHECK(d(functional_equation_residual(make_zn(4), kPi)) <= 1e-10);
  CHECK(d(functional_equation_residual(make_e8(), Real(1))) <= 1e-10);
  CHECK(d(functional_equation_residual(make_zn(8), Real(0.3))) <= 1e-9);
  CHECK(d(functional_equation_residual(make_named("E8+Z4"), Real(2.5))) <= 1e-9);
  CHECK_THROWS_AS(functional_equation_residual(make_dn(4), Real(1)), DomainError);
}

TEST_CASE("secrecy function") {
  for (double y : {0.5, 1.0, 2.0}) CHECK(d(abs(secrecy_function(make_zn(8), Real(y)) - 1)) <= 1e-18);
  CHECK(d(abs(secrecy_function(make_e8(), Real(1)) - Real(4) / 3)) <= 1e-10);
  CHECK(secrecy_function(make_e8(), Real(3)) > 1);
  CHECK_THROWS_AS(secrecy_function(make_e8(), Real(0)), DomainError);
}
