#include <doctest.h>

#include "oracles.hpp"
#include "thetacert/certificate_lp.hpp"
#include "thetacert/errors.hpp"
#include "thetacert/json_io.hpp"
#include "thetacert/lattice.hpp"
#include "thetacert/rotation.hpp"
#include "thetacert/saturation.hpp"
#include "thetacert/theta.hpp"

using namespace thetacert;

namespace {

double d(const Real& x) { return to_double(x); }

Real oracle_gap(const Real& t) { return pow(oracle::theta2(t), 4) * pow(oracle::theta4(t), 4); }

Real oracle_e8(const Real& t) {
  return (pow(oracle::theta2(t), 8) + pow(oracle::theta3(t), 8) + pow(oracle::theta4(t), 8)) / 2;
}

AuditOptions doubles_allowed() {
  AuditOptions o;
  o.allow_test_doubles = true;
  return o;
}

// Shell values for a would-be sharp certificate: h equals the Gaussian and
// h^ vanishes on every listed shell, perturbed by delta * e^{-m}.
ShellFunction near_saturated(const Real& t, const Real& delta, const Real& bound_excess, std::int64_t shells) {
  std::vector<Real> h, hhat;
  for (std::int64_t m = 1; m <= shells; ++m) {
    h.push_back(exp(-t * Real(m)) + delta * exp(-Real(m)));
    hhat.push_back(-delta * exp(-Real(m)));
  }
  const Real h0 = 1;
  const Real hhat0 = pow(oracle::theta3(t), 8) - 1 + bound_excess + h0;
  return ShellFunction::prescribed(8, h0, hhat0, h, hhat);
}

}  // namespace

TEST_CASE("Gaussian majorant fails the transform condition") {
  const Real t(1);
  const auto rep = chain_audit(GaussianCombo::gaussian(8, t), make_zn(8), t);
  CHECK(rep.verdict.kind == VerdictKind::Violated);
  CHECK(rep.verdict.condition == "ii");
  CHECK(rep.verdict.shell == 1);
  CHECK(describe(rep.verdict) == "Violated(ii, 1)");
  for (const auto& s : rep.per_shell) {
    CHECK(s.a == 0);
    CHECK(s.b < 0);
  }
  CHECK(rep.chain.size() == 7);
  CHECK(rep.chain.front().label == "theta_minus_one");
  CHECK(rep.chain.back().label == "theta_zn_minus_one");
}

TEST_CASE("rotation invariance of the chain") {
  const Real t(0.8);
  const GaussianCombo h(8, {{Real(1.2), Real(0.8)}, {Real(-0.3), Real(2.1)}, {Real(0.05), Real(0.4)}});
  const auto base = chain_audit(h, make_e8(), t);
  for (std::uint64_t seed : {1u, 2u, 3u, 17u, 12345u}) {
    CAPTURE(seed);
    const auto rep = chain_audit(h, make_e8(), t, random_rotation(8, seed));
    REQUIRE(rep.rotation_seed);
    CHECK(*rep.rotation_seed == seed);
    CHECK(d(rep.rotation_deviation) <= 1e-9);
    REQUIRE(rep.chain.size() == base.chain.size());
    for (std::size_t i = 0; i < rep.chain.size(); ++i) CHECK(d(abs(rep.chain[i].value - base.chain[i].value)) <= 1e-9);
    REQUIRE(rep.per_shell.size() == base.per_shell.size());
    for (std::size_t i = 0; i < rep.per_shell.size(); ++i) {
      CHECK(d(abs(rep.per_shell[i].a - base.per_shell[i].a)) <= 1e-9);
      CHECK(d(abs(rep.per_shell[i].b - base.per_shell[i].b)) <= 1e-9);
    }
    CHECK(rep.verdict.kind == base.verdict.kind);
    CHECK(to_json(chain_audit(h, make_e8(), t, random_rotation(8, seed))).dump() == to_json(rep).dump());
  }
}

TEST_CASE("prescribed shell values") {
  const Real t(1);
  const auto shells = required_max_norm(8, t, Real(1e-30));
  const auto f = near_saturated(t, Real(0), Real(0), shells);
  CHECK(f.test_double);
  CHECK_THROWS_AS(chain_audit(f, make_zn(8), t), ConfigError);

  const auto rep = chain_audit(f, make_zn(8), t, std::nullopt, doubles_allowed());
  CHECK(rep.verdict.kind == VerdictKind::Sharp);
  CHECK(d(abs(rep.epsilon)) <= 1e-20);

  // sign failure on one shell is located
  std::vector<Real> h, hhat;
  for (std::int64_t m = 1; m <= shells; ++m) {
    h.push_back(exp(-t * Real(m)) - (m == 3 ? Real(1e-6) : Real(0)));
    hhat.push_back(0);
  }
  const auto bad = ShellFunction::prescribed(8, Real(1), pow(oracle::theta3(t), 8), h, hhat);
  const auto brep = chain_audit(bad, make_zn(8), t, std::nullopt, doubles_allowed());
  CHECK(brep.verdict.kind == VerdictKind::Violated);
  CHECK(brep.verdict.condition == "i");
  CHECK(brep.verdict.shell == 3);

  CHECK_THROWS_AS(ShellFunction::prescribed(8, Real(1), Real(1), {Real(1)}, {}), ConfigError);
}

TEST_CASE("E8 collapse") {
  const Real t(1);
  const auto shells = required_max_norm(8, t, Real(1e-30));
  std::vector<Real> h, hhat;
  for (std::int64_t m = 1; m <= shells; ++m) {
    h.push_back(exp(-t * Real(m)));
    hhat.push_back(0);
  }
  // Poisson-consistent on E8: h^(0) - h(0) = Theta_E8 - 1.
  const Real h0 = Real(0.75);
  const auto f = ShellFunction::prescribed(8, h0, h0 + oracle_e8(t) - 1, h, hhat);
  const auto rep = e8_collapse_audit(f, 8, t, doubles_allowed());
  CHECK(d(rep.collapse_residual) <= 1e-20);
  CHECK(d(abs(rep.contradiction_magnitude - oracle_gap(t))) <= 1e-25);
  CHECK(rep.contradiction_magnitude > 0);
  CHECK(d(abs(rep.sharpness_defect + oracle_gap(t))) <= 1e-20);
  CHECK(rep.failed_step == "theta_zn_minus_one");

  const auto g = e8_collapse_audit(GaussianCombo::gaussian(8, t), 8, t);
  CHECK(g.failed_step == "hhat0_minus_h0");
  CHECK(g.steps.size() == 6);

  const auto wide = e8_collapse_audit(GaussianCombo::gaussian(10, t), 10, t);
  CHECK(d(abs(wide.lattice_gap - oracle_gap(t) * pow(oracle::theta3(t), 2))) <= d(wide.tail_bound) + 1e-25);

  CHECK_THROWS_AS(e8_collapse_audit(GaussianCombo::gaussian(7, t), 7, t), ConfigError);
}

TEST_CASE("graded comparison") {
  const Real t(1.3);
  const GaussianCombo h(9, {{Real(0.7), Real(0.9)}, {Real(-0.2), Real(3.0)}});
  const auto zero = graded_audit({h, h}, 9, t);
  // F keeps both copies of every term, so "zero" means cancellation to roundoff
  CHECK(d(abs(zero.f_hat0_minus_f0)) <= 1e-30);
  CHECK(d(abs(zero.sum_f)) <= 1e-30);
  CHECK(d(abs(zero.sum_f_hat)) <= 1e-30);
  CHECK(d(zero.residual) <= 1e-30);
  CHECK(zero.signs_hold);

  const auto g = GaussianCombo::gaussian(8, t);
  const auto rep = graded_audit({g, g.scaled(Real(2))}, 8, t);
  CHECK_FALSE(rep.signs_hold);
  CHECK(rep.first_violation == "F^<=0");
  CHECK(rep.violation_shell == 2);  // E8 has no vectors of norm 1
  CHECK(rep.comparison_holds);
  CHECK(d(rep.residual) <= 1e-8);

  const GradedPair pair{GaussianCombo(8, {{Real(1), Real(0.5)}, {Real(0.4), Real(2.2)}}),
                        GaussianCombo(8, {{Real(-0.6), Real(1.7)}, {Real(1.1), Real(0.35)}})};
  CHECK(pair.f().terms().size() == 4);
  const auto r = graded_audit(pair, 8, t);
  CHECK(d(r.residual) <= 1e-8);
  // the two bounds differ by exactly F^(0) - F(0)
  CHECK(d(abs((r.bound_lc - r.bound_zn) - r.f_hat0_minus_f0)) <= 1e-25);
}

TEST_CASE("sequence audit") {
  const Real t(1);
  const auto shells = required_max_norm(8, t, Real(1e-30));
  const Real z8_minus_one = pow(oracle::theta3(t), 8) - 1;
  std::vector<ShellFunction> seq;
  for (int j = 1; j <= 5; ++j) {
    const Real delta = pow(Real(10), -j);
    seq.push_back(near_saturated(t, delta, 2 * delta * z8_minus_one, shells));
  }
  const Dominators dom{{Real(2), Real(1)}, {Real(1), Real(1)}};
  const auto rep = sequence_audit(seq, 8, t, dom, doubles_allowed());
  REQUIRE(rep.elements.size() == 5);
  for (std::size_t j = 0; j < 5; ++j) {
    CHECK(rep.elements[j].bounds_hold);
    CHECK(rep.elements[j].dominated);
    if (j > 0) CHECK(rep.elements[j].epsilon < rep.elements[j - 1].epsilon);
  }
  CHECK(rep.dominated);
  CHECK(d(abs(rep.theta_clash - oracle_gap(t))) <= 1e-8);
  CHECK(d(abs(rep.theta_gap - oracle_gap(t))) <= 1e-20);
  CHECK(d(abs(rep.limit_sum_h - (oracle_e8(t) - 1))) <= 1e-12);
  CHECK(d(abs(rep.final_sum_h - rep.limit_sum_h)) <= d(Real(1e-5) * (oracle_e8(t) - 1)) * 1.001);

  const auto single = sequence_audit(std::vector<ShellFunction>{seq[2]}, 8, t, std::nullopt, doubles_allowed());
  REQUIRE(single.chains.size() == 1);
  CHECK(to_json(single.chains[0]).dump() ==
        to_json(chain_audit(seq[2], make_zn(8), t, std::nullopt, doubles_allowed())).dump());
  CHECK_FALSE(single.dominated);

  CHECK_THROWS_AS(sequence_audit(seq, 8, t, Dominators{{Real(1), Real(0)}, {Real(1), Real(1)}}, doubles_allowed()),
                  ConfigError);
  CHECK_THROWS_AS(sequence_audit(std::vector<ShellFunction>{}, 8, t), ConfigError);
}

TEST_CASE("constant sequence of an LP optimum") {
  const Real t(2);
  const auto widths = default_dictionary(t, 12);
  const auto p = build_lp(8, t, widths, shells_for_tail(8, widths, kDefaultCoefficientBound, Real(1e-9)));
  const auto s = solve_lp(p);
  REQUIRE(s.status == LPStatus::Optimal);
  const auto h = certificate(p, s);
  const auto rep = sequence_audit(std::vector<GaussianCombo>{h, h, h}, 8, t);
  for (const auto& e : rep.elements) {
    CHECK(e.bounds_hold);
    CHECK(e.epsilon == rep.elements[0].epsilon);
  }
  CHECK(d(abs(rep.elements[0].epsilon - s.epsilon)) <= 1e-8);

  const auto collapse = e8_collapse_audit(h, 8, t);
  CHECK(d(collapse.collapse_residual) >= d(oracle_gap(t) - s.epsilon - collapse.tail_bound) - 1e-8);
}
