#include <doctest.h>

#include "oracles.hpp"
#include "thetacert/certificate_lp.hpp"
#include "thetacert/errors.hpp"
#include "thetacert/json_io.hpp"
#include "thetacert/lattice.hpp"
#include "thetacert/simplex.hpp"
#include "thetacert/theta.hpp"

using namespace thetacert;

namespace {

double d(const Real& x) { return to_double(x); }

// Constraint rows of the certificate LP in >= form, rebuilt here from the
// dictionary so a Farkas witness can be checked without the solver.
struct Rows {
  std::vector<std::vector<Real>> a;
  std::vector<Real> b;
};

Rows certificate_rows(const LPProblem& p) {
  Rows r;
  const Real pi = pi_real();
  for (auto m : p.shell_norms()) {
    std::vector<Real> row;
    for (const auto& w : p.widths) row.push_back(exp(-w * Real(m)));
    r.a.push_back(row);
    r.b.push_back(exp(-p.t * Real(m)));
  }
  for (auto m : p.shell_norms()) {
    std::vector<Real> row;
    for (const auto& w : p.widths) row.push_back(-pow(pi / w, Real(p.dim) / 2) * exp(-pi * pi * Real(m) / w));
    r.a.push_back(row);
    r.b.push_back(0);
  }
  if (p.coefficient_bound) {
    for (std::size_t k = 0; k < p.widths.size(); ++k)
      for (int sign : {1, -1}) {
        std::vector<Real> row(p.widths.size(), Real(0));
        row[k] = sign;
        r.a.push_back(row);
        r.b.push_back(-*p.coefficient_bound);
      }
  }
  return r;
}

LPProblem small_problem(double t, std::size_t widths, std::int64_t shells) {
  return build_lp(8, Real(t), default_dictionary(Real(t), widths), shells);
}

}  // namespace

TEST_CASE("simplex on hand-checkable programs") {
  DenseLP lp;
  lp.num_vars = 2;
  lp.objective = {Real(-1), Real(-1)};
  lp.rows = {{Real(1), Real(2)}, {Real(3), Real(1)}};
  lp.senses = {RowSense::LessEqual, RowSense::LessEqual};
  lp.rhs = {Real(4), Real(6)};
  const auto r = solve_dense_lp(lp);
  REQUIRE(r.status == LPStatus::Optimal);
  CHECK(d(abs(r.x[0] - Real(8) / 5)) <= 1e-25);
  CHECK(d(abs(r.x[1] - Real(6) / 5)) <= 1e-25);
  CHECK(d(abs(r.objective + Real(14) / 5)) <= 1e-25);
  CHECK(d(r.duality_gap) <= 1e-25);

  DenseLP bad;
  bad.num_vars = 1;
  bad.objective = {Real(1)};
  bad.rows = {{Real(1)}, {Real(1)}};
  bad.senses = {RowSense::GreaterEqual, RowSense::LessEqual};
  bad.rhs = {Real(1), Real(0)};
  CHECK(solve_dense_lp(bad).status == LPStatus::Infeasible);

  DenseLP open;
  open.num_vars = 1;
  open.objective = {Real(-1)};
  open.rows = {{Real(1)}};
  open.senses = {RowSense::GreaterEqual};
  open.rhs = {Real(0)};
  const auto u = solve_dense_lp(open);
  CHECK(u.status == LPStatus::Unbounded);
  REQUIRE(u.ray.size() == 1);
  CHECK(u.ray[0] > 0);

  // Beale's example cycles under textbook Dantzig pricing.
  DenseLP beale;
  beale.num_vars = 4;
  beale.objective = {Real(-0.75), Real(20), Real(-0.5), Real(6)};
  beale.rows = {{Real(0.25), Real(-8), Real(-1), Real(9)},
                {Real(0.5), Real(-12), Real(-0.5), Real(3)},
                {Real(0), Real(0), Real(1), Real(0)}};
  beale.senses = {RowSense::LessEqual, RowSense::LessEqual, RowSense::LessEqual};
  beale.rhs = {Real(0), Real(0), Real(1)};
  SimplexOptions strict;
  strict.degenerate_streak = 2;
  const auto b = solve_dense_lp(beale, strict);
  REQUIRE(b.status == LPStatus::Optimal);
  CHECK(d(abs(b.objective + Real(1.25))) <= 1e-25);

  SimplexOptions one;
  one.max_pivots = 1;
  CHECK(solve_dense_lp(beale, one).status == LPStatus::IterLimit);
}

TEST_CASE("build_lp") {
  const auto p = small_problem(1, 7, 13);
  CHECK(p.widths.size() == 7);
  CHECK(p.shell_norms().size() == 13);
  CHECK(certificate_rows(p).a.size() - 2 * p.widths.size() == 2 * 13);

  const auto dict = default_dictionary(Real(2), 40);
  CHECK(dict.size() == 40);
  CHECK(d(abs(dict.front() - Real(0.25))) <= 1e-30);
  CHECK(d(abs(dict.back() - Real(16))) <= 1e-30);
  for (std::size_t k = 1; k < dict.size(); ++k) CHECK(dict[k] > dict[k - 1]);

  CHECK_THROWS_AS(build_lp(3, Real(1), dict, 10), ConfigError);
  CHECK_THROWS_AS(build_lp(8, Real(0), dict, 10), ConfigError);
  CHECK_THROWS_AS(build_lp(8, Real(1), dict, 1), ConfigError);
  CHECK_THROWS_AS(build_lp(8, Real(1), {}, 10), ConfigError);
  CHECK_THROWS_AS(build_lp(8, Real(1), {Real(-1)}, 10), ConfigError);
}

TEST_CASE("single Gaussian width is infeasible with a Farkas witness") {
  const auto p = build_lp(8, Real(1), {Real(1)}, 10);
  const auto s = solve_lp(p);
  REQUIRE(s.status == LPStatus::Infeasible);
  CHECK(s.witness_kind == "farkas");
  const Rows rows = certificate_rows(p);
  REQUIRE(s.witness.size() == rows.a.size());
  Real combo = 0, scale = 0, value = 0;
  for (std::size_t i = 0; i < rows.a.size(); ++i) {
    CHECK(s.witness[i] >= 0);
    combo += s.witness[i] * rows.a[i][0];
    scale += abs(s.witness[i] * rows.a[i][0]);
    value += s.witness[i] * rows.b[i];
  }
  CHECK(d(abs(combo)) <= 1e-20 * d(scale));
  CHECK(value > 0);

  // without the box the same program is still infeasible
  auto open = p;
  open.coefficient_bound.reset();
  CHECK(solve_lp(open).status == LPStatus::Infeasible);
}

TEST_CASE("truncated LP without a coefficient box is unbounded") {
  auto p = small_problem(1, 8, 10);
  p.coefficient_bound.reset();
  const auto s = solve_lp(p);
  CHECK(s.status == LPStatus::Unbounded);
  CHECK(s.witness_kind == "ray");
}

TEST_CASE("monotonicity on nested instances") {
  // K = 10 grid is a subset of the K = 19 grid (same end points, half the step).
  const auto few = default_dictionary(Real(1), 10);
  const auto many = default_dictionary(Real(1), 19);
  for (std::size_t k = 0; k < few.size(); ++k) CHECK(d(abs(few[k] - many[2 * k]) / few[k]) <= 1e-30);

  const auto a = solve_lp(build_lp(8, Real(1), few, 20));
  const auto b = solve_lp(build_lp(8, Real(1), few, 30));
  const auto c = solve_lp(build_lp(8, Real(1), many, 30));
  REQUIRE(a.status == LPStatus::Optimal);
  REQUIRE(b.status == LPStatus::Optimal);
  REQUIRE(c.status == LPStatus::Optimal);
  const double tol = 1e-9;
  CHECK(d(b.objective) >= d(a.objective) - tol * std::max(1.0, std::abs(d(a.objective))));
  CHECK(d(c.objective) <= d(b.objective) + tol * std::max(1.0, std::abs(d(b.objective))));
}

TEST_CASE("optimal solve with a controlled tail") {
  const Real t(2);
  const auto widths = default_dictionary(t, 12);
  const auto shells = shells_for_tail(8, widths, kDefaultCoefficientBound, Real(1e-9));
  const auto p = build_lp(8, t, widths, shells);
  const auto s = solve_lp(p);
  REQUIRE(s.status == LPStatus::Optimal);
  CHECK(s.coeffs.size() == widths.size());
  CHECK(s.slacks_majorize.size() == static_cast<std::size_t>(shells));
  CHECK(s.slacks_fourier.size() == static_cast<std::size_t>(shells));
  CHECK(d(s.truncation_tail) <= 1e-9);
  CHECK(d(s.duality_gap) <= 1e-9);
  for (const auto& v : s.slacks_majorize) CHECK(d(v) >= -1e-9);
  for (const auto& v : s.slacks_fourier) CHECK(d(v) >= -1e-9);
  for (const auto& c : s.coeffs) CHECK(d(abs(c)) <= 1e4 * (1 + 1e-20));

  // objective recomputed outside the solver
  const auto h = certificate(p, s);
  const Real recomputed = 1 + h.fourier().at_origin() - h.at_origin();
  CHECK(d(abs(recomputed - s.objective)) <= 1e-9);

  const Real th3 = oracle::theta3(t);
  const Real z8 = pow(th3, 8);
  const Real gap = pow(oracle::theta2(t), 4) * pow(oracle::theta4(t), 4);
  CHECK(d(abs(s.theta_zn - z8)) <= 1e-20);
  CHECK(d(s.objective) >= d(z8) - 1e-6);
  CHECK(d(s.objective) >= d(z8 - gap) - 1e-6);
  CHECK(s.epsilon > 0);

  SUBCASE("verify on Z8") {
    const auto rep = verify_solution(p, s, make_zn(8));
    CHECK(rep.verdict.kind == VerdictKind::NearSharp);
    CHECK(d(abs(rep.epsilon - s.epsilon)) <= 1e-8);
    CHECK(d(abs(rep.sum_a + rep.sum_b - rep.epsilon)) <= 1e-8 + d(rep.tail_bound));
    for (const auto& sh : rep.per_shell) {
      CHECK(d(sh.point_majorize) >= -1e-10);
      CHECK(d(sh.point_fourier) >= -1e-10);
      CHECK(d(sh.point_majorize) <= d(s.epsilon) + 1e-8);
      CHECK(d(sh.point_fourier) <= d(s.epsilon) + 1e-8);
    }
  }
  SUBCASE("audit the same certificate on E8") {
    const auto rep = verify_solution(p, s, make_e8());
    CHECK(d(abs(rep.lattice_epsilon - (s.objective - (z8 - gap)))) <= 1e-8);
    CHECK(d(abs(rep.sum_a + rep.sum_b - rep.lattice_epsilon)) <= 1e-8 + d(rep.tail_bound));
    CHECK(rep.lattice_epsilon > rep.epsilon);
    CHECK(d(abs(rep.theta_gap - gap)) <= 1e-12);
  }
  SUBCASE("JSON round trip") {
    const Json js = to_json(s);
    CHECK(to_json(solution_from_json(js)) == js);
    const Json jp = to_json(p);
    CHECK(to_json(problem_from_json(jp)) == jp);
    const auto back = solution_from_json(js);
    REQUIRE(back.coeffs.size() == s.coeffs.size());
    for (std::size_t k = 0; k < s.coeffs.size(); ++k) CHECK(d(back.coeffs[k]) == d(s.coeffs[k]));
  }
  SUBCASE("deterministic") {
    const auto again = solve_lp(p);
    CHECK(to_json(again).dump() == to_json(s).dump());
  }
}

TEST_CASE("verification rejects a tail-exploiting solution") {
  const auto p = small_problem(1, 10, 10);
  const auto s = solve_lp(p);
  REQUIRE(s.status == LPStatus::Optimal);
  CHECK(d(s.truncation_tail) > 1e-9);
  const auto rep = verify_solution(p, s, make_zn(8));
  CHECK(rep.verdict.kind == VerdictKind::Violated);
  CHECK_THROWS_AS(verify_solution(build_lp(8, Real(1), {Real(1)}, 10), solve_lp(build_lp(8, Real(1), {Real(1)}, 10)),
                                  make_zn(8)),
                  ConfigError);
}
