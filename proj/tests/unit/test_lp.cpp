#include "doctest.h"
#include "pebblekit/lp.hpp"
#include "pebblekit/weight.hpp"

using namespace pebblekit;

TEST_CASE("tiny programs") {
  LpProblem p;
  p.objective = {1};
  p.constraints = {{1}};
  p.rhs = {3};
  const LpSolution s = solve(p);
  CHECK(s.status == LpStatus::optimal);
  CHECK(s.objective_value == 3);
  CHECK(verify_certificate(p, s.primal, s.dual));

  LpProblem u;
  u.objective = {-1};
  u.constraints = {{1}};
  u.rhs = {0};
  const LpSolution su = solve(u);
  CHECK(su.status == LpStatus::unbounded);
  CHECK(verify_unbounded_ray(u, su.ray));

  LpProblem inf;
  inf.objective = {1};
  inf.constraints = {{-1}};
  inf.rhs = {1};
  const LpSolution si = solve(inf);
  CHECK(si.status == LpStatus::infeasible);
  CHECK(verify_infeasibility(inf, si.ray));
}

TEST_CASE("degenerate program terminates") {
  // Several tight constraints at the origin; Bland's rule must not cycle.
  LpProblem p;
  p.objective = {1, 1, 1};
  p.constraints = {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}, {2, 2, 2}};
  p.rhs = {1, 1, 1, Rational(3, 2), 3};
  const LpSolution s = solve(p);
  CHECK(s.status == LpStatus::optimal);
  CHECK(s.objective_value == Rational(3, 2));
  CHECK(verify_certificate(p, s.primal, s.dual));
}

TEST_CASE("malformed programs are rejected") {
  LpProblem p;
  p.objective = {1, 1};
  p.constraints = {{1}};
  p.rhs = {1};
  CHECK_THROWS_AS(solve(p), InputError);
}

TEST_CASE("unit excess program") {
  const LpProblem p = unit_excess_problem();
  CHECK(p.variables() == 8);
  const LpSolution s = solve(p);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective_value == Rational(12, 25));
  CHECK(verify_certificate(p, s.primal, s.dual));
  CHECK(unit_excess_lower_bound() == Rational(12, 25));

  ExcessRegionProfile prof;
  for (auto& x : prof.x) x = 0;
  for (auto& y : prof.y) y = Rational(12, 25);
  CHECK(primal_feasible(p, prof.to_vector()));
  CHECK(prof.excess_at_unit() == Rational(12, 25));
  CHECK(ExcessRegionProfile::from_vector(prof.to_vector()).y[2] == Rational(12, 25));

  auto bumped = s.primal;
  bumped[0] += Rational(1, 100);
  CHECK_FALSE(verify_certificate(p, bumped, s.dual));
  CHECK_FALSE(verify_certificate(p, std::vector<Rational>(8, Rational(0)), s.dual));
  CHECK_FALSE(primal_feasible(p, std::vector<Rational>(8, Rational(0))));
}

TEST_CASE("as-printed variant differs") {
  const LpSolution s = solve(unit_excess_problem_as_printed());
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective_value == Rational(114, 233));
}

TEST_CASE("fractional optimal pebbling") {
  CHECK(fractional_optimal_pebbling(GridSpec(1, 1)).value == 1);

  // 2x2 plane: corners pair up as (a, b; b, a) by symmetry, so x + (x/2)*2 + x/4 >= 1 with
  // all four equal gives 4 * 4/9.
  const auto two = fractional_optimal_pebbling(GridSpec(2, 2));
  CHECK(two.value == Rational(16, 9));
  CHECK(fractional_solvable(two.witness));

  const auto t5 = fractional_optimal_pebbling(GridSpec(5, 5, Topology::torus));
  CHECK(t5.value == 4);
  CHECK(fractional_solvable(t5.witness));
  CHECK(verify_certificate(fractional_pebbling_problem(GridSpec(5, 5, Topology::torus)), t5.lp.primal, t5.lp.dual));

  CHECK_THROWS_AS(fractional_optimal_pebbling(GridSpec(15, 15)), InputError);
}
