#include "doctest.h"
#include "pebblekit/constructions.hpp"
#include "pebblekit/weight.hpp"

using namespace pebblekit;

namespace {

Distribution single(const GridSpec& g, const Vertex& v, Count c) {
  Distribution d(g);
  d.set(v, c);
  return d;
}

}  // namespace

TEST_CASE("weight formula") {
  const Distribution d = single(GridSpec(9, 9), {4, 4}, 2);
  CHECK(weight(d, {4, 4}) == 2);
  CHECK(weight(d, {4, 5}) == 1);
  CHECK(weight(d, {5, 5}) == Rational(1, 2));
  CHECK(weight_infinite(d, {-3, 4}) == Rational(1, 64));
}

TEST_CASE("excess is max(W - 1, 0)") {
  CHECK(excess_of(2) == 1);
  CHECK(excess_of(1) == 0);
  CHECK(excess_of(Rational(1, 2)) == 0);
  const Distribution d = single(GridSpec(5, 5), {2, 2}, 2);
  CHECK(excess(d, {2, 2}) == 1);
  CHECK(excess(d, {2, 3}) == 0);
}

TEST_CASE("ceiling on the unbounded grid") {
  const GridSpec g(9, 9);
  CHECK(ceiling_infinite(single(g, {4, 4}, 1)) == 9);
  CHECK(ceiling_infinite(single(g, {4, 4}, 2)) == Rational(17, 2));
  CHECK(ceiling_infinite(single(g, {4, 4}, 4)) == Rational(29, 4));
  Distribution pair(g);
  pair.set({4, 4}, 2).set({5, 4}, 2);
  CHECK(ceiling_infinite(pair) == Rational(29, 4));
  CHECK(ceiling_numerator(pair, EvalMode::infinite) == 29);
  CHECK_THROWS_AS(ceiling_infinite(single(GridSpec(9, 9, Topology::torus), {4, 4}, 2)), InputError);
}

TEST_CASE("marginal ceilings") {
  const GridSpec g(9, 9);
  Distribution one = single(g, {4, 4}, 1), two = single(g, {4, 4}, 2), pair = two;
  pair.set({5, 4}, 2);
  CHECK(marginal_covering_ratio_ceiling(one, two, EvalMode::infinite) == 8);
  CHECK(marginal_covering_ratio_ceiling(two, pair, EvalMode::infinite) == 6);
  CHECK_THROWS_AS(marginal_covering_ratio_ceiling(two, two), InputError);
  CHECK_THROWS_AS(marginal_covering_ratio_ceiling(pair, two), InputError);
}

TEST_CASE("finite ceiling of the striped family") {
  for (int n = 1; n <= 2; ++n)
    for (int m = 1; m <= 2; ++m) CHECK(covering_ratio_ceiling(gen_stripes(n, m)) == stripes_ceiling(n, m));
}

TEST_CASE("weight report") {
  const Distribution d = single(GridSpec(3, 3), {1, 1}, 4);
  const WeightReport r = weight_report(d);
  CHECK(r.rows.size() == 9);
  CHECK(r.min_weight == 1);
  CHECK(r.ceiling == Rational(9, 4));
  const WeightReport inf = weight_report(d, EvalMode::infinite);
  CHECK(inf.total_excess == 7);
  CHECK(inf.ceiling == Rational(29, 4));
}

TEST_CASE("fractional solvability") {
  CHECK(fractional_solvable(single(GridSpec(3, 3), {1, 1}, 4)));
  CHECK_FALSE(fractional_solvable(single(GridSpec(3, 3), {0, 0}, 4)));
  CHECK_FALSE(fractional_solvable(gen_uniform_frac(GridSpec(9, 9), Rational(1, 9))));
  CHECK(fractional_solvable(gen_uniform_frac(GridSpec(5, 5, Topology::torus), Rational(4, 25))));
}

TEST_CASE("uniform weight on a torus is constant and below 1 for 1/9") {
  // One pebble's total weight on a finite torus is strictly below the unbounded-grid total of 9.
  const GridSpec g(7, 7, Topology::torus);
  const auto d = gen_uniform_frac(g, Rational(1, 9));
  const auto field = weight_field(d);
  for (const auto& w : field) CHECK(w == field[0]);
  CHECK(field[0] == Rational(121, 144));
}

TEST_CASE("single pebble weight total") {
  CHECK(single_pebble_weight_total(0) == 1);
  CHECK(single_pebble_weight_total(2) == 5);
  CHECK(Rational(9) - single_pebble_weight_total(40) <= pow2_inv(30));
  CHECK_THROWS_AS(single_pebble_weight_total(-1), InputError);
}

TEST_CASE("ratio bound accounting") {
  CHECK(integer_fractional_ratio_bound() == Rational(213, 25));
  const Density7Pattern p = find_density7_pattern(14);
  const IfcovBoundReport r = ifcov_bound_report(p.distribution, 14);
  CHECK(r.fractional_cover);
  CHECK(r.ratio == 7);
  CHECK(r.ratio_within_bound);
  CHECK_FALSE(r.violation);
}
