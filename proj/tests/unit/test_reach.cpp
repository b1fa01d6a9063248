#include <functional>
#include <random>

#include "doctest.h"
#include "pebblekit/constructions.hpp"
#include "pebblekit/oracle.hpp"
#include "pebblekit/reach.hpp"

using namespace pebblekit;

namespace {

Distribution single(const GridSpec& g, const Vertex& v, Count c) {
  Distribution d(g);
  d.set(v, c);
  return d;
}

SearchOptions forward_only() {
  SearchOptions o;
  o.strategy = SearchStrategy::forward;
  return o;
}

}  // namespace

TEST_CASE("pebbling moves") {
  const GridSpec g(5, 5);
  const Distribution two = single(g, {2, 2}, 2);
  const Distribution moved = apply_move(two, {2, 2}, {2, 3});
  CHECK(moved == single(g, {2, 3}, 1));
  CHECK(apply_move(apply_move(single(g, {2, 2}, 4), {2, 2}, {3, 2}), {2, 2}, {3, 2}) == single(g, {3, 2}, 2));
  CHECK_THROWS_AS(apply_move(single(g, {2, 2}, 1), {2, 2}, {2, 3}), InputError);
  CHECK_THROWS_AS(apply_move(two, {2, 2}, {4, 4}), InputError);
  const GridSpec t(5, 5, Topology::torus);
  CHECK(apply_move(single(t, {0, 0}, 2), {0, 0}, {4, 0})[{4, 0}] == 1);
}

TEST_CASE("reachability fixtures") {
  const GridSpec g(9, 9);
  for (const auto& opt : {SearchOptions{}, forward_only()}) {
    CHECK(is_reachable(single(g, {4, 4}, 1), {4, 4}, opt));
    CHECK_FALSE(is_reachable(single(g, {4, 4}, 3), {4, 6}, opt));
    CHECK_FALSE(is_reachable(single(g, {4, 4}, 3), {5, 5}, opt));
    CHECK(is_reachable(single(g, {4, 4}, 4), {4, 6}, opt));
    CHECK(can_move_k(single(g, {4, 4}, 5), {4, 4}, 5, opt));
    CHECK(can_move_k(single(g, {4, 4}, 8), {4, 5}, 4, opt));
    CHECK_FALSE(can_move_k(single(g, {4, 4}, 8), {4, 5}, 5, opt));
  }
  CHECK_THROWS_AS(can_move_k(single(g, {4, 4}, 1), {4, 4}, 0), InputError);
  CHECK_THROWS_AS(is_reachable(single(g, {4, 4}, 1), {9, 4}), InputError);
}

TEST_CASE("coverage fixtures") {
  const GridSpec g(11, 11);
  const auto one = coverage(single(g, {5, 5}, 2));
  CHECK(one.cov == 5);
  CHECK(one.ratio == Rational(5, 2));
  CHECK(one.boundary == std::set<Vertex>{{5, 4}, {4, 5}, {6, 5}, {5, 6}});
  require_border_margin(one, g, 3);

  Distribution pair = single(g, {5, 5}, 2);
  pair.set({6, 5}, 2);
  const auto two = coverage(pair);
  CHECK(two.cov == 8);
  CHECK(two.ratio == 2);

  Distribution row(g);
  for (int c = 3; c < 8; ++c) row.set({c, 5}, 1);
  CHECK(coverage(row).ratio == 1);

  CHECK_THROWS_AS(require_border_margin(coverage(single(g, {1, 5}, 2)), g, 3), InputError);
  CHECK_THROWS_AS(coverage(Distribution(g)), InputError);
}

TEST_CASE("solvability") {
  CHECK(is_solvable(single(GridSpec(3, 3), {1, 1}, 4)));
  CHECK_FALSE(is_solvable(single(GridSpec(2, 2), {0, 0}, 2)));
  Distribution three(GridSpec(2, 2));
  three.set({0, 0}, 2).set({1, 1}, 1);
  CHECK(is_solvable(three));
  CHECK(is_solvable(gen_diag7(GridSpec(14, 14, Topology::torus))));
}

TEST_CASE("interaction vocabulary") {
  const GridSpec g(11, 11);
  const Distribution a = single(g, {3, 5}, 2), b = single(g, {6, 5}, 2);
  CHECK(interaction_vertices(a, b).empty());
  CHECK(interaction_vertices(a, single(g, {5, 5}, 2)) == std::set<Vertex>{{4, 5}});
  CHECK(boundary_vertices(a).size() == 4);

  Distribution d(g);
  d.set({1, 1}, 1).set({5, 5}, 2).set({5, 6}, 1);
  const auto lonely = lonely_units(d);
  CHECK(std::find(lonely.begin(), lonely.end(), Vertex{1, 1}) != lonely.end());
  CHECK(std::find(lonely.begin(), lonely.end(), Vertex{5, 6}) == lonely.end());
}

TEST_CASE("marginal covering ratio") {
  const GridSpec g(11, 11);
  const Distribution one = single(g, {5, 5}, 1), two = single(g, {5, 5}, 2);
  Distribution pair = two;
  pair.set({6, 5}, 2);
  CHECK(marginal_covering_ratio(one, two) == 4);
  CHECK(marginal_covering_ratio(two, pair) == Rational(3, 2));
  CHECK_THROWS_AS(marginal_covering_ratio(two, two), InputError);
}

TEST_CASE("budget is reported, never guessed") {
  SearchOptions tiny;
  tiny.node_cap = 1;
  tiny.strategy = SearchStrategy::forward;
  const Distribution d = gen_diag7(GridSpec(14, 14, Topology::torus));
  const ReachQuery q = query_reachable(d, {4, 0}, tiny);
  CHECK(q.status == ReachStatus::budget_exceeded);
  CHECK_THROWS_AS(is_reachable(d, {4, 0}, tiny), BudgetExceeded);
}

TEST_CASE("backward and forward searches agree with the exhaustive walk") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const GridSpec g(1 + static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 4),
                     rng() % 2 ? Topology::torus : Topology::plane);
    Distribution d(g);
    const int units = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < units; ++i) d.add(g.vertex(rng() % g.vertex_count()), 1 + static_cast<Count>(rng() % 4));
    const auto truth = enumerate_reachable(d);
    REQUIRE(coverage(d).reachable == truth);
    REQUIRE(coverage(d, forward_only()).reachable == truth);
    const Vertex t = g.vertex(rng() % g.vertex_count());
    const Count best = enumerate_max_on(d, t);
    CHECK(can_move_k(d, t, best + 1) == false);
    if (best > 0) CHECK(can_move_k(d, t, best));
  }
}

TEST_CASE("threads do not change coverage") {
  const Distribution d = gen_stripes(2, 2);
  SearchOptions many;
  many.threads = 3;
  CHECK(coverage(d, many).reachable == coverage(d).reachable);
}
