#include <queue>

#include "doctest.h"
#include "pebblekit/grid.hpp"

using namespace pebblekit;

namespace {

int bfs_distance(const GridSpec& g, const Vertex& s, const Vertex& t) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::queue<Vertex> q;
  dist[g.index(s)] = 0;
  q.push(s);
  while (!q.empty()) {
    const Vertex v = q.front();
    q.pop();
    for (const auto& u : g.neighbors(v))
      if (dist[g.index(u)] < 0) {
        dist[g.index(u)] = dist[g.index(v)] + 1;
        q.push(u);
      }
  }
  return dist[g.index(t)];
}

}  // namespace

TEST_CASE("distance on plane and torus") {
  CHECK(distance(GridSpec(10, 10), {0, 0}, {2, 3}) == 5);
  CHECK(distance(GridSpec(10, 10), {4, 7}, {4, 7}) == 0);
  CHECK(distance(GridSpec(5, 5, Topology::torus), {0, 0}, {4, 4}) == 2);
  CHECK_THROWS_AS(distance(GridSpec(3, 3), {0, 0}, {3, 0}), InputError);
}

TEST_CASE("torus distance equals BFS distance up to 8x8") {
  for (int w = 1; w <= 8; ++w)
    for (int h = 1; h <= 8; ++h) {
      const GridSpec g(w, h, Topology::torus);
      for (const auto& u : g.vertices())
        for (const auto& v : g.vertices()) REQUIRE(distance(g, u, v) == bfs_distance(g, u, v));
    }
}

TEST_CASE("neighbours on small tori are distinct") {
  CHECK(GridSpec(1, 1, Topology::torus).neighbors({0, 0}).empty());
  CHECK(GridSpec(2, 2, Topology::torus).neighbors({0, 0}).size() == 2);
  CHECK(GridSpec(3, 3, Topology::torus).neighbors({0, 0}).size() == 4);
  CHECK(GridSpec(3, 3).neighbors({0, 0}).size() == 2);
}

TEST_CASE("ball sizes") {
  const GridSpec g(9, 9);
  CHECK(ball(g, {4, 4}, 0).size() == 1);
  CHECK(ball(g, {4, 4}, 2).size() == 13);
  CHECK(ball(g, {0, 0}, 2).size() == 6);
}

TEST_CASE("grid rejects non-positive dimensions") {
  CHECK_THROWS_AS(GridSpec(0, 3), InputError);
  CHECK_THROWS_AS(GridSpec(3, -1, Topology::torus), InputError);
}

TEST_CASE("distribution parsing") {
  SUBCASE("integer") {
    const Distribution d = parse_integer_distribution("grid 3 3 plane\npebble 1 1 4\n");
    CHECK(d.size() == 4);
    CHECK(d[{1, 1}] == 4);
  }
  SUBCASE("comments and blank lines") {
    const Distribution d = parse_integer_distribution("# header\n\ngrid 4 2 torus\npebble 3 1 2 # trailing\n");
    CHECK(d.grid() == GridSpec(4, 2, Topology::torus));
    CHECK(d.size() == 2);
  }
  SUBCASE("continuous") {
    const auto any = parse_distribution("grid 3 3 plane continuous\npebble 0 0 1/9\n");
    const auto& c = std::get<ContinuousDistribution>(any);
    CHECK(c[{0, 0}] == Rational(1, 9));
  }
  SUBCASE("errors carry the line number") {
    try {
      (void)parse_distribution("grid 3 3 plane\npebble 0 0 1\npebble 0 0 1\n");
      FAIL("duplicate accepted");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse_distribution("grid 3 3 plane\npebble 5 0 1\n"), ParseError);
    CHECK_THROWS_AS(parse_distribution("grid 3 3 plane\npebble 0 0 -1\n"), ParseError);
    CHECK_THROWS_AS(parse_distribution("grid 3 3 plane\npebble 0 0 1/2\n"), ParseError);
    CHECK_THROWS_AS(parse_distribution("pebble 0 0 1\n"), ParseError);
    CHECK_THROWS_AS(parse_distribution("grid 3 3 sphere\n"), ParseError);
  }
}

TEST_CASE("serialization is canonical and round-trips") {
  Distribution d(GridSpec(5, 4, Topology::torus));
  d.set({4, 0}, 3).set({0, 2}, 1).set({1, 0}, 2);
  const std::string text = serialize_distribution(d);
  CHECK(text == "grid 5 4 torus\npebble 1 0 2\npebble 4 0 3\npebble 0 2 1\n");
  CHECK(parse_integer_distribution(text) == d);

  ContinuousDistribution c(GridSpec(2, 2));
  c.set({1, 1}, Rational(3, 7));
  CHECK(std::get<ContinuousDistribution>(parse_distribution(serialize_distribution(c))) == c);
}

TEST_CASE("distribution arithmetic") {
  const GridSpec g(3, 3);
  Distribution a(g), b(g);
  a.set({0, 0}, 2);
  b.set({0, 0}, 1).set({2, 2}, 1);
  const Distribution s = a + b;
  CHECK(s[{0, 0}] == 3);
  CHECK(s.size() == 4);
  CHECK(a.dominated_by(s));
  CHECK_FALSE(s.dominated_by(a));
  CHECK(s.without({0, 0}).size() == 1);
  CHECK_THROWS_AS(a + Distribution(GridSpec(3, 3, Topology::torus)), InputError);
  CHECK_THROWS_AS(a.set({0, 0}, -1), InputError);
}
