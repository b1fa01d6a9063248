#include "doctest.h"
#include "pebblekit/constructions.hpp"
#include "pebblekit/optimal.hpp"
#include "pebblekit/oracle.hpp"

using namespace pebblekit;

TEST_CASE("symmetry groups") {
  CHECK(grid_symmetries(GridSpec(3, 3)).size() == 8);
  CHECK(grid_symmetries(GridSpec(3, 2)).size() == 4);
  CHECK(grid_symmetries(GridSpec(3, 3, Topology::torus)).size() == 72);
  CHECK(grid_symmetries(GridSpec(1, 1)).size() == 1);
}

TEST_CASE("small optimal pebbling numbers") {
  CHECK(optimal_pebbling_number(GridSpec(1, 1)).pi_opt == 1);
  const OptimalResult two = optimal_pebbling_number(GridSpec(2, 2));
  CHECK(two.pi_opt == 3);
  CHECK(is_solvable(two.witness));
  CHECK(two.fractional_bound == Rational(16, 9));
  const OptimalResult three = optimal_pebbling_number(GridSpec(3, 3));
  CHECK(three.pi_opt == 4);
  CHECK(optimal_pebbling_number(GridSpec(1, 4)).pi_opt == 3);
  CHECK(optimal_pebbling_number(GridSpec(1, 6)).pi_opt == 4);
  CHECK(optimal_pebbling_number(GridSpec(3, 3, Topology::torus)).pi_opt == 4);
}

TEST_CASE("series respects both bounds") {
  const auto series = optimal_ratio_series(4);
  REQUIRE(series.size() == 4);
  const Count expected[] = {1, 3, 4, 7};
  for (const auto& e : series) {
    CHECK(e.pi_opt == expected[e.n - 1]);
    CHECK(Rational(static_cast<long>(e.pi_opt)) >= e.fractional_bound);
    if (e.composed_bound) CHECK(e.pi_opt <= *e.composed_bound);
  }
  CHECK(series[1].ratio == Rational(3, 4));
  CHECK(series[3].composed_bound == 11);
  CHECK_THROWS_AS(optimal_ratio_series(0), InputError);
}

TEST_CASE("candidate cap surfaces as a budget error") {
  OptimalOptions o;
  o.candidate_cap = 5;
  CHECK_THROWS_AS(optimal_pebbling_number(GridSpec(3, 3), o), BudgetExceeded);
}

TEST_CASE("no smaller distribution is solvable by exhaustive walk") {
  for (const GridSpec& g : {GridSpec(3, 3), GridSpec(3, 3, Topology::torus), GridSpec(2, 3)}) {
    const OptimalResult r = optimal_pebbling_number(g);
    CHECK(enumerate_reachable(r.witness).size() == g.vertex_count());
    const Count below = r.pi_opt - 1;
    std::vector<std::size_t> picks(static_cast<std::size_t>(below), 0);
    bool any = false;
    // nondecreasing index sequences of length `below`
    while (true) {
      Distribution d(g);
      for (auto p : picks) d.add(g.vertex(p), 1);
      if (enumerate_reachable(d).size() == g.vertex_count()) any = true;
      int i = static_cast<int>(picks.size()) - 1;
      while (i >= 0 && picks[static_cast<std::size_t>(i)] == g.vertex_count() - 1) --i;
      if (i < 0) break;
      const std::size_t next = picks[static_cast<std::size_t>(i)] + 1;
      for (std::size_t j = static_cast<std::size_t>(i); j < picks.size(); ++j) picks[j] = next;
    }
    CHECK_FALSE(any);
  }
}
