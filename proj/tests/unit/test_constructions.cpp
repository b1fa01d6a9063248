#include "doctest.h"
#include "pebblekit/constructions.hpp"
#include "pebblekit/weight.hpp"

using namespace pebblekit;

TEST_CASE("diagonal pattern") {
  const Distribution d = gen_diag7(GridSpec(14, 14, Topology::torus));
  CHECK(d.unit_count() == 14);
  CHECK(d.size() == 56);
  const auto cov = coverage(d);
  CHECK(cov.cov == 196);
  CHECK(cov.ratio == Rational(7, 2));
  for (const auto& [v, c] : d.entries()) {
    CHECK(c == 4);
    CHECK(diag7_site(v));
  }
  // Invariant under the period vectors.
  for (const auto& [v, c] : d.entries()) {
    CHECK(d[{(v.col + 2) % 14, (v.row + 12) % 14}] == 4);
    CHECK(d[{v.col, (v.row + 7) % 14}] == 4);
  }
  CHECK_THROWS_AS(gen_diag7(GridSpec(13, 13, Topology::torus)), InputError);
  CHECK_THROWS_AS(gen_diag7(GridSpec(14, 13, Topology::torus)), InputError);
  CHECK(gen_diag7(GridSpec(14, 7, Topology::torus)).size() == 28);

  const Diag7Layout plane = diag7_layout(GridSpec(12, 12));
  CHECK(is_solvable(plane.distribution));
  CHECK(plane.distribution.size() == plane.pattern_pebbles + plane.fill_pebbles);
}

TEST_CASE("row of ones") {
  const GridSpec g = row_ones_grid(5);
  const Distribution bare = gen_row_ones(g, 5, false);
  CHECK(bare.size() == 5);
  CHECK(coverage(bare).ratio == 1);
  const Distribution full = gen_row_ones(g, 5, true);
  CHECK(full.size() == 7);
  CHECK(marginal_covering_ratio(bare, full) == Rational(15, 2));
  CHECK(marginal_covering_ratio(gen_row_ones(row_ones_grid(1), 1, false), gen_row_ones(row_ones_grid(1), 1, true)) ==
        Rational(7, 2));
  CHECK_THROWS_AS(gen_row_ones(GridSpec(5, 5), 5, true), InputError);
}

TEST_CASE("cascade of ones") {
  Rational prev = 0;
  for (int k = 1; k <= 4; ++k) {
    const Extension e = gen_cascade_ones(cascade_ones_grid(k), k);
    CHECK(e.added.size() == 1);
    CHECK(coverage(e.added).cov == 1);
    const Rational r = marginal_covering_ratio(e.base, e.combined());
    CHECK(r == 2 * k + 3);
    CHECK(r > prev);
    prev = r;
  }
}

TEST_CASE("striped family") {
  const Distribution d = gen_stripes(1, 1);
  CHECK(d.size() == 12);
  CHECK(d.grid() == GridSpec(3, 6));
  CHECK(coverage(d).ratio == 1);
  CHECK(stripes_ratio(2, 2) == Rational(35, 27));
  CHECK(stripes_augmented_ratio(2, 2) == Rational(11, 7));
  for (const auto& v : d.grid().vertices())
    if (v.row % 5 == 2 || v.row % 5 == 3) CHECK(weight(d, v) >= Rational(9, 8));
  CHECK_THROWS_AS(gen_stripes(0, 1), InputError);
}

TEST_CASE("striped augmentation") {
  const StripeAugmentation a = augment_stripes(1, 1);
  CHECK(a.units == std::vector<Vertex>{{1, 0}, {1, 5}});
  CHECK(a.augmented.size() == 16);
  CHECK(is_solvable(a.augmented));
  for (int c = 0; c < 3; ++c) CHECK(can_move_k(a.augmented, {c, 5}, 4));
  CHECK(a.coverage.front() == 12);
  CHECK(a.coverage.back() == 18);
  CHECK(gen_stripes_augmented(1, 1) == a.augmented);
}

TEST_CASE("uniform fractional") {
  const auto d = gen_uniform_frac(GridSpec(9, 9, Topology::torus), Rational(1, 9));
  CHECK(d.size() == 9);
  CHECK(d.unit_count() == 81);
  CHECK_THROWS_AS(gen_uniform_frac(GridSpec(3, 3), 0), InputError);
}

TEST_CASE("density 1/7 lattice") {
  const auto bases = index7_bases();
  CHECK(bases.size() == 8);
  const Density7Pattern p = find_density7_pattern(14);
  CHECK(p.basis[0] == LatticeVector{7, 0});
  CHECK(p.basis[1] == LatticeVector{2, 1});
  CHECK(p.rejected.size() == 3);
  CHECK(p.min_weight == Rational(1143, 1024));
  CHECK(p.distribution.size() == 28);
  CHECK(fractional_solvable(p.distribution));
  CHECK(p.classes.size() == 7);
  CHECK_THROWS_AS(find_density7_pattern(10), InputError);
}

TEST_CASE("block composition") {
  Distribution inner(GridSpec(2, 2));
  inner.set({0, 0}, 2).set({1, 1}, 1);
  CHECK(gen_block_composition(2, inner) == inner);
  CHECK(gen_block_composition(4, inner).size() == 12);
  for (int n = 2; n <= 5; ++n) {
    const Distribution d = gen_block_composition(n, inner);
    CHECK(d.size() == block_composition_size(n, 2, 3));
    CHECK(is_solvable(d));
  }
  CHECK(block_composition_size(5, 2, 3) == 4 * 3 + 1 + 2 * 1 * 2 * 2);
  CHECK_THROWS_AS(gen_block_composition(1, inner), InputError);
}

TEST_CASE("pattern specs") {
  PatternSpec s;
  s.family = parse_family("stripes");
  s.params = {{"n", 1}, {"m", 1}};
  CHECK(std::get<Distribution>(generate(s)).size() == 12);
  CHECK(parse_family("row_ones") == Family::row_ones);
  CHECK(to_string(Family::cascade_ones) == "cascade-ones");
  CHECK_THROWS_AS(parse_family("nope"), InputError);

  PatternSpec u;
  u.family = Family::uniform_frac;
  u.params = {{"width", 9}, {"height", 9}, {"torus", 1}, {"q", Rational(1, 9)}};
  CHECK(std::get<ContinuousDistribution>(generate(u)).size() == 9);

  PatternSpec bad;
  bad.family = Family::stripes;
  bad.params = {{"n", Rational(1, 2)}, {"m", 1}};
  CHECK_THROWS_AS(generate(bad), InputError);
  bad.params = {{"n", 1}};
  CHECK_THROWS_AS(generate(bad), InputError);
}
