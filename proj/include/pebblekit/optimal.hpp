#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pebblekit/grid.hpp"
#include "pebblekit/rational.hpp"
#include "pebblekit/reach.hpp"

namespace pebblekit {

struct OptimalOptions {
  SearchOptions search;
  /// Candidate distributions examined in total before giving up.
  std::uint64_t candidate_cap = 20'000'000;
};

struct OptimalResult {
  GridSpec grid{1, 1};
  Count pi_opt = 0;
  Distribution witness{GridSpec{1, 1}};
  /// Reach-engine states plus candidate distributions examined.
  std::uint64_t nodes_explored = 0;
  /// Candidates that survived the symmetry and weight filters and went to the engine.
  std::uint64_t solvability_checks = 0;
  /// Fractional optimum of the grid, a lower bound on pi_opt.
  Rational fractional_bound;
};

/// Grid automorphisms as vertex-index permutations: the dihedral symmetries that map the
/// grid onto itself, combined with all translations on a torus.
std::vector<std::vector<std::size_t>> grid_symmetries(const GridSpec& g);

/// Exact optimal pebbling number. Sizes are tried upwards from the fractional optimum;
/// at each size every multiset of vertices is enumerated once per symmetry class, those
/// with some vertex of weight below 1 are dropped, and the rest go to the engine. The first
/// solvable one is the witness, which certifies minimality since all smaller sizes failed.
/// Throws BudgetExceeded with the bounds reached when the candidate cap runs out.
OptimalResult optimal_pebbling_number(const GridSpec& g, const OptimalOptions& options = {});

struct SeriesEntry {
  int n = 0;
  Count pi_opt = 0;
  /// pi_opt / n^2
  Rational ratio;
  /// Best k^2 pi(m) + r^2 + 2rkm over smaller computed sides m, if any.
  std::optional<Count> composed_bound;
  Rational fractional_bound;
  Distribution witness{GridSpec{1, 1}};
};

/// pi_opt(n x n) for n = 1..max_n, each checked against the composition upper bound from the
/// smaller sides and the fractional lower bound.
std::vector<SeriesEntry> optimal_ratio_series(int max_n, const OptimalOptions& options = {},
                                              const std::function<void(const SeriesEntry&)>& progress = {});

}  // namespace pebblekit
