#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <vector>

#include "pebblekit/grid.hpp"
#include "pebblekit/rational.hpp"

namespace pebblekit {

enum class SearchStrategy {
  /// Backward requirement search where its tables fit, forward search otherwise.
  automatic,
  forward,
};

struct SearchOptions {
  /// States expanded per query before giving up.
  std::uint64_t node_cap = 10'000'000;
  /// Workers used by coverage(); 0 reads PEBBLEKIT_THREADS and falls back to 1.
  unsigned threads = 0;
  SearchStrategy strategy = SearchStrategy::automatic;
};

unsigned resolve_threads(unsigned requested);

enum class ReachStatus { reachable, unreachable, budget_exceeded };

struct ReachQuery {
  ReachStatus status = ReachStatus::unreachable;
  std::uint64_t nodes = 0;
};

/// Decides whether k pebbles can be gathered on a target.
///
/// The default search runs backwards: starting from k pebbles required at the target it
/// undoes moves, turning one required pebble into two on a neighbour, until the
/// requirement fits inside D. A requirement R can only be met if W_R <= W_D everywhere,
/// which bounds the search tightly. Only one deficit vertex is branched on per step.
///
/// The forward search is kept for grids too large for the backward tables. Two sound
/// reductions keep its state space small:
///  * A legal move never increases W at any vertex and a vertex holding c pebbles has
///    W >= c, so a target with W_D(t) < k is out of reach and a vertex with W_D(v) < 2
///    never emits a move. Moves therefore only start inside the "active" set
///    {v : W_D(v) >= 2}; a pebble moved onto an inactive vertex other than the target
///    stays there for good, so such moves are never tried.
///  * Distinct connected components of the active set cannot exchange pebbles (their
///    common neighbours are inactive), so each component is searched on its own.
/// Within a component the search is a depth-first walk over states with a transposition
/// table and the same weight cutoff applied to every intermediate state.
class ReachEngine {
 public:
  explicit ReachEngine(const Distribution& d, SearchOptions options = {});
  ~ReachEngine();
  ReachEngine(ReachEngine&&) noexcept;
  ReachEngine& operator=(ReachEngine&&) noexcept;

  ReachQuery query(const Vertex& target, Count k = 1) const;

  const Distribution& distribution() const noexcept { return dist_; }
  const SearchOptions& options() const noexcept { return options_; }
  const Rational& weight_at(const Vertex& v) const;
  bool active(const Vertex& v) const;
  std::size_t component_count() const;

 private:
  struct Impl;
  Distribution dist_;
  SearchOptions options_;
  std::unique_ptr<Impl> impl_;
};

/// One (from -> to) pebbling move: D(from) -= 2, D(to) += 1.
Distribution apply_move(const Distribution& d, const Vertex& from, const Vertex& to);

ReachQuery query_reachable(const Distribution& d, const Vertex& t, const SearchOptions& options = {});

/// Throws BudgetExceeded when the search cannot decide.
bool is_reachable(const Distribution& d, const Vertex& t, const SearchOptions& options = {});
bool can_move_k(const Distribution& d, const Vertex& t, Count k, const SearchOptions& options = {});

struct CoverageReport {
  std::set<Vertex> reachable;
  std::size_t cov = 0;
  Rational ratio;
  std::set<Vertex> boundary;
  std::uint64_t nodes = 0;
};

CoverageReport coverage(const Distribution& d, const SearchOptions& options = {});

/// Throws if any reachable vertex is closer than `margin` to the border of a plane grid;
/// used when a finite grid stands in for the unbounded one.
void require_border_margin(const CoverageReport& report, const GridSpec& g, int margin);

/// Stops at the first unreachable vertex, trying low-weight vertices first.
bool is_solvable(const Distribution& d, const SearchOptions& options = {});

/// Reachable vertices with at least one unreachable neighbour.
std::set<Vertex> boundary_vertices(const Distribution& d, const SearchOptions& options = {});
std::set<Vertex> boundary_of(const GridSpec& g, const std::set<Vertex>& reachable);

/// Vertices reachable under both distributions.
std::set<Vertex> interaction_vertices(const Distribution& d1, const Distribution& d2,
                                      const SearchOptions& options = {});

/// Units whose own coverage is disjoint from the coverage of the rest of the distribution.
std::vector<Vertex> lonely_units(const Distribution& d, const SearchOptions& options = {});

/// (Cov(D') - Cov(D)) / (|D'| - |D|) for D' dominating D.
Rational marginal_covering_ratio(const Distribution& d, const Distribution& dplus,
                                 const SearchOptions& options = {});

}  // namespace pebblekit
