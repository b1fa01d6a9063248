#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pebblekit/grid.hpp"
#include "pebblekit/rational.hpp"
#include "pebblekit/reach.hpp"

namespace pebblekit {

using AnyDistribution = std::variant<Distribution, ContinuousDistribution>;

// ---------------------------------------------------------------------------------------
// Diagonal pattern: units of 4 on every other vertex of every 7th anti-diagonal.

/// Vertices carrying a unit: (col + row) % 7 == 0 and col even.
bool diag7_site(const Vertex& v);

struct Diag7Layout {
  Distribution distribution;
  /// Pebbles of the periodic pattern itself.
  Count pattern_pebbles = 0;
  /// Single pebbles added on a plane grid at vertices the pattern leaves unreachable.
  Count fill_pebbles = 0;
};

/// On a torus the width must be a multiple of 14 and the height a multiple of 7, the
/// pattern's period lattice being spanned by (2,-2) and (0,7). Plane grids get fill pebbles.
Diag7Layout diag7_layout(const GridSpec& g, const SearchOptions& options = {});
Distribution gen_diag7(const GridSpec& g, const SearchOptions& options = {});

// ---------------------------------------------------------------------------------------
// A row of single pebbles, optionally led by a unit of 2 that sets off a cascade.

struct RowLayout {
  int row = 0;
  int first_col = 0;
};

/// Ones at (first_col .. first_col+k-1, row); the unit of 2 sits at first_col - 1.
/// The row is the middle one and first_col is 4, so the cascade stays two vertices off the border.
RowLayout row_ones_layout(const GridSpec& g, int k);
Distribution gen_row_ones(const GridSpec& g, int k, bool with_unit2);
/// Smallest grid that keeps the cascade of the k-row two vertices off the border.
GridSpec row_ones_grid(int k);

struct Extension {
  Distribution base;
  /// Pebbles added on top of base.
  Distribution added;
  Distribution combined() const { return base + added; }
};

/// Base: a unit of 2, one empty vertex w, then k ones, all in one row. Added: one pebble
/// on w, which completes a move into the row of ones and lets it cascade.
Extension gen_cascade_ones(const GridSpec& g, int k);
GridSpec cascade_ones_grid(int k);

// ---------------------------------------------------------------------------------------
// Striped family on a (2n+1) x (5m+1) plane grid: units of 3 on the even columns of every
// fifth row.

Distribution gen_stripes(int n, int m);

struct StripeAugmentation {
  Distribution base;
  Distribution augmented;
  /// Units of 2 in placement order, two per band between consecutive striped rows.
  std::vector<Vertex> units;
  /// Coverage after each band: entry 0 is the base, entry j the first j bands augmented.
  std::vector<std::size_t> coverage;
};

/// Places two units of 2 per band (4m pebbles in all). Band j covers rows 5j..5j+5.
/// Its candidate vertices are the empty ones in those rows, ordered by row distance to the
/// nearer striped row, then row, then column. The first pair in that order making rows
/// 5j+1..5j+4 reachable is kept. Throws if a band has no such pair or the result is not
/// solvable.
StripeAugmentation augment_stripes(int n, int m, const SearchOptions& options = {});
Distribution gen_stripes_augmented(int n, int m, const SearchOptions& options = {});

/// Closed forms for the striped family.
Rational stripes_ratio(int n, int m);
Rational stripes_ceiling(int n, int m);
Rational stripes_augmented_ratio(int n, int m);

// ---------------------------------------------------------------------------------------

ContinuousDistribution gen_uniform_frac(const GridSpec& g, const Rational& q);

// ---------------------------------------------------------------------------------------
// Lattice patterns of density 1/7.

using LatticeVector = std::array<int, 2>;

/// A coset of the lattice seen from one representative vertex.
struct VertexClass {
  Vertex representative;
  /// shells[d] = lattice points at distance d on the torus.
  std::vector<long> shells;
  /// Full weight on the torus.
  Rational weight;
  /// Shell sum truncated at core_radius, the first radius where it reaches 1.
  Rational core_weight;
  int core_radius = -1;
};

struct Density7Pattern {
  std::array<LatticeVector, 2> basis{};
  GridSpec grid{7, 7, Topology::torus};
  /// One pebble per lattice point.
  Distribution distribution{GridSpec{7, 7, Topology::torus}};
  Rational min_weight;
  std::vector<VertexClass> classes;
  /// Bases tried before the accepted one, with their minimum weight.
  std::vector<std::pair<std::array<LatticeVector, 2>, Rational>> rejected;
};

/// Index-7 sublattices in Hermite normal form: (1,0),(0,7) first, then (7,0),(a,1) for
/// a = 0..6.
std::vector<std::array<LatticeVector, 2>> index7_bases();

/// One pebble per point of `basis` on the side x side torus; side must be a multiple of 7.
Distribution lattice_distribution(const std::array<LatticeVector, 2>& basis, int side);

/// First basis in index7_bases() whose pattern has weight >= 1 everywhere.
Density7Pattern find_density7_pattern(int side = 14);

// ---------------------------------------------------------------------------------------

/// Tiles the n x n plane grid with copies of `inner` (an m x m plane distribution) on the
/// k x k blocks of n = k*m + r, and puts one pebble on each of the r^2 + 2rkm leftover vertices.
Distribution gen_block_composition(int n, const Distribution& inner);

/// k^2 * inner_size + r^2 + 2rkm.
Count block_composition_size(int n, int m, Count inner_size);

// ---------------------------------------------------------------------------------------

enum class Family {
  diag7,
  row_ones,
  cascade_ones,
  stripes,
  stripes_augmented,
  uniform_frac,
  density7_frac,
  block_composition,
};

std::string_view to_string(Family f);
Family parse_family(std::string_view name);

/// A family plus its parameters. Grid-based families read width/height/torus; stripes read
/// n and m; row and cascade families read k; uniform_frac reads q.
struct PatternSpec {
  Family family = Family::diag7;
  std::map<std::string, Rational> params;
  /// Inner distribution for block_composition.
  std::optional<Distribution> inner;

  void validate() const;
  long integer(const std::string& key) const;
  long integer_or(const std::string& key, long fallback) const;
  const Rational& value(const std::string& key) const;
  GridSpec grid() const;
};

AnyDistribution generate(const PatternSpec& spec, const SearchOptions& options = {});

}  // namespace pebblekit
