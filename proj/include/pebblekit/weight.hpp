#pragma once

#include <vector>

#include "pebblekit/grid.hpp"
#include "pebblekit/rational.hpp"

namespace pebblekit {

/// How sums over "all vertices" are evaluated.
///   finite   - over the vertices of the distribution's own grid (plane or torus)
///   infinite - the distribution is read as sitting on the unbounded square grid
enum class EvalMode { finite, infinite };

/// W_D(u) = sum_v D(v) 2^{-d(u,v)}.
Rational weight(const Distribution& d, const Vertex& u);
Rational weight(const ContinuousDistribution& d, const Vertex& u);

/// W_D on the unbounded grid; `u` may lie outside the distribution's grid.
Rational weight_infinite(const Distribution& d, const Vertex& u);

/// W_D at every grid vertex, indexed by GridSpec::index.
std::vector<Rational> weight_field(const Distribution& d);
std::vector<Rational> weight_field(const ContinuousDistribution& d);

/// max(W_D(u) - 1, 0)
Rational excess(const Distribution& d, const Vertex& u);
inline Rational excess_of(const Rational& w) { return w > 1 ? Rational(w - 1) : Rational(0); }

struct WeightRow {
  Vertex vertex;
  Rational weight;
  Rational excess;
};

struct WeightReport {
  EvalMode mode = EvalMode::finite;
  std::vector<WeightRow> rows;  // finite: every grid vertex; infinite: the excess region
  Rational total_weight;
  Rational total_excess;
  Rational capped_total;        // sum of min(W, 1); infinite mode: 9|D| - total_excess
  Rational ceiling;
  Rational min_weight;          // finite mode only
};

WeightReport weight_report(const Distribution& d, EvalMode mode = EvalMode::finite);

/// sum_v min(W_D(v), 1) / |D| over the grid's vertices.
Rational covering_ratio_ceiling(const Distribution& d);

/// (9|D| - total excess) / |D| on the unbounded grid. Only plane distributions are accepted.
Rational ceiling_infinite(const Distribution& d);

/// Numerator of the ceiling, sum_v min(W_D(v), 1), in the given mode.
Rational ceiling_numerator(const Distribution& d, EvalMode mode);

/// Change of the ceiling numerator per added pebble. `dplus` must dominate `d` pointwise
/// and be strictly larger.
Rational marginal_covering_ratio_ceiling(const Distribution& d, const Distribution& dplus,
                                         EvalMode mode = EvalMode::finite);

/// Every vertex has weight at least one.
bool fractional_solvable(const ContinuousDistribution& d);
bool fractional_solvable(const Distribution& d);

/// 1 + sum_{k=1..radius} 4k 2^{-k}: what one pebble contributes to the ball of that radius
/// on the unbounded grid. Tends to 9.
Rational single_pebble_weight_total(int radius);

/// Minimum excess at a size-1 unit of a fractionally solvable distribution (the optimum of
/// unit_excess_problem()).
Rational unit_excess_lower_bound();
/// 9 - unit_excess_lower_bound()
Rational integer_fractional_ratio_bound();

struct UnitExcessCheck {
  Vertex unit;
  Count size = 0;
  Rational excess;
  Rational required;
  bool interior = false;  // the radius-2 ball around the unit is complete
  bool holds = false;
};

struct IfcovBoundReport {
  Count pebbles = 0;
  long long area = 0;  // n^2
  bool fractional_cover = false;
  Rational ratio;              // n^2 / |D|
  Rational ratio_bound;        // 213/25
  Rational required_excess;   // (12/25) |D|
  Rational total_excess;
  Rational unit_excess;        // excess summed over unit vertices
  std::vector<UnitExcessCheck> units;
  bool ratio_within_bound = false;
  bool violation = false;      // some interior unit falls below its per-unit excess bound
};

/// Accounting behind the n^2/|D| <= 213/25 bound for a distribution on an n x n grid.
IfcovBoundReport ifcov_bound_report(const Distribution& d, int n);

}  // namespace pebblekit
