#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "pebblekit/grid.hpp"
#include "pebblekit/rational.hpp"

namespace pebblekit {

/// minimize c.x  subject to  A x >= b,  x >= 0.
struct LpProblem {
  std::vector<Rational> objective;
  std::vector<std::vector<Rational>> constraints;
  std::vector<Rational> rhs;
  std::vector<std::string> variable_names;  // optional

  std::size_t variables() const noexcept { return objective.size(); }
  std::size_t rows() const noexcept { return rhs.size(); }
  /// Throws InputError on inconsistent dimensions.
  void validate() const;
};

enum class LpStatus { optimal, infeasible, unbounded };
std::string_view to_string(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  std::vector<Rational> primal;  // optimal: x*
  std::vector<Rational> dual;    // optimal: y* with A^T y <= c, y >= 0
  Rational objective_value;
  /// unbounded: d >= 0 with A d >= 0 and c.d < 0.
  /// infeasible: Farkas multipliers y >= 0 with A^T y <= 0 and b.y > 0.
  std::vector<Rational> ray;
  std::size_t pivots = 0;
};

/// Two-phase dense simplex over exact rationals with Bland's rule.
LpSolution solve(const LpProblem& p);

/// Primal feasible, dual feasible and equal objectives.
bool verify_certificate(const LpProblem& p, const std::vector<Rational>& primal, const std::vector<Rational>& dual);
bool verify_infeasibility(const LpProblem& p, const std::vector<Rational>& farkas);
bool verify_unbounded_ray(const LpProblem& p, const std::vector<Rational>& ray);

bool primal_feasible(const LpProblem& p, const std::vector<Rational>& x);
bool dual_feasible(const LpProblem& p, const std::vector<Rational>& y);

/// Weight contributions to the neighbourhood of a size-1 unit v. x_i comes from the region
/// behind the i-th neighbour of v, y_i from the region behind the i-th diagonal vertex
/// (neighbours listed counter-clockwise, y_i sitting between x_i and x_{i+1}).
struct ExcessRegionProfile {
  std::array<Rational, 4> x;
  std::array<Rational, 4> y;

  static ExcessRegionProfile from_vector(const std::vector<Rational>& v);
  std::vector<Rational> to_vector() const;
  /// Excess landing on v: (x1+..+x4)/2 + (y1+..+y4)/4.
  Rational excess_at_unit() const;
};

/// Minimum excess at a size-1 unit subject to every vertex within distance 2 reaching weight 1.
/// Variables x1..x4, y1..y4; the optimum is 12/25.
LpProblem unit_excess_problem();

/// Same system with the (1,1)-vertex row carrying 1/8 on y4 instead of the geometric 1/4.
/// Kept for comparison; it is not symmetric under the rotation of the square.
LpProblem unit_excess_problem_as_printed();

struct FractionalOptimum {
  Rational value;
  ContinuousDistribution witness;
  LpSolution lp;
};

/// min sum x_v subject to sum_v x_v 2^{-d(u,v)} >= 1 for every u; variables in row-major order.
LpProblem fractional_pebbling_problem(const GridSpec& g);

/// Smallest continuous distribution with W >= 1 everywhere on the grid.
FractionalOptimum fractional_optimal_pebbling(const GridSpec& g, std::size_t max_vertices = 196);

}  // namespace pebblekit
