#include "pebblekit/weight.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "pebblekit/lp.hpp"

namespace pebblekit {

namespace {

// Sums c * 2^{-d} over (count, distance) pairs as a single dyadic fraction.
class DyadicSum {
 public:
  void add(const mpz_class& count, int dist) {
    if (dist > scale_) {
      num_ <<= static_cast<mp_bitcnt_t>(dist - scale_);
      scale_ = dist;
    }
    num_ += mpz_class(count << static_cast<mp_bitcnt_t>(scale_ - dist));
  }
  void add(const Rational& count, int dist) {
    // Rational counts go through mpq; the dyadic path only serves integer numerators.
    rest_ += count * pow2_inv(dist);
  }
  Rational value() const {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(scale_));
    Rational q(num_, den);
    q.canonicalize();
    return q + rest_;
  }

 private:
  mpz_class num_ = 0;
  int scale_ = 0;
  Rational rest_ = 0;
};

mpz_class as_mpz(Count c) { return mpz_class(static_cast<long>(c)); }

template <class D>
Rational weight_impl(const D& d, const Vertex& u) {
  d.grid().require(u);
  DyadicSum s;
  for (const auto& [v, c] : d.entries()) {
    if constexpr (std::is_same_v<D, Distribution>)
      s.add(as_mpz(c), distance(d.grid(), u, v));
    else
      s.add(c, distance(d.grid(), u, v));
  }
  return s.value();
}

template <class D>
std::vector<Rational> field_impl(const D& d) {
  std::vector<Rational> out;
  out.reserve(d.grid().vertex_count());
  for (const auto& u : d.grid().vertices()) out.push_back(weight_impl(d, u));
  return out;
}

int ceil_log2(Count n) {
  int r = 0;
  while ((Count(1) << r) < n) ++r;
  return r;
}

// Vertices of the unbounded grid where W can exceed 1: within ceil(log2 |D|) of some unit.
std::vector<Vertex> excess_region(const Distribution& d) {
  const int radius = ceil_log2(d.size());
  std::set<Vertex> region;
  for (const auto& [v, c] : d.entries())
    for (int dr = -radius; dr <= radius; ++dr) {
      const int span = radius - std::abs(dr);
      for (int dc = -span; dc <= span; ++dc) region.insert({v.col + dc, v.row + dr});
    }
  return {region.begin(), region.end()};
}

void require_plane(const Distribution& d) {
  if (d.grid().is_torus()) throw InputError("infinite-grid evaluation needs a plane distribution, got a torus");
}

}  // namespace

Rational weight(const Distribution& d, const Vertex& u) { return weight_impl(d, u); }
Rational weight(const ContinuousDistribution& d, const Vertex& u) { return weight_impl(d, u); }

Rational weight_infinite(const Distribution& d, const Vertex& u) {
  require_plane(d);
  DyadicSum s;
  for (const auto& [v, c] : d.entries()) s.add(as_mpz(c), plane_distance(u, v));
  return s.value();
}

std::vector<Rational> weight_field(const Distribution& d) { return field_impl(d); }
std::vector<Rational> weight_field(const ContinuousDistribution& d) { return field_impl(d); }

Rational excess(const Distribution& d, const Vertex& u) { return excess_of(weight(d, u)); }

WeightReport weight_report(const Distribution& d, EvalMode mode) {
  if (d.empty()) throw InputError("weight report of an empty distribution");
  WeightReport rep;
  rep.mode = mode;
  const Rational size(static_cast<long>(d.size()));
  if (mode == EvalMode::finite) {
    const auto field = weight_field(d);
    rep.min_weight = field.empty() ? Rational(0) : field.front();
    for (std::size_t i = 0; i < field.size(); ++i) {
      const Rational& w = field[i];
      WeightRow row{d.grid().vertex(i), w, excess_of(w)};
      rep.total_weight += w;
      rep.total_excess += row.excess;
      rep.capped_total += min(w, Rational(1));
      rep.min_weight = min(rep.min_weight, w);
      rep.rows.push_back(std::move(row));
    }
  } else {
    require_plane(d);
    for (const auto& u : excess_region(d)) {
      Rational w = weight_infinite(d, u);
      Rational e = excess_of(w);
      rep.total_excess += e;
      rep.rows.push_back({u, std::move(w), std::move(e)});
    }
    rep.total_weight = 9 * size;
    rep.capped_total = rep.total_weight - rep.total_excess;
  }
  rep.ceiling = rep.capped_total / size;
  return rep;
}

Rational ceiling_numerator(const Distribution& d, EvalMode mode) {
  if (mode == EvalMode::finite) {
    Rational s = 0;
    for (const auto& w : weight_field(d)) s += min(w, Rational(1));
    return s;
  }
  require_plane(d);
  Rational excess_total = 0;
  for (const auto& u : excess_region(d)) excess_total += excess_of(weight_infinite(d, u));
  return Rational(9 * static_cast<long>(d.size())) - excess_total;
}

Rational covering_ratio_ceiling(const Distribution& d) {
  if (d.empty()) throw InputError("covering ratio ceiling of an empty distribution");
  return ceiling_numerator(d, EvalMode::finite) / Rational(static_cast<long>(d.size()));
}

Rational ceiling_infinite(const Distribution& d) {
  if (d.empty()) throw InputError("covering ratio ceiling of an empty distribution");
  return ceiling_numerator(d, EvalMode::infinite) / Rational(static_cast<long>(d.size()));
}

Rational marginal_covering_ratio_ceiling(const Distribution& d, const Distribution& dplus, EvalMode mode) {
  if (!(d.grid() == dplus.grid())) throw InputError("distributions live on different grids");
  if (!d.dominated_by(dplus)) throw InputError("extended distribution must contain the base pointwise");
  if (dplus.size() <= d.size()) throw InputError("extended distribution must have more pebbles");
  return (ceiling_numerator(dplus, mode) - ceiling_numerator(d, mode)) /
         Rational(static_cast<long>(dplus.size() - d.size()));
}

bool fractional_solvable(const ContinuousDistribution& d) {
  for (const auto& w : weight_field(d))
    if (w < 1) return false;
  return true;
}

bool fractional_solvable(const Distribution& d) { return fractional_solvable(to_continuous(d)); }

Rational single_pebble_weight_total(int radius) {
  if (radius < 0) throw InputError("radius must be non-negative");
  Rational s = 1;
  for (int k = 1; k <= radius; ++k) s += Rational(4 * k) * pow2_inv(k);
  return s;
}

Rational unit_excess_lower_bound() {
  static const Rational bound = [] {
    auto sol = solve(unit_excess_problem());
    if (sol.status != LpStatus::optimal) throw std::logic_error("unit excess LP did not reach an optimum");
    return sol.objective_value;
  }();
  return bound;
}

Rational integer_fractional_ratio_bound() { return Rational(9) - unit_excess_lower_bound(); }

IfcovBoundReport ifcov_bound_report(const Distribution& d, int n) {
  if (d.empty()) throw InputError("bound report of an empty distribution");
  if (n < 1) throw InputError("grid side must be positive");
  IfcovBoundReport rep;
  rep.pebbles = d.size();
  rep.area = static_cast<long long>(n) * n;
  const Rational size(static_cast<long>(rep.pebbles));
  const Rational per_unit = unit_excess_lower_bound();
  rep.ratio = Rational(static_cast<long>(rep.area)) / size;
  rep.ratio_bound = integer_fractional_ratio_bound();
  rep.required_excess = per_unit * size;

  const auto field = weight_field(d);
  rep.fractional_cover = std::all_of(field.begin(), field.end(), [](const Rational& w) { return w >= 1; });
  for (const auto& w : field) rep.total_excess += excess_of(w);

  for (const auto& [v, c] : d.entries()) {
    UnitExcessCheck chk;
    chk.unit = v;
    chk.size = c;
    chk.excess = excess_of(field[d.grid().index(v)]);
    chk.required = per_unit * Rational(static_cast<long>(c));
    chk.interior = ball(d.grid(), v, 2).size() == 13;
    chk.holds = chk.excess >= chk.required;
    rep.unit_excess += chk.excess;
    if (rep.fractional_cover && chk.interior && !chk.holds) rep.violation = true;
    rep.units.push_back(std::move(chk));
  }
  rep.ratio_within_bound = rep.ratio <= rep.ratio_bound;
  return rep;
}

}  // namespace pebblekit
