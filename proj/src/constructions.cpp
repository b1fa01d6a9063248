#include "pebblekit/constructions.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "pebblekit/weight.hpp"

namespace pebblekit {

namespace {

void require_positive(long value, const char* name) {
  if (value < 1) throw InputError(std::string(name) + " must be at least 1, got " + std::to_string(value));
}

long floor_mod(long a, long m) {
  const long r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

// ---------------------------------------------------------------------------------------

bool diag7_site(const Vertex& v) { return floor_mod(v.col + v.row, 7) == 0 && floor_mod(v.col, 2) == 0; }

Diag7Layout diag7_layout(const GridSpec& g, const SearchOptions& options) {
  if (g.is_torus() && (g.width() % 14 != 0 || g.height() % 7 != 0))
    throw InputError("diagonal pattern needs a torus width divisible by 14 and height divisible by 7, got " +
                     to_string(g));
  Diag7Layout out{Distribution(g)};
  for (const auto& v : g.vertices())
    if (diag7_site(v)) out.distribution.set(v, 4);
  out.pattern_pebbles = out.distribution.size();
  if (!g.is_torus()) {
    const auto cov = coverage(out.distribution, options);
    for (const auto& v : g.vertices())
      if (!cov.reachable.count(v)) out.distribution.add(v, 1);
    out.fill_pebbles = out.distribution.size() - out.pattern_pebbles;
  }
  return out;
}

Distribution gen_diag7(const GridSpec& g, const SearchOptions& options) { return diag7_layout(g, options).distribution; }

// ---------------------------------------------------------------------------------------

RowLayout row_ones_layout(const GridSpec& g, int k) {
  require_positive(k, "row length k");
  if (g.is_torus()) throw InputError("row families live on plane grids");
  RowLayout l{g.height() / 2, 4};
  if (l.row < 2 || g.height() - 1 - l.row < 2)
    throw InputError("grid height " + std::to_string(g.height()) + " leaves no margin of 2 around the row");
  if (l.first_col + k > g.width() - 3)
    throw InputError("a row of " + std::to_string(k) + " ones does not fit in width " + std::to_string(g.width()));
  return l;
}

Distribution gen_row_ones(const GridSpec& g, int k, bool with_unit2) {
  const RowLayout l = row_ones_layout(g, k);
  Distribution d(g);
  for (int i = 0; i < k; ++i) d.set({l.first_col + i, l.row}, 1);
  if (with_unit2) d.set({l.first_col - 1, l.row}, 2);
  return d;
}

GridSpec row_ones_grid(int k) {
  require_positive(k, "row length k");
  return GridSpec(k + 8, 7);
}

Extension gen_cascade_ones(const GridSpec& g, int k) {
  require_positive(k, "row length k");
  if (g.is_torus()) throw InputError("row families live on plane grids");
  const int row = g.height() / 2;
  if (row < 2 || g.height() - 1 - row < 2)
    throw InputError("grid height " + std::to_string(g.height()) + " leaves no margin of 2 around the row");
  // unit at column 3, gap at 4, ones at 5 .. k+4; the cascade ends at k+5.
  if (k + 5 > g.width() - 3)
    throw InputError("a cascade of " + std::to_string(k) + " ones does not fit in width " + std::to_string(g.width()));
  Extension e{Distribution(g), Distribution(g)};
  e.base.set({3, row}, 2);
  for (int i = 0; i < k; ++i) e.base.set({5 + i, row}, 1);
  e.added.set({4, row}, 1);
  return e;
}

GridSpec cascade_ones_grid(int k) {
  require_positive(k, "row length k");
  return GridSpec(k + 9, 7);
}

// ---------------------------------------------------------------------------------------

Distribution gen_stripes(int n, int m) {
  require_positive(n, "n");
  require_positive(m, "m");
  Distribution d(GridSpec(2 * n + 1, 5 * m + 1));
  for (int j = 0; j <= m; ++j)
    for (int c = 0; c <= 2 * n; c += 2) d.set({c, 5 * j}, 3);
  return d;
}

StripeAugmentation augment_stripes(int n, int m, const SearchOptions& options) {
  StripeAugmentation out{gen_stripes(n, m), gen_stripes(n, m), {}, {}};
  const GridSpec& g = out.base.grid();
  out.coverage.push_back(coverage(out.base, options).cov);

  for (int j = 0; j < m; ++j) {
    const int top = 5 * j;
    const int bottom = top + 5;
    std::vector<Vertex> candidates;
    for (int r = top; r <= bottom; ++r)
      for (int c = 0; c < g.width(); ++c)
        if (out.augmented[{c, r}] == 0) candidates.push_back({c, r});
    auto tier = [&](const Vertex& v) { return std::min(v.row - top, bottom - v.row); };
    std::stable_sort(candidates.begin(), candidates.end(), [&](const Vertex& a, const Vertex& b) {
      return std::make_pair(tier(a), a) < std::make_pair(tier(b), b);
    });

    bool placed = false;
    for (std::size_t a = 0; a < candidates.size() && !placed; ++a)
      for (std::size_t b = a + 1; b < candidates.size() && !placed; ++b) {
        Distribution trial = out.augmented;
        trial.set(candidates[a], 2);
        trial.set(candidates[b], 2);
        const ReachEngine engine(trial, options);
        bool band_covered = true;
        for (int r = top + 1; r < bottom && band_covered; ++r)
          for (int c = 0; c < g.width() && band_covered; ++c) {
            const auto q = engine.query({c, r});
            if (q.status == ReachStatus::budget_exceeded)
              throw BudgetExceeded("stripe augmentation: search budget exceeded at " + to_string(Vertex{c, r}));
            band_covered = q.status == ReachStatus::reachable;
          }
        if (band_covered) {
          out.augmented = std::move(trial);
          out.units.push_back(candidates[a]);
          out.units.push_back(candidates[b]);
          placed = true;
        }
      }
    if (!placed)
      throw std::runtime_error("no pair of units of 2 covers band " + std::to_string(j) + " for n=" +
                               std::to_string(n) + ", m=" + std::to_string(m));
    out.coverage.push_back(coverage(out.augmented, options).cov);
  }
  if (out.coverage.back() != g.vertex_count())
    throw std::runtime_error("augmented stripes are not solvable for n=" + std::to_string(n) +
                             ", m=" + std::to_string(m));
  return out;
}

Distribution gen_stripes_augmented(int n, int m, const SearchOptions& options) {
  return augment_stripes(n, m, options).augmented;
}

Rational stripes_ratio(int n, int m) {
  Rational r((3L * m + 1) * (2L * n + 1), 3L * (n + 1) * (m + 1));
  r.canonicalize();
  return r;
}

Rational stripes_ceiling(int n, int m) {
  Rational r((5L * m + 1) * (2L * n + 1), 3L * (n + 1) * (m + 1));
  r.canonicalize();
  return r;
}

Rational stripes_augmented_ratio(int n, int m) {
  Rational r((5L * m + 1) * (2L * n + 1), 3L * (n + 1) * (m + 1) + 4L * m);
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------------------------------

ContinuousDistribution gen_uniform_frac(const GridSpec& g, const Rational& q) {
  if (q <= 0) throw InputError("uniform amount must be positive, got " + to_string(q));
  ContinuousDistribution d(g);
  for (const auto& v : g.vertices()) d.set(v, q);
  return d;
}

// ---------------------------------------------------------------------------------------

namespace {

using Basis = std::array<LatticeVector, 2>;

long determinant(const Basis& b) {
  return static_cast<long>(b[0][0]) * b[1][1] - static_cast<long>(b[0][1]) * b[1][0];
}

bool in_lattice(const Basis& b, long c, long r) {
  const long det = determinant(b);
  const long x = c * b[1][1] - r * b[1][0];
  const long y = r * b[0][0] - c * b[0][1];
  return x % det == 0 && y % det == 0;
}

std::string basis_string(const Basis& b) {
  return "(" + std::to_string(b[0][0]) + "," + std::to_string(b[0][1]) + "),(" + std::to_string(b[1][0]) + "," +
         std::to_string(b[1][1]) + ")";
}

}  // namespace

std::vector<std::array<LatticeVector, 2>> index7_bases() {
  std::vector<Basis> out;
  out.push_back({LatticeVector{1, 0}, LatticeVector{0, 7}});
  for (int a = 0; a < 7; ++a) out.push_back({LatticeVector{7, 0}, LatticeVector{a, 1}});
  return out;
}

Distribution lattice_distribution(const std::array<LatticeVector, 2>& basis, int side) {
  if (side < 7 || side % 7 != 0) throw InputError("lattice torus side must be a positive multiple of 7");
  if (determinant(basis) == 0) throw InputError("degenerate lattice basis " + basis_string(basis));
  if (!in_lattice(basis, side, 0) || !in_lattice(basis, 0, side))
    throw InputError("lattice " + basis_string(basis) + " does not tile the " + std::to_string(side) + " torus");
  const GridSpec g(side, side, Topology::torus);
  Distribution d(g);
  for (const auto& v : g.vertices())
    if (in_lattice(basis, v.col, v.row)) d.set(v, 1);
  return d;
}

namespace {

VertexClass describe_class(const Distribution& d, const Vertex& rep) {
  const GridSpec& g = d.grid();
  VertexClass cls;
  cls.representative = rep;
  for (const auto& [v, c] : d.entries()) {
    const auto dist = static_cast<std::size_t>(distance(g, rep, v));
    if (cls.shells.size() <= dist) cls.shells.resize(dist + 1, 0);
    cls.shells[dist] += c;
  }
  Rational partial = 0;
  for (std::size_t r = 0; r < cls.shells.size(); ++r) {
    const Rational term = Rational(cls.shells[r]) * pow2_inv(static_cast<std::int64_t>(r));
    cls.weight += term;
    if (cls.core_radius < 0) {
      partial += term;
      if (partial >= 1) {
        cls.core_radius = static_cast<int>(r);
        cls.core_weight = partial;
      }
    }
  }
  if (cls.core_radius < 0) cls.core_weight = partial;
  return cls;
}

}  // namespace

Density7Pattern find_density7_pattern(int side) {
  Density7Pattern p;
  for (const auto& basis : index7_bases()) {
    Distribution d = lattice_distribution(basis, side);
    const auto field = weight_field(d);
    const Rational least = *std::min_element(field.begin(), field.end());
    if (least < 1) {
      p.rejected.emplace_back(basis, least);
      continue;
    }
    p.basis = basis;
    p.grid = d.grid();
    p.min_weight = least;
    // One representative per coset, first in row-major order.
    std::vector<Vertex> reps;
    for (const auto& v : d.grid().vertices()) {
      const bool known = std::any_of(reps.begin(), reps.end(), [&](const Vertex& u) {
        return in_lattice(basis, v.col - u.col, v.row - u.row);
      });
      if (!known) reps.push_back(v);
    }
    for (const auto& rep : reps) p.classes.push_back(describe_class(d, rep));
    p.distribution = std::move(d);
    return p;
  }
  throw std::runtime_error("no index-7 lattice reaches weight 1 everywhere on the " + std::to_string(side) +
                           " torus");
}

// ---------------------------------------------------------------------------------------

Distribution gen_block_composition(int n, const Distribution& inner) {
  const GridSpec& ig = inner.grid();
  if (ig.is_torus() || ig.width() != ig.height())
    throw InputError("inner distribution must live on a square plane grid, got " + to_string(ig));
  const int m = ig.width();
  if (n < m) throw InputError("outer side " + std::to_string(n) + " is smaller than the block side " + std::to_string(m));
  const int k = n / m;
  const GridSpec g(n, n);
  Distribution d(g);
  for (const auto& v : g.vertices()) {
    if (v.col >= k * m || v.row >= k * m)
      d.set(v, 1);
    else
      d.set(v, inner[{v.col % m, v.row % m}]);
  }
  return d;
}

Count block_composition_size(int n, int m, Count inner_size) {
  require_positive(m, "block side m");
  if (n < m) throw InputError("outer side is smaller than the block side");
  const Count k = n / m;
  const Count r = n % m;
  return k * k * inner_size + r * r + 2 * r * k * m;
}

// ---------------------------------------------------------------------------------------

namespace {

constexpr std::pair<Family, std::string_view> kFamilyNames[] = {
    {Family::diag7, "diag7"},
    {Family::row_ones, "row-ones"},
    {Family::cascade_ones, "cascade-ones"},
    {Family::stripes, "stripes"},
    {Family::stripes_augmented, "stripes-augmented"},
    {Family::uniform_frac, "uniform-frac"},
    {Family::density7_frac, "density7-frac"},
    {Family::block_composition, "block-composition"},
};

}  // namespace

std::string_view to_string(Family f) {
  for (const auto& [fam, name] : kFamilyNames)
    if (fam == f) return name;
  return "unknown";
}

Family parse_family(std::string_view name) {
  std::string norm(name);
  std::replace(norm.begin(), norm.end(), '_', '-');
  for (const auto& [fam, token] : kFamilyNames)
    if (token == norm) return fam;
  throw InputError("unknown pattern family '" + std::string(name) + "'");
}

const Rational& PatternSpec::value(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) throw InputError("pattern " + std::string(to_string(family)) + " needs parameter " + key);
  return it->second;
}

long PatternSpec::integer(const std::string& key) const {
  const Rational& q = value(key);
  if (q.get_den() != 1 || !q.get_num().fits_slong_p())
    throw InputError("parameter " + key + " must be an integer, got " + to_string(q));
  return q.get_num().get_si();
}

long PatternSpec::integer_or(const std::string& key, long fallback) const {
  return params.count(key) ? integer(key) : fallback;
}

GridSpec PatternSpec::grid() const {
  const long w = integer("width");
  const long h = integer("height");
  require_positive(w, "width");
  require_positive(h, "height");
  return GridSpec(static_cast<int>(w), static_cast<int>(h), integer_or("torus", 0) ? Topology::torus : Topology::plane);
}

void PatternSpec::validate() const {
  switch (family) {
    case Family::diag7:
      (void)grid();
      break;
    case Family::row_ones:
    case Family::cascade_ones:
      require_positive(integer("k"), "k");
      if (params.count("width") || params.count("height")) (void)grid();
      break;
    case Family::stripes:
    case Family::stripes_augmented:
      require_positive(integer("n"), "n");
      require_positive(integer("m"), "m");
      break;
    case Family::uniform_frac:
      (void)grid();
      if (value("q") <= 0) throw InputError("uniform amount q must be positive");
      break;
    case Family::density7_frac: {
      const long side = integer_or("side", 14);
      if (side < 7 || side % 7 != 0) throw InputError("side must be a positive multiple of 7");
      break;
    }
    case Family::block_composition:
      require_positive(integer("n"), "n");
      if (!inner) throw InputError("block composition needs an inner distribution");
      break;
  }
}

AnyDistribution generate(const PatternSpec& spec, const SearchOptions& options) {
  spec.validate();
  switch (spec.family) {
    case Family::diag7:
      return gen_diag7(spec.grid(), options);
    case Family::row_ones: {
      const int k = static_cast<int>(spec.integer("k"));
      const GridSpec g = spec.params.count("width") ? spec.grid() : row_ones_grid(k);
      return gen_row_ones(g, k, spec.integer_or("with_unit2", 1) != 0);
    }
    case Family::cascade_ones: {
      const int k = static_cast<int>(spec.integer("k"));
      const GridSpec g = spec.params.count("width") ? spec.grid() : cascade_ones_grid(k);
      const Extension e = gen_cascade_ones(g, k);
      return spec.integer_or("with_unit", 1) ? e.combined() : e.base;
    }
    case Family::stripes:
      return gen_stripes(static_cast<int>(spec.integer("n")), static_cast<int>(spec.integer("m")));
    case Family::stripes_augmented:
      return gen_stripes_augmented(static_cast<int>(spec.integer("n")), static_cast<int>(spec.integer("m")), options);
    case Family::uniform_frac:
      return gen_uniform_frac(spec.grid(), spec.value("q"));
    case Family::density7_frac:
      return find_density7_pattern(static_cast<int>(spec.integer_or("side", 14))).distribution;
    case Family::block_composition:
      return gen_block_composition(static_cast<int>(spec.integer("n")), *spec.inner);
  }
  throw InputError("unknown pattern family");
}

}  // namespace pebblekit
