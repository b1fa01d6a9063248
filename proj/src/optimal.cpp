#include "pebblekit/optimal.hpp"

#include <algorithm>
#include <set>

#include "pebblekit/constructions.hpp"
#include "pebblekit/lp.hpp"

namespace pebblekit {

namespace {

using u128 = unsigned __int128;

Vertex transform(int which, const Vertex& v, int w, int h) {
  switch (which) {
    case 0: return v;
    case 1: return {w - 1 - v.col, v.row};
    case 2: return {v.col, h - 1 - v.row};
    case 3: return {w - 1 - v.col, h - 1 - v.row};
    // The rest swap the axes and only apply to square grids.
    case 4: return {v.row, v.col};
    case 5: return {w - 1 - v.row, v.col};
    case 6: return {v.row, h - 1 - v.col};
    default: return {w - 1 - v.row, h - 1 - v.col};
  }
}

class Enumerator {
 public:
  Enumerator(const GridSpec& g, const OptimalOptions& options) : g_(g), options_(options) {
    n_ = g.vertex_count();
    perms_ = grid_symmetries(g);
    diameter_ = g.is_torus() ? g.width() / 2 + g.height() / 2 : g.width() + g.height() - 2;
    dist_.resize(n_ * n_);
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b) dist_[a * n_ + b] = distance(g, g.vertex(a), g.vertex(b));
  }

  // Tries every class of size s; returns the first solvable distribution.
  std::optional<Distribution> search(Count size) {
    if (static_cast<int>(size) + diameter_ + 2 > 126) throw InputError("distribution size out of range for exact weights");
    picks_.clear();
    found_.reset();
    walk(size, 0);
    return found_;
  }

  std::uint64_t candidates() const { return candidates_; }
  std::uint64_t checks() const { return checks_; }
  std::uint64_t engine_nodes() const { return engine_nodes_; }

 private:
  void walk(Count left, std::size_t from) {
    if (found_) return;
    if (left == 0) {
      test();
      return;
    }
    for (std::size_t i = from; i < n_ && !found_; ++i) {
      picks_.push_back(i);
      walk(left - 1, i);
      picks_.pop_back();
    }
  }

  bool canonical() const {
    std::vector<std::size_t> image(picks_.size());
    for (const auto& p : perms_) {
      for (std::size_t i = 0; i < picks_.size(); ++i) image[i] = p[picks_[i]];
      std::sort(image.begin(), image.end());
      if (image < picks_) return false;
    }
    return true;
  }

  bool weights_reach_one() const {
    const u128 one = u128(1) << diameter_;
    for (std::size_t x = 0; x < n_; ++x) {
      u128 w = 0;
      for (std::size_t p : picks_) w += u128(1) << (diameter_ - dist_[x * n_ + p]);
      if (w < one) return false;
    }
    return true;
  }

  void test() {
    if (++candidates_ > options_.candidate_cap)
      throw BudgetExceeded("optimal search on " + to_string(g_) + " ran past " +
                           std::to_string(options_.candidate_cap) + " candidates");
    if (!canonical() || !weights_reach_one()) return;
    ++checks_;
    Distribution d(g_);
    for (std::size_t p : picks_) d.add(g_.vertex(p), 1);
    const ReachEngine engine(d, options_.search);
    auto targets = g_.vertices();
    std::stable_sort(targets.begin(), targets.end(),
                     [&](const Vertex& a, const Vertex& b) { return engine.weight_at(a) < engine.weight_at(b); });
    for (const auto& t : targets) {
      const ReachQuery q = engine.query(t);
      engine_nodes_ += q.nodes;
      if (q.status == ReachStatus::budget_exceeded)
        throw BudgetExceeded("optimal search: reach budget exceeded at " + to_string(t) + " for " +
                             serialize_distribution(d));
      if (q.status == ReachStatus::unreachable) return;
    }
    found_ = std::move(d);
  }

  const GridSpec& g_;
  const OptimalOptions& options_;
  std::size_t n_ = 0;
  int diameter_ = 0;
  std::vector<int> dist_;
  std::vector<std::vector<std::size_t>> perms_;
  std::vector<std::size_t> picks_;
  std::optional<Distribution> found_;
  std::uint64_t candidates_ = 0;
  std::uint64_t checks_ = 0;
  std::uint64_t engine_nodes_ = 0;
};

Count ceil_of(const Rational& q) {
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return static_cast<Count>(c.get_si());
}

}  // namespace

std::vector<std::vector<std::size_t>> grid_symmetries(const GridSpec& g) {
  const int w = g.width();
  const int h = g.height();
  const int shapes = w == h ? 8 : 4;
  std::set<std::vector<std::size_t>> out;
  const int shifts_c = g.is_torus() ? w : 1;
  const int shifts_r = g.is_torus() ? h : 1;
  for (int t = 0; t < shapes; ++t)
    for (int dc = 0; dc < shifts_c; ++dc)
      for (int dr = 0; dr < shifts_r; ++dr) {
        std::vector<std::size_t> perm(g.vertex_count());
        for (std::size_t i = 0; i < perm.size(); ++i) {
          Vertex v = transform(t, g.vertex(i), w, h);
          v.col = (v.col + dc) % w;
          v.row = (v.row + dr) % h;
          perm[i] = g.index(v);
        }
        out.insert(std::move(perm));
      }
  return {out.begin(), out.end()};
}

OptimalResult optimal_pebbling_number(const GridSpec& g, const OptimalOptions& options) {
  OptimalResult res;
  res.grid = g;
  res.fractional_bound = fractional_optimal_pebbling(g).value;
  Enumerator e(g, options);
  const auto upper = static_cast<Count>(g.vertex_count());
  for (Count s = std::max<Count>(1, ceil_of(res.fractional_bound)); s <= upper; ++s) {
    std::optional<Distribution> hit;
    try {
      hit = e.search(s);
    } catch (const BudgetExceeded& ex) {
      throw BudgetExceeded(std::string(ex.what()) + "; bounds so far: " + std::to_string(s) +
                           " <= pi_opt <= " + std::to_string(upper));
    }
    if (hit) {
      res.pi_opt = s;
      res.witness = std::move(*hit);
      break;
    }
  }
  res.nodes_explored = e.candidates() + e.engine_nodes();
  res.solvability_checks = e.checks();
  if (res.pi_opt == 0) throw std::logic_error("one pebble per vertex must be solvable");
  if (!is_solvable(res.witness, options.search)) throw std::logic_error("optimal witness failed re-verification");
  return res;
}

std::vector<SeriesEntry> optimal_ratio_series(int max_n, const OptimalOptions& options,
                                              const std::function<void(const SeriesEntry&)>& progress) {
  if (max_n < 1) throw InputError("series needs max_n >= 1");
  std::vector<SeriesEntry> out;
  for (int n = 1; n <= max_n; ++n) {
    const OptimalResult r = optimal_pebbling_number(GridSpec(n, n), options);
    SeriesEntry e;
    e.n = n;
    e.pi_opt = r.pi_opt;
    e.ratio = Rational(static_cast<long>(r.pi_opt), static_cast<long>(n) * n);
    e.ratio.canonicalize();
    e.fractional_bound = r.fractional_bound;
    e.witness = r.witness;
    for (const auto& prev : out) {
      const Count bound = block_composition_size(n, prev.n, prev.pi_opt);
      if (!e.composed_bound || bound < *e.composed_bound) e.composed_bound = bound;
    }
    out.push_back(e);
    if (progress) progress(out.back());
  }
  return out;
}

}  // namespace pebblekit
