#include "pebblekit/reach.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <limits>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>
#include <unordered_set>

#include "pebblekit/weight.hpp"

namespace pebblekit {

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PEBBLEKIT_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(std::min<unsigned long>(v, 256));
  }
  return 1;
}

namespace {

using u128 = unsigned __int128;

// Depth-first search inside one active component.
class ComponentSearch {
 public:
  ComponentSearch(const std::vector<std::size_t>& members, std::size_t target, Count k,
                  const std::vector<std::vector<std::size_t>>& grid_nbrs, const std::vector<int>& dist_to_target,
                  const std::vector<Count>& counts, std::uint64_t cap,
                  const std::function<int(std::size_t, std::size_t)>& grid_distance)
      : k_(k), cap_(cap) {
    verts_ = members;
    auto it = std::find(verts_.begin(), verts_.end(), target);
    if (it == verts_.end()) {
      verts_.push_back(target);
      target_ = verts_.size() - 1;
    } else {
      target_ = static_cast<std::size_t>(it - verts_.begin());
    }
    const std::size_t n = verts_.size();
    std::vector<std::size_t> local(grid_nbrs.size(), n);
    for (std::size_t i = 0; i < n; ++i) local[verts_[i]] = i;

    dist_.resize(n);
    for (std::size_t i = 0; i < n; ++i) dist_[i] = dist_to_target[verts_[i]];

    // Only component members emit; a target outside the component only receives.
    toward_.resize(n);
    other_.resize(n);
    const std::size_t emitters = members.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (i == target_ && target_ >= emitters) continue;
      for (std::size_t g : grid_nbrs[verts_[i]]) {
        const std::size_t j = local[g];
        if (j == n) continue;
        (dist_[j] < dist_[i] ? toward_ : other_)[i].push_back(static_cast<std::uint32_t>(j));
      }
    }
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return dist_[a] < dist_[b]; });

    state_.assign(n, 0);
    Count total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Count c = counts[verts_[i]];
      if (c > std::numeric_limits<std::uint16_t>::max())
        throw InputError("more than 65535 pebbles on one vertex is outside the engine's range");
      state_[i] = static_cast<std::uint16_t>(c);
      total += c;
    }

    int dmax = 0;
    for (int d : dist_) dmax = std::max(dmax, d);
    int bits = 0;
    while ((Count(1) << bits) <= total + k) ++bits;
    use_weight_ = dmax + bits + 2 <= 126;
    if (use_weight_) {
      unit_.resize(n);
      for (std::size_t i = 0; i < n; ++i) unit_[i] = u128(1) << (dmax - dist_[i]);
      need_ = u128(static_cast<std::uint64_t>(k)) << dmax;
    }

    pair_.assign(n * n, 0);
    int span = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        pair_[i * n + j] = grid_distance(verts_[i], verts_[j]);
        span = std::max(span, pair_[i * n + j]);
      }
    use_live_ = span + bits + 2 <= 126;
    if (use_live_) {
      span_ = span;
      live_.assign(n, 1);
    }
  }

  ReachQuery run() {
    u128 wt = 0;
    if (use_weight_)
      for (std::size_t i = 0; i < state_.size(); ++i) wt += unit_[i] * state_[i];
    ReachQuery q;
    const bool found = (!use_weight_ || wt >= need_) && dfs(wt);
    q.nodes = nodes_;
    q.status = found ? ReachStatus::reachable : exceeded_ ? ReachStatus::budget_exceeded : ReachStatus::unreachable;
    return q;
  }

 private:
  bool dfs(u128 wt) {
    if (state_[target_] >= k_) return true;
    std::string key(reinterpret_cast<const char*>(state_.data()), state_.size() * sizeof(std::uint16_t));
    if (!seen_.insert(std::move(key)).second) return false;
    if (++nodes_ > cap_) {
      exceeded_ = true;
      return false;
    }
    if (use_live_ && !refresh_live()) return false;
    const std::vector<char> live = use_live_ ? live_ : std::vector<char>();
    for (const auto* moves : {&toward_, &other_}) {
      for (std::size_t v : order_) {
        if (state_[v] < 2) continue;
        for (std::uint32_t u : (*moves)[v]) {
          if (use_live_ && !live[u] && u != target_) continue;
          u128 next = wt;
          if (use_weight_) {
            next = wt + unit_[u] - 2 * unit_[v];
            if (next < need_) continue;
          }
          state_[v] -= 2;
          state_[u] += 1;
          const bool ok = dfs(next);
          state_[v] += 2;
          state_[u] -= 1;
          if (ok) return true;
          if (exceeded_) return false;
        }
      }
    }
    return false;
  }

  // Shrinks the set of vertices that may still hold two pebbles to a fixpoint, counting
  // only pebbles that can still move, then bounds what the target can collect.
  bool refresh_live() {
    const std::size_t n = state_.size();
    occupied_.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (state_[i] > 0) occupied_.push_back(i);
    std::fill(live_.begin(), live_.end(), 1);
    const u128 two = u128(2) << span_;
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t v = 0; v < n; ++v) {
        if (!live_[v]) continue;
        u128 w = u128(state_[v]) << span_;
        const int* row = &pair_[v * n];
        for (std::size_t y : occupied_)
          if (y != v && live_[y]) w += u128(state_[y]) << (span_ - row[y]);
        if (w < two) {
          live_[v] = 0;
          changed = true;
        }
      }
    }
    u128 reach = u128(state_[target_]) << span_;
    const int* row = &pair_[target_ * n];
    for (std::size_t y : occupied_)
      if (y != target_ && live_[y]) reach += u128(state_[y]) << (span_ - row[y]);
    return reach >= (u128(static_cast<std::uint64_t>(k_)) << span_);
  }

  std::vector<std::size_t> verts_;
  std::size_t target_ = 0;
  Count k_;
  std::uint64_t cap_;
  std::vector<int> dist_;
  std::vector<std::vector<std::uint32_t>> toward_, other_;
  std::vector<std::size_t> order_;
  std::vector<std::uint16_t> state_;
  bool use_weight_ = false;
  std::vector<u128> unit_;
  u128 need_ = 0;
  bool use_live_ = false;
  int span_ = 0;
  std::vector<int> pair_;
  std::vector<char> live_;
  std::vector<std::size_t> occupied_;
  std::unordered_set<std::string> seen_;
  std::uint64_t nodes_ = 0;
  bool exceeded_ = false;
};

}  // namespace

namespace {

// Static structure of a distribution: which vertices can ever emit a move and how they
// group into independent components.
struct ActiveAnalysis {
  std::vector<Count> counts;
  std::vector<char> active;
  std::vector<int> component;
  std::vector<std::vector<std::size_t>> members;

  ActiveAnalysis(const GridSpec& g, const std::vector<std::pair<std::size_t, Count>>& units,
                 const std::vector<std::vector<std::size_t>>& nbrs, const std::vector<char>& active_flags) {
    const std::size_t n = g.vertex_count();
    counts.assign(n, 0);
    for (const auto& [i, c] : units) counts[i] = c;
    active = active_flags;
    component.assign(n, -1);
    for (std::size_t s = 0; s < n; ++s) {
      if (!active[s] || component[s] >= 0) continue;
      const int id = static_cast<int>(members.size());
      members.emplace_back();
      std::vector<std::size_t> stack{s};
      component[s] = id;
      while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        members.back().push_back(v);
        for (std::size_t u : nbrs[v])
          if (active[u] && component[u] < 0) {
            component[u] = id;
            stack.push_back(u);
          }
      }
      std::sort(members.back().begin(), members.back().end());
    }
  }
};

// Exact test W(v) >= threshold at every vertex, using a common power-of-two denominator.
std::vector<char> weight_at_least(const GridSpec& g, const std::vector<std::pair<std::size_t, Count>>& units,
                                  Count threshold) {
  const std::size_t n = g.vertex_count();
  const int dmax = g.is_torus() ? g.width() / 2 + g.height() / 2 : g.width() + g.height() - 2;
  Count total = 0;
  for (const auto& u : units) total += u.second;
  int bits = 0;
  while ((Count(1) << bits) <= total + threshold) ++bits;
  std::vector<char> out(n, 0);
  if (dmax + bits + 2 <= 126) {
    const u128 need = u128(static_cast<std::uint64_t>(threshold)) << dmax;
    for (std::size_t i = 0; i < n; ++i) {
      const Vertex v = g.vertex(i);
      u128 w = 0;
      for (const auto& [j, c] : units) w += u128(static_cast<std::uint64_t>(c)) << (dmax - distance(g, v, g.vertex(j)));
      out[i] = w >= need;
    }
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex v = g.vertex(i);
    mpz_class w = 0;
    for (const auto& [j, c] : units) {
      mpz_class term(static_cast<long>(c));
      term <<= static_cast<mp_bitcnt_t>(dmax - distance(g, v, g.vertex(j)));
      w += term;
    }
    mpz_class need(static_cast<long>(threshold));
    need <<= static_cast<mp_bitcnt_t>(dmax);
    out[i] = w >= need;
  }
  return out;
}

// Vertices where a requirement can sit (W_D >= 1) with their pairwise distances and W_D
// on a common power-of-two scale. Built once per distribution.
struct RequirementRegion {
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  static constexpr std::size_t kMaxRegion = 4096;

  bool usable = false;
  Count total = 0;
  int span = 0;
  std::vector<std::size_t> verts;
  std::vector<std::size_t> local;
  std::vector<std::uint16_t> dist;
  std::vector<Count> have;
  std::vector<u128> wd;
  std::vector<std::vector<std::uint32_t>> nbrs;

  RequirementRegion(const GridSpec& g, const std::vector<Count>& counts,
                    const std::vector<std::vector<std::size_t>>& grid_nbrs) {
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> occupied;
    for (std::size_t i = 0; i < n; ++i)
      if (counts[i] > 0) {
        occupied.push_back(i);
        total += counts[i];
      }
    int bits = 0;
    while ((Count(1) << bits) <= 3 * total) ++bits;
    const int diameter = g.is_torus() ? g.width() / 2 + g.height() / 2 : g.width() + g.height() - 2;
    if (diameter + bits + 2 > 126) return;
    local.assign(n, kNone);
    for (std::size_t i = 0; i < n; ++i) {
      u128 w = 0;
      for (std::size_t j : occupied)
        w += u128(static_cast<std::uint64_t>(counts[j])) << (diameter - distance(g, g.vertex(i), g.vertex(j)));
      if (w >= (u128(1) << diameter)) {
        local[i] = verts.size();
        verts.push_back(i);
      }
    }
    const std::size_t m = verts.size();
    if (m > kMaxRegion) return;
    dist.assign(m * m, 0);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b) {
        const int d = distance(g, g.vertex(verts[a]), g.vertex(verts[b]));
        dist[a * m + b] = dist[b * m + a] = static_cast<std::uint16_t>(d);
        span = std::max(span, d);
      }
    have.assign(m, 0);
    wd.assign(m, 0);
    for (std::size_t a = 0; a < m; ++a) {
      have[a] = counts[verts[a]];
      for (std::size_t j : occupied)
        wd[a] += u128(static_cast<std::uint64_t>(counts[j])) << (span - distance(g, g.vertex(verts[a]), g.vertex(j)));
    }
    nbrs.resize(m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t gi : grid_nbrs[verts[a]])
        if (local[gi] != kNone) nbrs[a].push_back(static_cast<std::uint32_t>(local[gi]));
    usable = true;
  }
};

// Backward search over requirement vectors R, starting from k pebbles demanded at the
// target. Undoing a move v -> u trades one required pebble at u for two at v; R is met
// once R <= D. Since moves never raise W anywhere, every R on the way must satisfy
// W_R <= W_D pointwise and |R| <= |D|. Undone moves commute, so it suffices to branch on
// the ways to serve one fixed vertex where R exceeds D.
class RequirementSearch {
 public:
  RequirementSearch(const RequirementRegion& region, std::size_t target, Count k, std::uint64_t cap)
      : r_(region), target_(region.local[target]), k_(k), cap_(cap) {}

  ReachQuery run() {
    const std::size_t m = r_.verts.size();
    req_.assign(m, 0);
    ReachQuery q;
    if (k_ > std::numeric_limits<std::uint16_t>::max() || k_ > r_.total) return q;
    req_[target_] = static_cast<std::uint16_t>(k_);
    std::vector<u128> wr(m);
    bool ok = true;
    for (std::size_t a = 0; a < m; ++a) {
      wr[a] = u128(static_cast<std::uint64_t>(k_)) << (r_.span - r_.dist[a * m + target_]);
      if (wr[a] > r_.wd[a]) ok = false;
    }
    const bool found = ok && dfs(wr, k_);
    q.nodes = nodes_;
    q.status = found ? ReachStatus::reachable : exceeded_ ? ReachStatus::budget_exceeded : ReachStatus::unreachable;
    return q;
  }

 private:
  using Children = std::vector<std::pair<std::uint32_t, std::vector<u128>>>;

  bool fits(const std::vector<u128>& wr, std::size_t u, std::size_t v, std::vector<u128>& out) const {
    const std::size_t m = r_.verts.size();
    const std::uint16_t* du = &r_.dist[u * m];
    const std::uint16_t* dv = &r_.dist[v * m];
    for (std::size_t x = 0; x < m; ++x) {
      const u128 w = wr[x] + (u128(2) << (r_.span - dv[x])) - (u128(1) << (r_.span - du[x]));
      if (w > r_.wd[x]) return false;
      out[x] = w;
    }
    return true;
  }

  bool dfs(const std::vector<u128>& wr, Count size) {
    const std::size_t m = r_.verts.size();
    std::size_t best = RequirementRegion::kNone;
    Children best_children;
    bool deficit = false;
    std::vector<u128> scratch(m);
    for (std::size_t u = 0; u < m; ++u) {
      if (req_[u] <= r_.have[u]) continue;
      deficit = true;
      if (size >= r_.total) break;
      Children children;
      for (std::uint32_t v : r_.nbrs[u])
        if (req_[v] <= std::numeric_limits<std::uint16_t>::max() - 2 && fits(wr, u, v, scratch))
          children.emplace_back(v, scratch);
      if (best == RequirementRegion::kNone || children.size() < best_children.size()) {
        best = u;
        best_children = std::move(children);
        if (best_children.empty()) break;
      }
    }
    if (!deficit) return true;
    if (best_children.empty()) return false;

    std::string key(reinterpret_cast<const char*>(req_.data()), req_.size() * sizeof(std::uint16_t));
    if (!seen_.insert(std::move(key)).second) return false;
    if (++nodes_ > cap_) {
      exceeded_ = true;
      return false;
    }
    for (auto& [v, next] : best_children) {
      req_[best] -= 1;
      req_[v] += 2;
      const bool ok = dfs(next, size + 1);
      req_[best] += 1;
      req_[v] -= 2;
      if (ok) return true;
      if (exceeded_) return false;
    }
    return false;
  }

  const RequirementRegion& r_;
  std::size_t target_;
  Count k_;
  std::uint64_t cap_;
  std::vector<std::uint16_t> req_;
  std::unordered_set<std::string> seen_;
  std::uint64_t nodes_ = 0;
  bool exceeded_ = false;
};

// Full search of one (sub-)distribution for k pebbles on target t.
ReachQuery search_distribution(const GridSpec& g, const std::vector<std::pair<std::size_t, Count>>& units,
                               const std::vector<std::vector<std::size_t>>& nbrs, const std::vector<int>& dist,
                               std::size_t t, Count k, std::uint64_t cap) {
  ReachQuery q;
  const ActiveAnalysis a(g, units, nbrs, weight_at_least(g, units, 2));
  if (a.counts[t] >= k) {
    q.status = ReachStatus::reachable;
    return q;
  }
  std::vector<int> comps;
  if (a.active[t]) {
    comps.push_back(a.component[t]);
  } else {
    // An inactive target never holds two pebbles, so only k == 1 with D(t) == 0 gets here.
    if (k > 1) return q;
    for (std::size_t u : nbrs[t])
      if (a.active[u] && std::find(comps.begin(), comps.end(), a.component[u]) == comps.end())
        comps.push_back(a.component[u]);
  }
  bool exceeded = false;
  for (int c : comps) {
    const std::uint64_t left = cap > q.nodes ? cap - q.nodes : 0;
    ComponentSearch search(a.members[static_cast<std::size_t>(c)], t, k, nbrs, dist, a.counts, left,
                           [&g](std::size_t x, std::size_t y) { return distance(g, g.vertex(x), g.vertex(y)); });
    const ReachQuery r = search.run();
    q.nodes += r.nodes;
    if (r.status == ReachStatus::reachable) {
      q.status = ReachStatus::reachable;
      return q;
    }
    if (r.status == ReachStatus::budget_exceeded) exceeded = true;
  }
  q.status = exceeded ? ReachStatus::budget_exceeded : ReachStatus::unreachable;
  return q;
}

}  // namespace

struct ReachEngine::Impl {
  GridSpec grid;
  std::vector<Count> counts;
  std::vector<std::pair<std::size_t, Count>> units;
  std::vector<Rational> weights;
  std::vector<char> active;
  std::size_t components = 0;
  std::vector<std::vector<std::size_t>> nbrs;
  RequirementRegion region;

  explicit Impl(const Distribution& d) : grid(d.grid()), counts(init_counts(d)), nbrs(init_nbrs(d.grid())),
                                         region(grid, counts, nbrs) {
    const std::size_t n = grid.vertex_count();
    for (const auto& [v, c] : d.entries()) units.emplace_back(grid.index(v), c);
    weights = weight_field(d);
    active.resize(n);
    for (std::size_t i = 0; i < n; ++i) active[i] = weights[i] >= 2;
    components = ActiveAnalysis(grid, units, nbrs, active).members.size();
  }

  static std::vector<Count> init_counts(const Distribution& d) {
    std::vector<Count> out(d.grid().vertex_count(), 0);
    for (const auto& [v, c] : d.entries()) out[d.grid().index(v)] = c;
    return out;
  }

  static std::vector<std::vector<std::size_t>> init_nbrs(const GridSpec& g) {
    std::vector<std::vector<std::size_t>> out(g.vertex_count());
    for (std::size_t i = 0; i < out.size(); ++i)
      for (const auto& u : g.neighbors(g.vertex(i))) out[i].push_back(g.index(u));
    return out;
  }
};

ReachEngine::ReachEngine(const Distribution& d, SearchOptions options)
    : dist_(d), options_(options), impl_(std::make_unique<Impl>(d)) {}
ReachEngine::~ReachEngine() = default;
ReachEngine::ReachEngine(ReachEngine&&) noexcept = default;
ReachEngine& ReachEngine::operator=(ReachEngine&&) noexcept = default;

const Rational& ReachEngine::weight_at(const Vertex& v) const {
  impl_->grid.require(v);
  return impl_->weights[impl_->grid.index(v)];
}

bool ReachEngine::active(const Vertex& v) const {
  impl_->grid.require(v);
  return impl_->active[impl_->grid.index(v)] != 0;
}

std::size_t ReachEngine::component_count() const { return impl_->components; }

ReachQuery ReachEngine::query(const Vertex& target, Count k) const {
  const auto& im = *impl_;
  im.grid.require(target);
  if (k < 1) throw InputError("pebble demand must be at least 1");
  const std::size_t t = im.grid.index(target);
  ReachQuery q;
  if (im.counts[t] >= k) {
    q.status = ReachStatus::reachable;
    return q;
  }
  if (im.weights[t] < k) return q;

  if (im.region.usable && options_.strategy == SearchStrategy::automatic) return RequirementSearch(im.region, t, k, options_.node_cap).run();

  std::vector<int> dist(im.grid.vertex_count());
  for (std::size_t i = 0; i < dist.size(); ++i) dist[i] = distance(im.grid, im.grid.vertex(i), target);

  // Nearest units first. A sub-distribution that reaches the target proves reachability
  // for the whole one; only the full distribution can prove the opposite.
  auto units = im.units;
  std::stable_sort(units.begin(), units.end(), [&](const auto& a, const auto& b) { return dist[a.first] < dist[b.first]; });
  std::vector<std::size_t> prefixes;
  {
    u128 acc = 0;
    const int scale = 100;
    std::size_t first = units.size();
    for (std::size_t i = 0; i < units.size(); ++i) {
      const int d = dist[units[i].first];
      if (d <= scale) acc += u128(static_cast<std::uint64_t>(units[i].second)) << (scale - d);
      if ((acc >> scale) >= static_cast<u128>(k)) {
        first = i + 1;
        break;
      }
    }
    for (std::size_t p = first; p < units.size(); p *= 2) prefixes.push_back(p);
  }
  const std::uint64_t trial_cap = std::max<std::uint64_t>(options_.node_cap / 64, 1000);
  for (std::size_t p : prefixes) {
    const std::vector<std::pair<std::size_t, Count>> sub(units.begin(), units.begin() + static_cast<std::ptrdiff_t>(p));
    const std::uint64_t left = options_.node_cap > q.nodes ? options_.node_cap - q.nodes : 0;
    const ReachQuery r = search_distribution(im.grid, sub, im.nbrs, dist, t, k, std::min(trial_cap, left));
    q.nodes += r.nodes;
    if (r.status == ReachStatus::reachable) {
      q.status = ReachStatus::reachable;
      return q;
    }
  }
  const std::uint64_t left = options_.node_cap > q.nodes ? options_.node_cap - q.nodes : 0;
  const ReachQuery r = search_distribution(im.grid, im.units, im.nbrs, dist, t, k, left);
  q.nodes += r.nodes;
  q.status = r.status;
  return q;
}

Distribution apply_move(const Distribution& d, const Vertex& from, const Vertex& to) {
  const auto& g = d.grid();
  g.require(from);
  g.require(to);
  if (!g.adjacent(from, to)) throw InputError("move " + to_string(from) + " -> " + to_string(to) + " is not along an edge");
  if (d[from] < 2) throw InputError("move needs two pebbles at " + to_string(from));
  Distribution out = d;
  out.set(from, d[from] - 2);
  out.add(to, 1);
  return out;
}

ReachQuery query_reachable(const Distribution& d, const Vertex& t, const SearchOptions& options) {
  return ReachEngine(d, options).query(t, 1);
}

namespace {

bool decided(const ReachQuery& q, const Vertex& t) {
  if (q.status == ReachStatus::budget_exceeded)
    throw BudgetExceeded("search budget exceeded at target " + to_string(t) + " after " + std::to_string(q.nodes) +
                         " states");
  return q.status == ReachStatus::reachable;
}

}  // namespace

bool is_reachable(const Distribution& d, const Vertex& t, const SearchOptions& options) {
  return decided(query_reachable(d, t, options), t);
}

bool can_move_k(const Distribution& d, const Vertex& t, Count k, const SearchOptions& options) {
  return decided(ReachEngine(d, options).query(t, k), t);
}

std::set<Vertex> boundary_of(const GridSpec& g, const std::set<Vertex>& reachable) {
  std::set<Vertex> out;
  for (const auto& v : reachable)
    for (const auto& u : g.neighbors(v))
      if (!reachable.count(u)) {
        out.insert(v);
        break;
      }
  return out;
}

CoverageReport coverage(const Distribution& d, const SearchOptions& options) {
  if (d.empty()) throw InputError("coverage of an empty distribution");
  const ReachEngine engine(d, options);
  const auto targets = d.grid().vertices();
  std::vector<ReachQuery> results(targets.size());

  const unsigned workers = std::min<unsigned>(resolve_threads(options.threads), static_cast<unsigned>(targets.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < targets.size(); ++i) results[i] = engine.query(targets[i]);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < targets.size(); i += workers) results[i] = engine.query(targets[i]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  CoverageReport rep;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    rep.nodes += results[i].nodes;
    if (decided(results[i], targets[i])) rep.reachable.insert(targets[i]);
  }
  rep.cov = rep.reachable.size();
  rep.ratio = Rational(static_cast<long>(rep.cov), static_cast<long>(d.size()));
  rep.ratio.canonicalize();
  rep.boundary = boundary_of(d.grid(), rep.reachable);
  return rep;
}

void require_border_margin(const CoverageReport& report, const GridSpec& g, int margin) {
  if (g.is_torus()) return;
  for (const auto& v : report.reachable) {
    const int gap = std::min({v.col, v.row, g.width() - 1 - v.col, g.height() - 1 - v.row});
    if (gap < margin)
      throw InputError("reachable vertex " + to_string(v) + " is " + std::to_string(gap) +
                       " from the border; the grid is too small to stand in for the unbounded grid");
  }
}

bool is_solvable(const Distribution& d, const SearchOptions& options) {
  if (d.empty()) return false;
  const ReachEngine engine(d, options);
  auto targets = d.grid().vertices();
  std::stable_sort(targets.begin(), targets.end(),
                   [&](const Vertex& a, const Vertex& b) { return engine.weight_at(a) < engine.weight_at(b); });
  for (const auto& t : targets)
    if (!decided(engine.query(t), t)) return false;
  return true;
}

std::set<Vertex> boundary_vertices(const Distribution& d, const SearchOptions& options) {
  return coverage(d, options).boundary;
}

namespace {

std::set<Vertex> reachable_set(const Distribution& d, const SearchOptions& options) {
  if (d.empty()) return {};
  return coverage(d, options).reachable;
}

}  // namespace

std::set<Vertex> interaction_vertices(const Distribution& d1, const Distribution& d2, const SearchOptions& options) {
  if (!(d1.grid() == d2.grid())) throw InputError("distributions live on different grids");
  const auto a = reachable_set(d1, options);
  const auto b = reachable_set(d2, options);
  std::set<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

std::vector<Vertex> lonely_units(const Distribution& d, const SearchOptions& options) {
  std::vector<Vertex> out;
  for (const auto& [v, c] : d.entries()) {
    Distribution single(d.grid());
    single.set(v, c);
    if (interaction_vertices(single, d.without(v), options).empty()) out.push_back(v);
  }
  return out;
}

Rational marginal_covering_ratio(const Distribution& d, const Distribution& dplus, const SearchOptions& options) {
  if (!(d.grid() == dplus.grid())) throw InputError("distributions live on different grids");
  if (!d.dominated_by(dplus)) throw InputError("extended distribution must contain the base pointwise");
  if (dplus.size() <= d.size()) throw InputError("extended distribution must have more pebbles");
  const std::size_t before = reachable_set(d, options).size();
  const std::size_t after = reachable_set(dplus, options).size();
  if (after < before) throw std::logic_error("coverage shrank after adding pebbles");
  Rational r(static_cast<long>(after - before), static_cast<long>(dplus.size() - d.size()));
  r.canonicalize();
  return r;
}

}  // namespace pebblekit
