#include "pebblekit/oracle.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>
#include <vector>

namespace pebblekit {

namespace {

struct StateHash {
  std::size_t operator()(const std::vector<Count>& s) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Count c : s) h = (h ^ static_cast<std::size_t>(c)) * 1099511628211ull;
    return h;
  }
};

void walk_states(const Distribution& d, std::uint64_t cap, const std::function<void(const std::vector<Count>&)>& visit) {
  const GridSpec& g = d.grid();
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<std::size_t>> nbrs(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& u : g.neighbors(g.vertex(i))) nbrs[i].push_back(g.index(u));
  std::vector<Count> start(n, 0);
  for (const auto& [v, c] : d.entries()) start[g.index(v)] = c;

  std::unordered_set<std::vector<Count>, StateHash> seen{start};
  std::vector<std::vector<Count>> stack{start};
  while (!stack.empty()) {
    std::vector<Count> s = std::move(stack.back());
    stack.pop_back();
    visit(s);
    for (std::size_t i = 0; i < n; ++i) {
      if (s[i] < 2) continue;
      for (std::size_t u : nbrs[i]) {
        std::vector<Count> next = s;
        next[i] -= 2;
        next[u] += 1;
        if (seen.insert(next).second) {
          if (seen.size() > cap) throw BudgetExceeded("state enumeration passed " + std::to_string(cap) + " states");
          stack.push_back(std::move(next));
        }
      }
    }
  }
}

}  // namespace

std::set<Vertex> enumerate_reachable(const Distribution& d, std::uint64_t state_cap) {
  const GridSpec& g = d.grid();
  std::vector<char> hit(g.vertex_count(), 0);
  walk_states(d, state_cap, [&](const std::vector<Count>& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] > 0) hit[i] = 1;
  });
  std::set<Vertex> out;
  for (std::size_t i = 0; i < hit.size(); ++i)
    if (hit[i]) out.insert(g.vertex(i));
  return out;
}

Count enumerate_max_on(const Distribution& d, const Vertex& t, std::uint64_t state_cap) {
  d.grid().require(t);
  const std::size_t ti = d.grid().index(t);
  Count best = 0;
  walk_states(d, state_cap, [&](const std::vector<Count>& s) { best = std::max(best, s[ti]); });
  return best;
}

}  // namespace pebblekit
