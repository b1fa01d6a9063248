#pragma once

#include <cstdint>
#include <set>

#include "pebblekit/grid.hpp"

namespace pebblekit {

/// Reference answer by walking every state reachable from d. No pruning at all, so it is
/// only usable on tiny instances; throws BudgetExceeded past `state_cap` states.
std::set<Vertex> enumerate_reachable(const Distribution& d, std::uint64_t state_cap = 2'000'000);

/// Largest count that can be gathered on t, by the same exhaustive walk.
Count enumerate_max_on(const Distribution& d, const Vertex& t, std::uint64_t state_cap = 2'000'000);

}  // namespace pebblekit
