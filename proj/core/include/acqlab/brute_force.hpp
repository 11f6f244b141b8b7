#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "acqlab/process.hpp"

namespace acqlab {

// All non-empty matchings of g, each sorted.
std::vector<Matching> enumerate_matchings(const Graph& g);

// Exact acquaintance time by breadth-first search over (placement, acquainted
// pairs). Supports n <= 6. Returns nullopt when no schedule of at most
// round_cap rounds exists. Throws Disconnected for disconnected graphs.
std::optional<std::size_t> brute_force_ac(const Graph& g, std::size_t round_cap = 64);

// Same search for the relaxed process where any permutation is allowed per
// round: the least number of placements covering all pairs, minus one.
// Supports n <= 6. Throws NoEdges for an edgeless graph on 2+ vertices.
std::size_t brute_force_helicopter_ac(const Graph& g);

// A shortest schedule achieving brute_force_ac, for inspection.
std::optional<Schedule> brute_force_schedule(const Graph& g, std::size_t round_cap = 64);

}  // namespace acqlab
