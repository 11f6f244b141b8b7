#pragma once

#include <cstdint>

#include "acqlab/strategies.hpp"

namespace acqlab {

struct TeamStrategyConfig {
  std::size_t team_size = 0;         // k; must be positive
  std::size_t path_restarts = 10;    // randomized path searches per attempt
  double min_path_fraction = 0.8;    // path must cover this share of vertices
  std::size_t max_retries = 3;       // fresh sub-seeds after a failed attempt
};

// Team strategy for a dense random graph h: find a long path, split it into
// teams of k consecutive vertices that each run the odd-even sweep at the
// same time, then swap the agents off the path onto it through a matching and
// sweep again. The schedule is verified by simulation on h.
// Errors: PathTooShort, NoSaturatingMatching, NotAllAcquainted (after all
// retries are used up).
StrategyReport gnp_pair_schedule(const Graph& h, const TeamStrategyConfig& config, std::uint64_t seed);

// Greedy long path: random start, random unvisited extension at either end,
// best of `restarts` tries.
std::vector<Vertex> long_path(const Graph& h, std::size_t restarts, std::uint64_t seed);

}  // namespace acqlab
