#pragma once

#include <cmath>
#include <cstdint>

#include "acqlab/dense_strategy.hpp"
#include "acqlab/gnp_strategy.hpp"

namespace acqlab {

enum class SessionCover {
  // Before each group move, the cell pairs about to swap run a session.
  path_step,
  // After each group move, every side-adjacent cell pair runs a session, in
  // four batches given by the grid edge cover.
  grid_four,
};

struct PercolatedConfig {
  double granularity = std::sqrt(5.0);
  double slot_fraction = 0;
  double min_occupancy_fraction = 0;
  double max_occupancy_fraction = 0;
  double part_fraction = 0;
  // Team size k = min(team_constant * ln n / p, team_cap_fraction * slots).
  double team_constant = 1.5;
  double team_cap_fraction = 1.0;
  SessionCover cover = SessionCover::path_step;
  TeamStrategyConfig team;
  bool verify = true;
};

// Constants of the asymptotic construction; at desk sizes the team cap
// rounds k down to zero and the strategy reports ConfigError.
PercolatedConfig asymptotic_percolated_config();

struct PercolatedPlanInfo {
  std::size_t m = 0;
  std::size_t slots = 0;
  std::size_t parts = 0;
  std::size_t phases = 0;
  std::size_t team_size = 0;
  std::size_t sessions = 0;
};

std::size_t percolated_team_size(std::size_t n, double p, std::size_t slots, const PercolatedConfig& config);

// Strategy for percolated geometric graphs: cells are groups joined by
// perfect matchings; whenever two groups sit in adjacent cells they run the
// team strategy on the union of their slots and undo it. Every pair of parts
// travels together once. Theory value m^2 * k.
// Errors: ConfigError, ConcentrationFailed, MatchingMissing,
// CellPairStrategyFailed, NotAllAcquainted.
StrategyReport percolated_schedule(const GeometricGraph& g, const PercolatedConfig& config, std::uint64_t seed,
                                   PercolatedPlanInfo* info = nullptr);

}  // namespace acqlab
