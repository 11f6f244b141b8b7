#pragma once

#include <cmath>

#include "acqlab/dissection.hpp"
#include "acqlab/strategies.hpp"

namespace acqlab {

enum class PhasePlan {
  // Every pair of parts travels together once; only travelling agents need
  // to meet.
  part_pairs,
  // Each part travels once with a full sweep in which every group visits
  // every cell, meeting the agents that stay behind as well.
  single_parts,
};

struct DenseConfig {
  // Cells have side 1 / ceil(granularity / r). At least sqrt(5) so that any
  // two points in side-adjacent cells are within r.
  double granularity = std::sqrt(5.0);
  // Group size as a fraction of the mean occupancy; 0 uses the smallest
  // occupancy of any cell.
  double slot_fraction = 0;
  // Every cell must hold between lo and hi times the mean occupancy; 0
  // disables a side of the check.
  double min_occupancy_fraction = 0;
  double max_occupancy_fraction = 0;
  // Largest part as a fraction of the mean occupancy; 0 derives it from the
  // group size (all of it for single_parts, half for part_pairs).
  double part_fraction = 0;
  PhasePlan plan = PhasePlan::single_parts;
  bool verify = true;
};

// Constants of the asymptotic construction: groups of 0.9 mu, cells within
// [0.9 mu, 1.1 mu], three parts of at most 0.4 mu, every pair of parts.
DenseConfig asymptotic_dense_config();

struct DensePlanInfo {
  std::size_t m = 0;
  std::size_t slots = 0;
  std::size_t parts = 0;
  std::size_t phases = 0;
};

// Strategy for unpercolated dense geometric graphs: cells become groups that
// travel along a boustrophedon path of the cell grid, one set of parts at a
// time, returning home after each phase. Theory value m^2.
// Errors: ConfigError, ConcentrationFailed, NotAllAcquainted.
StrategyReport dense_schedule(const GeometricGraph& g, const DenseConfig& config = {},
                              DensePlanInfo* info = nullptr);

// Splits each cell's members into `parts` nearly equal consecutive chunks.
std::vector<std::vector<std::vector<Vertex>>> split_cells(const Dissection& d, std::size_t parts);

}  // namespace acqlab
