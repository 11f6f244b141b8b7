#pragma once

// Shared by the dense and percolated strategies: splitting cells into parts,
// choosing phases and picking the slot vertices of every group.

#include <vector>

#include "acqlab/dense_strategy.hpp"

namespace acqlab::detail {

struct OccupancyStats {
  std::size_t min = 0;
  std::size_t max = 0;
  double mean = 0;
};

OccupancyStats occupancy_stats(const Dissection& d);

// Applies the concentration bracket and returns the group size.
std::size_t choose_slots(const Dissection& d, const OccupancyStats& stats, double slot_fraction,
                         double lo_fraction, double hi_fraction);

struct GroupPlan {
  std::size_t slots = 0;
  std::size_t parts = 0;
  std::vector<std::vector<std::size_t>> phases;           // part indices per phase
  std::vector<std::vector<std::vector<Vertex>>> chunks;   // [cell][part] -> vertices
};

GroupPlan plan_groups(const Dissection& d, std::size_t slots, std::size_t part_cap, PhasePlan plan);

// Slot vertices of every cell for one phase: the phase's parts first, then
// fill from parts that travelled earlier, then from the rest.
GroupMap phase_groups(const GroupPlan& plan, std::size_t phase, const std::vector<char>& travelled);

// Side-adjacent pairs along the boustrophedon path of the m x m cell grid.
std::vector<std::pair<Vertex, Vertex>> path_pairs(const std::vector<Vertex>& path);

// Transfer matchings pairing slot i with slot i; valid whenever every point of
// one cell is adjacent to every point of the other.
TransferTable index_transfers(const GroupMap& groups, const std::vector<std::pair<Vertex, Vertex>>& pairs);

}  // namespace acqlab::detail
