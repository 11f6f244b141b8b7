#pragma once

#include <span>
#include <vector>

#include "acqlab/strategies.hpp"
#include "acqlab/structure.hpp"

namespace acqlab {

struct SparseConfig {
  // At most capacity_fraction * T agents move into one cell at a time.
  double capacity_fraction = 1.0;
  // Group size |B(c)|; 0 uses ceil(T).
  std::size_t group_size = 0;
  bool verify = true;
};

// Constants of the asymptotic construction: moves of at most T / 50 agents.
SparseConfig asymptotic_sparse_config();

struct CellMove {
  Schedule schedule;
  // Final vertex of each moved agent, in input order; all inside the cell.
  std::vector<Vertex> landing;
};

// Moves the agents standing on `agents` (a subset of A(c), everyone at home)
// onto vertices of cell c: one round for safe vertices, then two rounds per
// obstruction part through its crucial vertices.
// Errors: CapacityExceeded, MoveFailed, NoCrucialPath.
CellMove move_into_cell(const GeometricGraph& g, const StructureAnalysis& a, std::span<const Vertex> agents,
                        CellId c, const SparseConfig& config = {});

// Strategy for sparse geometric graphs from a partitioned structure analysis.
// For every pair of classes, the agents move into their cells, groups of
// |B(c)| travel the largest component and everyone returns. The component
// strategy is a Hamiltonian path sweep when the row-by-row order or a
// rotation search finds one, and a spanning-tree walk otherwise.
// Theory value m^2.
// Errors: StructureUnusable, CapacityExceeded, MoveFailed, NoCrucialPath,
// NotAllAcquainted.
StrategyReport sparse_schedule(const GeometricGraph& g, const StructureAnalysis& a, const SparseConfig& config = {});

// Row-by-row order of the cells, alternating direction per row.
std::vector<CellId> snake_order(std::span<const CellId> cells, std::size_t m);

}  // namespace acqlab
