#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "acqlab/dissection.hpp"

namespace acqlab {

struct StructureConfig {
  // Cells per side m = ceil(sqrt(n / (eta^2 ln n))); good cells hold at least
  // T = delta * ln n points.
  double eta = 1.0;
  double delta = 0.1;
  // Distance that separates far-apart obstructions, in multiples of r.
  double separation_factor = 10.0;
  // Overrides for fixtures; 0 keeps the formulas above.
  std::size_t cells_per_side = 0;
  double threshold = 0;
};

// Separation used in documentation of the asymptotic construction.
inline constexpr double kAsymptoticSeparationFactor = 1e10;

enum class PointLabel : std::uint8_t { safe, risky, dangerous };

enum class ObstructionKind : std::uint8_t { dangerous_cluster, gamma_plus };

struct Obstruction {
  ObstructionKind kind = ObstructionKind::dangerous_cluster;
  // Index into StructureAnalysis::components for gamma_plus (always >= 1).
  std::size_t component = 0;
  std::vector<Vertex> members;  // ascending
  std::vector<Vertex> crucial;  // ascending

  std::size_t size() const { return members.size(); }
};

struct PropertyCheck {
  bool holds = true;
  // Violating pair of points (P2 to P5) when the property fails.
  std::optional<std::pair<Vertex, Vertex>> witness;
  std::string detail;
};

inline constexpr CellId kNoCell = 0xffffffffU;

struct StructureAnalysis {
  StructureConfig config;
  std::size_t n = 0;
  double radius = 0;
  double threshold = 0;   // T
  double separation = 0;  // separation_factor * r
  Dissection dissection;  // corner-rule cells

  std::vector<char> good;                       // per cell
  std::vector<std::vector<CellId>> components;  // of the good-cell graph, largest first
  std::vector<std::uint32_t> component_of;      // per cell; kNoComponent for bad cells

  std::vector<PointLabel> labels;  // per vertex
  // Good cell holding the most neighbours of a safe or risky vertex, within
  // the component that decided its label.
  std::vector<CellId> witness_cell;

  std::vector<Obstruction> obstructions;
  std::vector<std::uint32_t> obstruction_of;  // per vertex; kNoObstruction if none

  // P1: the largest component holds more than 99% of the cells.
  // P2: every gamma-plus set has diameter below r / 100.
  // P3: dangerous points are closer than r / 100 or farther than the separation.
  // P4: distinct gamma-plus sets are at least the separation apart.
  // P5: dangerous points are at least the separation away from gamma-plus sets.
  std::array<PropertyCheck, 5> properties;

  // Filled by assign_and_partition.
  bool partitioned = false;
  std::vector<CellId> home_cell;                  // per vertex: cell of the largest component
  std::vector<std::vector<Vertex>> cell_sets;     // per cell: A(c)
  std::vector<std::vector<std::vector<Vertex>>> classes;  // per cell: A_1(c) ... A_L(c)
  std::size_t class_count = 0;                    // L
  std::size_t class_size = 0;

  static constexpr std::uint32_t kNoComponent = 0xffffffffU;
  static constexpr std::uint32_t kNoObstruction = 0xffffffffU;

  std::size_t cells_per_side() const { return dissection.m(); }
  bool in_largest_component(CellId c) const { return component_of[c] == 0; }
  bool all_properties() const;
};

// Full structural analysis of an unpercolated geometric graph. Deterministic.
StructureAnalysis analyze(const GeometricGraph& g, const StructureConfig& config = {});

// Safe vertices adjacent to every member of `members`.
std::vector<Vertex> crucial_vertices(const GeometricGraph& g, const StructureAnalysis& a,
                                     std::span<const Vertex> members);

struct OccupancyReport {
  std::size_t max_cell = 0;
  std::size_t max_obstruction = 0;
  std::size_t max_cell_set = 0;  // largest A(c); 0 before assign_and_partition
  bool cells_ok = true;
  bool obstructions_ok = true;
  bool cell_sets_ok = true;
  bool holds() const { return cells_ok && obstructions_ok && cell_sets_ok; }
};

// Compares cell occupancy, obstruction size and |A(c)| with constant * ln n.
OccupancyReport check_occupancy(const StructureAnalysis& a, double cell_constant, double obstruction_constant,
                                double cell_set_constant);

struct BlockReport {
  std::size_t block = 0;
  double worst_area = 0;           // bad-cell area in any block
  double worst_boundary_area = 0;  // in blocks touching the boundary
  std::size_t corner_bad_cells = 0;
  double area_limit = 0;           // (1 + eps) ln n / n
  double boundary_limit = 0;       // (1 + eps) ln n / (2n)
  bool interior_ok = true;
  bool boundary_ok = true;
  bool corners_ok = true;
  bool holds() const { return interior_ok && boundary_ok && corners_ok; }
};

// Bad-cell area over every block x block window of cells, with cells from
// the eta formula and good meaning at least `threshold` points.
BlockReport check_blocks(const GeometricGraph& g, std::size_t block, double eps, double threshold,
                         double eta = 1.0);

struct PartitionConfig {
  // Classes hold at most class_fraction * T vertices; class_size overrides.
  double class_fraction = 0.01;
  std::size_t class_size = 0;
};

// Assigns safe vertices outside the largest component to a cell where they
// have at least T neighbours, each obstruction to the cell holding most of
// its crucial vertices, builds A(c) and splits it into equal-count classes.
// Throws NoCrucial when an obstruction has no crucial vertex and ConfigError
// when classes would be empty.
void assign_and_partition(StructureAnalysis& a, const PartitionConfig& config = {});

std::string_view to_string(PointLabel label);
std::string_view to_string(ObstructionKind kind);

}  // namespace acqlab
