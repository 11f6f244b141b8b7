#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "acqlab/graphgen.hpp"

namespace acqlab {

using CellId = std::uint32_t;

enum class CellAdjacency {
  four,         // cells sharing a side
  touching8,    // cells sharing a side or a corner
  corner_rule,  // lower-left corners within r - side * sqrt(2)
};

// Uniform m x m dissection of the unit square. Cell (row, col) covers
// [col/m, (col+1)/m) x [row/m, (row+1)/m); points on the top or right border
// of the square go to the last row or column. Cells are numbered row-major.
class Dissection {
 public:
  Dissection() = default;
  Dissection(const PointSet& points, std::size_t m, double radius, CellAdjacency rule);

  std::size_t m() const { return m_; }
  std::size_t cell_count() const { return m_ * m_; }
  double side() const { return 1.0 / static_cast<double>(m_); }
  double radius() const { return radius_; }
  CellAdjacency rule() const { return rule_; }

  CellId cell(std::size_t row, std::size_t col) const { return static_cast<CellId>(row * m_ + col); }
  std::size_t row(CellId c) const { return c / m_; }
  std::size_t col(CellId c) const { return c % m_; }
  Point corner(CellId c) const;

  CellId cell_of(Vertex v) const { return cell_of_[v]; }
  std::span<const Vertex> members(CellId c) const {
    return {members_.data() + offsets_[c], members_.data() + offsets_[c + 1]};
  }
  std::size_t occupancy(CellId c) const { return offsets_[c + 1] - offsets_[c]; }

  bool adjacent(CellId a, CellId b) const;
  std::vector<CellId> neighbors(CellId c) const;

  // Row/column offsets (dr, dc) with dr, dc in any sign that count as adjacent
  // under the rule, excluding (0, 0).
  std::vector<std::pair<int, int>> adjacency_offsets() const;

 private:
  std::size_t m_ = 0;
  double radius_ = 0;
  CellAdjacency rule_ = CellAdjacency::touching8;
  std::vector<CellId> cell_of_;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> members_;
};

// Dissection with m = ceil(granularity / r): cells of side at most
// r / granularity.
Dissection dissect(const PointSet& points, double granularity, double r,
                   CellAdjacency rule = CellAdjacency::touching8);

}  // namespace acqlab
