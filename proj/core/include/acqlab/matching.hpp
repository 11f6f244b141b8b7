#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "acqlab/process.hpp"

namespace acqlab {

// Bipartite graph with left vertices 0..left-1 and right vertices
// 0..right-1; adjacency is kept per left vertex.
class BipartiteGraph {
 public:
  BipartiteGraph(std::size_t left, std::size_t right) : right_(right), adj_(left) {}

  void add_edge(std::uint32_t l, std::uint32_t r) { adj_[l].push_back(r); }
  // Sorts and deduplicates adjacency; called by the matcher.
  void finalize();

  std::size_t left_size() const { return adj_.size(); }
  std::size_t right_size() const { return right_; }
  std::span<const std::uint32_t> neighbors(std::uint32_t l) const { return adj_[l]; }

 private:
  std::size_t right_;
  std::vector<std::vector<std::uint32_t>> adj_;
};

inline constexpr std::uint32_t kUnmatched = 0xffffffffU;

struct BipartiteMatching {
  std::vector<std::uint32_t> left_to_right;  // kUnmatched when free
  std::vector<std::uint32_t> right_to_left;
  std::size_t size = 0;

  bool saturates_left() const { return size == left_to_right.size(); }
};

// Maximum matching by Hopcroft-Karp. Deterministic: adjacency is scanned in
// ascending order.
BipartiteMatching max_matching(BipartiteGraph g);

// For a maximum matching that leaves some left vertex free, a set S of left
// vertices with |N(S)| < |S|: the left vertices reachable from free left
// vertices by alternating paths. Empty when the matching saturates the left.
std::vector<std::uint32_t> hall_violator(const BipartiteGraph& g, const BipartiteMatching& m);

// Splits the edges of the rows x cols grid (vertex r * cols + c) into
// horizontal-even, horizontal-odd, vertical-even and vertical-odd matchings
// by the parity of the left or lower endpoint's coordinate.
std::vector<Matching> grid_four_cover(std::size_t rows, std::size_t cols);

// Slot vertices of every group, indexed by base vertex.
struct GroupMap {
  std::vector<std::vector<Vertex>> slots;
};

// Perfect matchings between the slots of two groups, keyed by the base edge
// (smaller id first). Each matching has one edge per slot.
using TransferTable = std::map<std::pair<Vertex, Vertex>, Matching>;

// Perfect matchings in g between the slots of each requested pair of groups.
// Throws MissingTransferMatching naming the pair and a Hall violator.
TransferTable inter_cell_matchings(const Graph& g, const GroupMap& groups,
                                   std::span<const std::pair<Vertex, Vertex>> pairs);

// Matching in g saturating `from` into `into` (disjoint vertex sets), or
// nullopt. Entry i of the result is the partner of from[i].
std::optional<std::vector<Vertex>> saturating_matching(const Graph& g, std::span<const Vertex> from,
                                            std::span<const Vertex> into);

}  // namespace acqlab
