#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace acqlab {

using Vertex = std::uint32_t;
using Agent = std::uint32_t;

// Undirected edge, normalized so that u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable simple undirected graph in compressed adjacency form.
// Neighbor lists are sorted ascending.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : offsets_(n + 1, 0) {}

  // Duplicate edges are merged; self loops are rejected.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);
  // upper[u] lists the neighbors v > u of u in ascending order, without
  // duplicates. Consumes the lists to keep peak memory low.
  static Graph from_upper_lists(std::size_t n, std::vector<std::vector<Vertex>> upper);

  std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const { return targets_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const;

  bool adjacent(Vertex a, Vertex b) const;
  bool connected() const;

  // All edges in sorted (u, v) order.
  std::vector<Edge> edges() const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
};

// Induced subgraph on `vertices`; vertex i of the result is vertices[i].
Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

Graph make_path_graph(std::size_t n);
Graph make_complete_graph(std::size_t n);
Graph make_grid_graph(std::size_t rows, std::size_t cols);

std::uint64_t pair_count(std::uint64_t n);

}  // namespace acqlab
