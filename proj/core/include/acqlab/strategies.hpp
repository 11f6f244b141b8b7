#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "acqlab/graphgen.hpp"
#include "acqlab/matching.hpp"
#include "acqlab/process.hpp"

namespace acqlab {

// Outcome of a strategy: the schedule and how it compares with the theory
// value the strategy is measured against (rounds / theory_value).
struct StrategyReport {
  Schedule schedule;
  std::size_t rounds = 0;
  double theory_value = 0;
  double bound_ratio = 0;
  std::size_t retries = 0;
};

enum class PathSweep {
  // Long enough that every agent visits every path vertex (at most 2n rounds).
  visit_all,
  // n rounds: the order of agents along the path is reversed and every pair
  // of agents swaps exactly once.
  reverse_order,
};

// Odd-even transposition rounds along `path`, a sequence of distinct vertices
// with consecutive ones adjacent in `host`. Throws NotAPath otherwise.
Schedule hamiltonian_path_schedule(const Graph& host, std::span<const Vertex> path,
                                   PathSweep sweep = PathSweep::visit_all);

// The schedule followed by its rounds in reverse order; every agent ends on
// its starting vertex.
Schedule reverse_and_append(const Schedule& s);

// Replaces every base vertex by a group of slot vertices: a base edge (c, d)
// in a round becomes the transfer matching between the slots of c and d.
// Throws MissingTransferMatching when a used base edge has no entry.
Schedule lift_schedule(const Schedule& base, const GroupMap& groups, const TransferTable& transfer);

// Boustrophedon order of the rows x cols grid (vertex r * cols + c): row 0
// left to right, row 1 right to left, and so on.
std::vector<Vertex> grid_hamiltonian_path(std::size_t rows, std::size_t cols);

struct Tree {
  static constexpr Vertex kNoParent = 0xffffffffU;
  Vertex root = 0;
  std::vector<Vertex> parent;

  std::size_t size() const { return parent.size(); }
  std::vector<Edge> edges() const;
  std::vector<std::vector<Vertex>> adjacency() const;
  std::size_t max_degree() const;
};

// Euclidean minimum spanning tree inside `graph` (ties broken by endpoint
// ids), rooted at vertex 0. For points in general position every vertex has
// degree at most 5. Throws Disconnected when the graph is disconnected.
Tree euclidean_spanning_tree(std::span<const Point> points, const Graph& graph);
Tree bounded_degree_spanning_tree(const GeometricGraph& g);

struct TreeWalkOptions {
  // Skip walkers that already know every agent.
  bool skip_acquainted = true;
};

// Walks the agents one at a time around the doubled tree; each walk of
// 2(n-1) rounds acquaints the walker with every agent and puts all agents
// back on their starting vertices.
Schedule tree_walk_schedule(const Graph& host, const Tree& tree, TreeWalkOptions options = {});

}  // namespace acqlab
