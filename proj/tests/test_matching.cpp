#include <algorithm>
#include <set>
#include <vector>

#include "acqlab/error.hpp"
#include "acqlab/matching.hpp"
#include "acqlab/rng.hpp"
#include "doctest.h"

using namespace acqlab;

namespace {

// Maximum matching size by dynamic programming over subsets of right vertices.
std::size_t max_matching_size_dp(const BipartiteGraph& g) {
  const std::size_t right = g.right_size();
  std::vector<int> best(1U << right, -1);
  best[0] = 0;
  int result = 0;
  for (std::size_t l = 0; l < g.left_size(); ++l) {
    std::vector<int> next = best;
    for (std::uint32_t mask = 0; mask < best.size(); ++mask) {
      if (best[mask] < 0) continue;
      for (std::uint32_t r : g.neighbors(static_cast<std::uint32_t>(l))) {
        if (mask >> r & 1U) continue;
        next[mask | (1U << r)] = std::max(next[mask | (1U << r)], best[mask] + 1);
      }
    }
    best = std::move(next);
  }
  for (int b : best) result = std::max(result, b);
  return static_cast<std::size_t>(result);
}

BipartiteGraph random_bipartite(std::size_t left, std::size_t right, double p, Rng& rng) {
  BipartiteGraph g(left, right);
  for (std::uint32_t l = 0; l < left; ++l)
    for (std::uint32_t r = 0; r < right; ++r)
      if (rng.bernoulli(p)) g.add_edge(l, r);
  g.finalize();
  return g;
}

}  // namespace

TEST_CASE("Hopcroft-Karp finds a maximum matching") {
  Rng rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t left = 1 + rng.below(8);
    const std::size_t right = 1 + rng.below(8);
    const BipartiteGraph g = random_bipartite(left, right, 0.1 + 0.5 * rng.uniform01(), rng);
    const BipartiteMatching m = max_matching(g);
    CHECK(m.size == max_matching_size_dp(g));
    std::size_t count = 0;
    for (std::uint32_t l = 0; l < left; ++l) {
      const std::uint32_t r = m.left_to_right[l];
      if (r == kUnmatched) continue;
      ++count;
      const auto nb = g.neighbors(l);
      CHECK(std::find(nb.begin(), nb.end(), r) != nb.end());
      CHECK(m.right_to_left[r] == l);
    }
    CHECK(count == m.size);
  }
}

TEST_CASE("hall_violator certifies a deficient side") {
  Rng rng(2);
  int deficient = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t t = 2 + rng.below(7);
    const BipartiteGraph g = random_bipartite(t, t, 0.25, rng);
    const BipartiteMatching m = max_matching(g);
    const auto s = hall_violator(g, m);
    if (m.saturates_left()) {
      CHECK(s.empty());
      continue;
    }
    ++deficient;
    std::set<std::uint32_t> nb;
    for (std::uint32_t l : s)
      for (std::uint32_t r : g.neighbors(l)) nb.insert(r);
    CHECK(nb.size() < s.size());
  }
  CHECK(deficient > 10);
}

TEST_CASE("grid_four_cover splits the grid edges into four matchings") {
  for (auto [rows, cols] : {std::pair<std::size_t, std::size_t>{1, 1}, {1, 5}, {4, 4}, {3, 7}}) {
    const auto cover = grid_four_cover(rows, cols);
    CHECK(cover.size() == 4);
    std::vector<Edge> all;
    for (const Matching& m : cover) {
      std::set<Vertex> used;
      for (const Edge& e : m) {
        CHECK(used.insert(e.u).second);
        CHECK(used.insert(e.v).second);
        all.push_back(e);
      }
    }
    std::sort(all.begin(), all.end());
    CHECK(all == make_grid_graph(rows, cols).edges());
  }
}

TEST_CASE("inter_cell_matchings pairs the slots of joined groups") {
  // Two groups of three joined by a complete bipartite graph minus one edge.
  std::vector<Edge> edges;
  for (Vertex a = 0; a < 3; ++a)
    for (Vertex b = 3; b < 6; ++b)
      if (!(a == 0 && b == 3)) edges.emplace_back(a, b);
  const Graph g = Graph::from_edges(6, edges);
  GroupMap groups{{{0, 1, 2}, {3, 4, 5}}};
  const std::vector<std::pair<Vertex, Vertex>> pairs = {{0, 1}};
  const TransferTable table = inter_cell_matchings(g, groups, pairs);
  const Matching& m = table.at({0, 1});
  CHECK(m.size() == 3);
  std::set<Vertex> used;
  for (const Edge& e : m) {
    CHECK(g.adjacent(e.u, e.v));
    used.insert(e.u);
    used.insert(e.v);
  }
  CHECK(used.size() == 6);
}

TEST_CASE("inter_cell_matchings reports a Hall violator when no perfect matching exists") {
  const std::vector<Edge> edges = {{0, 2}, {1, 2}};
  const Graph g = Graph::from_edges(4, edges);
  GroupMap groups{{{0, 1}, {2, 3}}};
  const std::vector<std::pair<Vertex, Vertex>> pairs = {{0, 1}};
  try {
    inter_cell_matchings(g, groups, pairs);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::missing_transfer_matching);
  }
}

TEST_CASE("saturating_matching") {
  const Graph g = Graph::from_edges(6, std::vector<Edge>{{0, 3}, {0, 4}, {1, 3}, {2, 5}});
  const std::vector<Vertex> from = {0, 1, 2};
  const std::vector<Vertex> into = {3, 4, 5};
  const auto m = saturating_matching(g, from, into);
  REQUIRE(m.has_value());
  CHECK((*m)[0] == 4);
  CHECK((*m)[1] == 3);
  CHECK((*m)[2] == 5);
  const std::vector<Vertex> tight = {3, 5};
  CHECK_FALSE(saturating_matching(g, from, tight).has_value());
}
