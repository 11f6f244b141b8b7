#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "acqlab/error.hpp"
#include "acqlab/graphgen.hpp"
#include "acqlab/rng.hpp"
#include "acqlab/strategies.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace acqlab;

namespace {

double tree_weight(const PointSet& pts, const std::vector<Edge>& edges) {
  double w = 0;
  for (const Edge& e : edges) w += std::sqrt(squared_distance(pts[e.u], pts[e.v]));
  return w;
}

// Kruskal over all graph edges.
double mst_weight(const PointSet& pts, const Graph& g) {
  std::vector<Edge> edges = g.edges();
  std::sort(edges.begin(), edges.end(), [&](const Edge& a, const Edge& b) {
    return squared_distance(pts[a.u], pts[a.v]) < squared_distance(pts[b.u], pts[b.v]);
  });
  std::vector<Vertex> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Vertex v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::vector<Edge> tree;
  for (const Edge& e : edges) {
    const Vertex a = find(e.u);
    const Vertex b = find(e.v);
    if (a == b) continue;
    parent[a] = b;
    tree.push_back(e);
  }
  return tree_weight(pts, tree);
}

GeometricGraph connected_rgg(std::size_t n, double r, std::uint64_t seed) {
  for (;; ++seed) {
    GeometricGraph g = build_rgg(sample_points(n, seed), r);
    if (g.graph.connected()) return g;
  }
}

}  // namespace

TEST_CASE("path sweep: at most 2n rounds, everyone meets, every agent visits every vertex") {
  for (std::size_t n = 2; n <= 30; ++n) {
    const Graph path = make_path_graph(n);
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 0);
    const Schedule s = hamiltonian_path_schedule(path, order);
    CHECK(s.rounds() <= 2 * n);
    const oracle::NaiveRun run = oracle::simulate(path, s.expanded());
    CHECK(run.all_met());
    for (std::size_t a = 0; a < n; ++a)
      CHECK(std::count(run.visited[a].begin(), run.visited[a].end(), 1) == static_cast<long>(n));
  }
}

TEST_CASE("reverse_order sweep reverses the agents within n rounds") {
  for (std::size_t n = 2; n <= 20; ++n) {
    const Graph path = make_path_graph(n);
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 0);
    const Schedule s = hamiltonian_path_schedule(path, order, PathSweep::reverse_order);
    CHECK(s.rounds() <= n);
    const SimulationResult r = run_schedule(path, s);
    CHECK(r.all_acquainted);
    for (std::size_t v = 0; v < n; ++v) CHECK(r.final_placement[v] == n - 1 - v);
  }
}

TEST_CASE("sweeps along a path embedded in a larger graph") {
  const Graph grid = make_grid_graph(4, 5);
  const auto path = grid_hamiltonian_path(4, 5);
  CHECK(path.size() == 20);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) CHECK(grid.adjacent(path[i], path[i + 1]));
  CHECK(run_schedule(grid, hamiltonian_path_schedule(grid, path)).all_acquainted);
}

TEST_CASE("non-paths are rejected") {
  const Graph g = make_grid_graph(2, 2);
  const std::vector<Vertex> gap = {0, 3};
  const std::vector<Vertex> repeat = {0, 1, 0};
  const std::vector<Vertex> outside = {0, 9};
  for (const auto* p : {&gap, &repeat, &outside}) {
    try {
      hamiltonian_path_schedule(g, *p);
      FAIL("expected NotAPath");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::not_a_path);
    }
  }
}

TEST_CASE("reverse_and_append returns every agent home") {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const GeometricGraph g = build_rgg(sample_points(30, trial), 0.35);
    Schedule s;
    for (int i = 0; i < 15; ++i) {
      std::vector<Edge> edges = g.graph.edges();
      rng.shuffle(std::span<Edge>(edges));
      std::vector<char> used(30, 0);
      Matching m;
      for (const Edge& e : edges) {
        if (used[e.u] || used[e.v]) continue;
        used[e.u] = used[e.v] = 1;
        m.push_back(e);
      }
      s.append(m);
    }
    const Schedule back = reverse_and_append(s);
    CHECK(back.rounds() == 2 * s.rounds());
    const SimulationResult r = run_schedule(g.graph, back);
    for (Vertex v = 0; v < 30; ++v) CHECK(r.final_placement[v] == v);
  }
}

TEST_CASE("lifting a grid sweep onto complete blow-ups") {
  const std::size_t rows = 2;
  const std::size_t cols = 3;
  const std::size_t t = 3;
  const Graph base = make_grid_graph(rows, cols);
  // Group c holds slots c*t .. c*t+t-1; groups are cliques joined completely
  // along base edges.
  std::vector<Edge> edges;
  GroupMap groups;
  groups.slots.resize(rows * cols);
  for (Vertex c = 0; c < rows * cols; ++c)
    for (Vertex i = 0; i < t; ++i) groups.slots[c].push_back(c * t + i);
  for (Vertex c = 0; c < rows * cols; ++c)
    for (Vertex i = 0; i < t; ++i)
      for (Vertex j = i + 1; j < t; ++j) edges.emplace_back(c * t + i, c * t + j);
  TransferTable transfer;
  for (const Edge& e : base.edges()) {
    Matching m;
    for (Vertex i = 0; i < t; ++i) {
      m.emplace_back(e.u * t + i, e.v * t + i);
      for (Vertex j = 0; j < t; ++j) edges.emplace_back(e.u * t + i, e.v * t + j);
    }
    transfer[{e.u, e.v}] = m;
  }
  const Graph host = Graph::from_edges(rows * cols * t, edges);
  const Schedule s = hamiltonian_path_schedule(base, grid_hamiltonian_path(rows, cols));
  const Schedule lifted = lift_schedule(s, groups, transfer);
  CHECK(lifted.rounds() == s.rounds());
  CHECK(run_schedule(host, lifted).all_acquainted);

  TransferTable partial = transfer;
  partial.erase(partial.begin());
  CHECK_THROWS_AS(lift_schedule(s, groups, partial), Error);
}

TEST_CASE("Euclidean spanning tree is a minimum spanning tree of degree at most 5") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const GeometricGraph g = connected_rgg(400, 0.12, seed * 100);
    const Tree tree = bounded_degree_spanning_tree(g);
    const auto edges = tree.edges();
    CHECK(oracle::is_spanning_tree(400, edges));
    CHECK(tree.max_degree() <= 5);
    for (const Edge& e : edges) CHECK(g.graph.adjacent(e.u, e.v));
    CHECK(tree_weight(g.points, edges) == doctest::Approx(mst_weight(g.points, g.graph)));
  }
  const GeometricGraph split = build_rgg(make_point_set({{0.1, 0.1}, {0.9, 0.9}}), 0.2);
  CHECK_THROWS_AS(bounded_degree_spanning_tree(split), Error);
}

TEST_CASE("tree walk acquaints everyone and ends at home") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const GeometricGraph g = connected_rgg(60, 0.3, seed);
    const Tree tree = bounded_degree_spanning_tree(g);
    for (bool skip : {true, false}) {
      const Schedule s = tree_walk_schedule(g.graph, tree, {skip});
      const SimulationResult r = run_schedule(g.graph, s);
      CHECK(r.all_acquainted);
      CHECK(s.rounds() <= 60 * 2 * 59);
      for (Vertex v = 0; v < 60; ++v) CHECK(r.final_placement[v] == v);
    }
  }
}
