#include <vector>

#include "acqlab/error.hpp"
#include "acqlab/graph.hpp"
#include "doctest.h"

using namespace acqlab;

TEST_CASE("Edge normalizes its endpoints") {
  const Edge e(5, 2);
  CHECK(e.u == 2);
  CHECK(e.v == 5);
  CHECK(Edge(2, 5) == e);
}

TEST_CASE("from_edges merges duplicates and sorts neighbours") {
  const std::vector<Edge> edges = {{0, 3}, {3, 0}, {1, 3}, {0, 1}, {3, 2}};
  const Graph g = Graph::from_edges(4, edges);
  CHECK(g.num_vertices() == 4);
  CHECK(g.num_edges() == 4);
  const auto nb = g.neighbors(3);
  CHECK(std::vector<Vertex>(nb.begin(), nb.end()) == std::vector<Vertex>{0, 1, 2});
  CHECK(g.adjacent(0, 3));
  CHECK(g.adjacent(3, 0));
  CHECK_FALSE(g.adjacent(0, 2));
  CHECK(g.max_degree() == 3);
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {0, 3}, {1, 3}, {2, 3}});
}

TEST_CASE("from_edges rejects loops and out-of-range endpoints") {
  const std::vector<Edge> loop = {{1, 1}};
  CHECK_THROWS_AS(Graph::from_edges(3, loop), Error);
  const std::vector<Edge> far = {{0, 3}};
  CHECK_THROWS_AS(Graph::from_edges(3, far), Error);
}

TEST_CASE("from_upper_lists matches from_edges") {
  std::vector<std::vector<Vertex>> upper = {{1, 2}, {2}, {}, {}};
  const Graph a = Graph::from_upper_lists(4, upper);
  const std::vector<Edge> edges = {{0, 1}, {0, 2}, {1, 2}};
  const Graph b = Graph::from_edges(4, edges);
  CHECK(a.edges() == b.edges());
  CHECK(a.degree(3) == 0);
}

TEST_CASE("standard graphs") {
  CHECK(make_path_graph(5).num_edges() == 4);
  CHECK(make_complete_graph(6).num_edges() == 15);
  const Graph grid = make_grid_graph(3, 4);
  CHECK(grid.num_vertices() == 12);
  CHECK(grid.num_edges() == 3 * 3 + 2 * 4);
  CHECK(grid.adjacent(0, 1));
  CHECK(grid.adjacent(0, 4));
  CHECK_FALSE(grid.adjacent(3, 4));
  CHECK(pair_count(0) == 0);
  CHECK(pair_count(1) == 0);
  CHECK(pair_count(100000) == 4999950000ULL);
}

TEST_CASE("connected") {
  CHECK(make_path_graph(7).connected());
  CHECK(Graph(1).connected());
  const std::vector<Edge> edges = {{0, 1}, {2, 3}};
  CHECK_FALSE(Graph::from_edges(4, edges).connected());
}

TEST_CASE("induced_subgraph relabels by position") {
  const Graph g = make_path_graph(5);
  const std::vector<Vertex> keep = {4, 3, 1};
  const Graph h = induced_subgraph(g, keep);
  CHECK(h.num_vertices() == 3);
  CHECK(h.edges() == std::vector<Edge>{{0, 1}});
}
