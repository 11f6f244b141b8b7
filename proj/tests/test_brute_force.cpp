#include <functional>
#include <vector>

#include "acqlab/brute_force.hpp"
#include "acqlab/error.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace acqlab;

namespace {

// All non-empty sets of pairwise disjoint edges.
std::vector<Matching> matchings_of(const Graph& g) {
  const std::vector<Edge> edges = g.edges();
  std::vector<Matching> out;
  for (std::uint32_t mask = 1; mask < (1U << edges.size()); ++mask) {
    Matching m;
    std::uint32_t used = 0;
    bool ok = true;
    for (std::size_t i = 0; i < edges.size() && ok; ++i) {
      if (!(mask >> i & 1U)) continue;
      const std::uint32_t ends = (1U << edges[i].u) | (1U << edges[i].v);
      ok = (used & ends) == 0;
      used |= ends;
      m.push_back(edges[i]);
    }
    if (ok) out.push_back(m);
  }
  return out;
}

// Shortest schedule length by trying every sequence of each length.
std::size_t ac_by_enumeration(const Graph& g, std::size_t max_depth) {
  const auto options = matchings_of(g);
  for (std::size_t depth = 0; depth <= max_depth; ++depth) {
    std::vector<Matching> seq(depth);
    std::function<bool(std::size_t)> go = [&](std::size_t i) {
      if (i == depth) return oracle::simulate(g, seq).all_met();
      for (const Matching& m : options) {
        seq[i] = m;
        if (go(i + 1)) return true;
      }
      return false;
    };
    if (go(0)) return depth;
  }
  return max_depth + 1;
}

Graph graph_from_mask(std::size_t n, std::uint32_t mask) {
  std::vector<Edge> edges;
  std::size_t bit = 0;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v, ++bit)
      if (mask >> bit & 1U) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

}  // namespace

TEST_CASE("known values") {
  CHECK(brute_force_ac(make_complete_graph(4)) == 0);
  CHECK(brute_force_ac(make_path_graph(2)) == 0);
  CHECK(brute_force_ac(make_path_graph(3)) == 1);
  CHECK(brute_force_ac(make_path_graph(4)) == 2);
  CHECK(brute_force_helicopter_ac(make_path_graph(3)) == 1);
  CHECK(brute_force_helicopter_ac(make_complete_graph(5)) == 0);
}

TEST_CASE("matches sequence enumeration on every connected graph with up to 4 vertices") {
  for (std::size_t n = 2; n <= 4; ++n) {
    const std::uint32_t masks = 1U << (n * (n - 1) / 2);
    for (std::uint32_t mask = 1; mask < masks; ++mask) {
      const Graph g = graph_from_mask(n, mask);
      if (!g.connected()) continue;
      const auto ac = brute_force_ac(g);
      REQUIRE(ac.has_value());
      CHECK(*ac == ac_by_enumeration(g, 6));
      CHECK(brute_force_helicopter_ac(g) <= *ac);
    }
  }
}

TEST_CASE("the returned schedule is optimal and valid") {
  const Graph star = Graph::from_edges(5, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  const auto ac = brute_force_ac(star);
  const auto schedule = brute_force_schedule(star);
  REQUIRE(ac.has_value());
  REQUIRE(schedule.has_value());
  CHECK(schedule->rounds() == *ac);
  CHECK(run_schedule(star, *schedule).all_acquainted);
  CHECK(*ac == ac_by_enumeration(star, 4));
}

TEST_CASE("enumerate_matchings lists every matching once") {
  CHECK(enumerate_matchings(make_complete_graph(4)).size() == 9);
  CHECK(enumerate_matchings(make_path_graph(5)).size() == matchings_of(make_path_graph(5)).size());
}

TEST_CASE("round cap and input checks") {
  CHECK_FALSE(brute_force_ac(make_path_graph(6), 1).has_value());
  CHECK_THROWS_AS(brute_force_ac(make_path_graph(7)), Error);
  CHECK_THROWS_AS(brute_force_ac(Graph::from_edges(4, std::vector<Edge>{{0, 1}, {2, 3}})), Error);
  CHECK_THROWS_AS(brute_force_helicopter_ac(Graph(3)), Error);
}
