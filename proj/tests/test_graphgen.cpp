#include <cmath>
#include <numbers>
#include <vector>

#include "acqlab/error.hpp"
#include "acqlab/graphgen.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace acqlab;

TEST_CASE("sample_points is deterministic in (n, seed) and uses the unit square") {
  const PointSet a = sample_points(500, 3);
  const PointSet b = sample_points(500, 3);
  const PointSet c = sample_points(500, 4);
  CHECK(a.points == b.points);
  CHECK(a.points != c.points);
  CHECK(a.seed == 3);
  for (const Point& p : a.points) {
    CHECK(p.x >= 0);
    CHECK(p.x < 1);
    CHECK(p.y >= 0);
    CHECK(p.y < 1);
  }
}

TEST_CASE("build_rgg agrees with the all-pairs distance check") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const PointSet pts = sample_points(400, seed);
    for (double r : {0.01, 0.05, 0.2, 1.0, 1.4}) {
      const GeometricGraph g = build_rgg(pts, r);
      CHECK(g.graph.edges() == oracle::rgg_edges(pts, r));
      CHECK(g.edge_prob == 1.0);
      CHECK(g.radius == r);
    }
  }
}

TEST_CASE("distance exactly r is an edge") {
  const PointSet pts = make_point_set({{0.0, 0.0}, {0.5, 0.0}, {0.5, 0.75}, {1.0, 1.0}});
  const GeometricGraph g = build_rgg(pts, 0.5);
  CHECK(g.graph.adjacent(0, 1));
  CHECK_FALSE(g.graph.adjacent(1, 2));
  CHECK_FALSE(g.graph.adjacent(2, 3));
}

TEST_CASE("radius must lie strictly between 0 and sqrt 2") {
  const PointSet pts = sample_points(10, 1);
  CHECK_THROWS_AS(build_rgg(pts, 0.0), Error);
  CHECK_THROWS_AS(build_rgg(pts, -0.1), Error);
  CHECK_THROWS_AS(build_rgg(pts, std::sqrt(2.0)), Error);
  try {
    build_rgg(pts, 2.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::radius_out_of_range);
  }
}

TEST_CASE("make_point_set rejects points outside the square") {
  CHECK_THROWS_AS(make_point_set({{1.5, 0.5}}), Error);
  CHECK_THROWS_AS(make_point_set({{0.5, -0.01}}), Error);
  CHECK_NOTHROW(make_point_set({{1.0, 0.0}}));
}

TEST_CASE("percolation keeps a subset decided by per-edge coins") {
  const PointSet pts = sample_points(800, 2);
  const GeometricGraph full = build_rgg(pts, 0.08);
  const GeometricGraph kept = percolate(full, 0.3, 17);
  CHECK(kept.edge_prob == 0.3);
  CHECK(kept.percolation_seed == 17);
  for (const Edge& e : kept.graph.edges()) CHECK(full.graph.adjacent(e.u, e.v));
  std::size_t expected = 0;
  for (const Edge& e : full.graph.edges()) expected += percolation_coin(17, e.u, e.v, 0.3);
  CHECK(kept.edge_count() == expected);
  CHECK(percolation_coin(17, 3, 9, 0.5) == percolation_coin(17, 9, 3, 0.5));

  // Share of kept edges within 4 standard errors of p.
  const double share = static_cast<double>(kept.edge_count()) / static_cast<double>(full.edge_count());
  const double se = std::sqrt(0.3 * 0.7 / static_cast<double>(full.edge_count()));
  CHECK(std::abs(share - 0.3) < 4 * se);
}

TEST_CASE("the fused builder equals percolate after build_rgg") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const PointSet pts = sample_points(1000, seed);
    const GeometricGraph a = percolate(build_rgg(pts, 0.06), 0.4, seed);
    const GeometricGraph b = build_percolated_rgg(pts, 0.06, 0.4, seed);
    CHECK(a.graph.edges() == b.graph.edges());
  }
}

TEST_CASE("percolation at the extremes") {
  const PointSet pts = sample_points(300, 5);
  const GeometricGraph full = build_rgg(pts, 0.1);
  CHECK(percolate(full, 0.0, 1).edge_count() == 0);
  CHECK(percolate(full, 1.0, 1).graph.edges() == full.graph.edges());
  CHECK_THROWS_AS(percolate(full, 1.2, 1), Error);
  CHECK_THROWS_AS(percolate(full, -0.1, 1), Error);
  CHECK_THROWS_AS(percolate(percolate(full, 0.5, 1), 0.5, 1), Error);
}

TEST_CASE("regime radii satisfy their defining equations") {
  const double n = 10000;
  const double ln = std::log(n);
  const double rd = dense_radius(10000, 100);
  CHECK(std::numbers::pi * n * rd * rd == doctest::Approx(100 * ln));
  const double rs = sparse_radius(10000);
  CHECK(std::numbers::pi * n * rs * rs == doctest::Approx(ln + 2 * std::log(ln)));
  const double rp = percolated_radius(10000, 0.3, 80);
  CHECK(0.3 * n * rp * rp == doctest::Approx(80 * ln));
}
