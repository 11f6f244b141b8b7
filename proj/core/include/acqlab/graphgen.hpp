#pragma once

#include <cstdint>
#include <vector>

#include "acqlab/graph.hpp"

namespace acqlab {

struct Point {
  double x = 0;
  double y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

inline double squared_distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Points in the unit square together with the seed that produced them
// (0 for hand-made sets).
struct PointSet {
  std::vector<Point> points;
  std::uint64_t seed = 0;

  std::size_t size() const { return points.size(); }
  const Point& operator[](std::size_t i) const { return points[i]; }
};

// Random geometric graph, optionally percolated. Vertex i sits at points[i].
// An edge joins points at distance at most `radius` (distance exactly equal
// to the radius counts). When edge_prob < 1 each such edge was kept with that
// probability using coins keyed by (percolation_seed, min endpoint, max
// endpoint).
struct GeometricGraph {
  PointSet points;
  double radius = 0;
  double edge_prob = 1.0;
  std::uint64_t percolation_seed = 0;
  Graph graph;

  std::size_t num_vertices() const { return graph.num_vertices(); }
  std::size_t edge_count() const { return graph.num_edges(); }
};

// n independent uniform points. Deterministic in (n, seed).
PointSet sample_points(std::size_t n, std::uint64_t seed);

// Wraps explicit coordinates; throws ConfigError outside [0,1]^2.
PointSet make_point_set(std::vector<Point> points);

// Throws RadiusOutOfRange unless 0 < r < sqrt(2).
GeometricGraph build_rgg(const PointSet& points, double r);

// Keeps each edge of an unpercolated graph independently with probability p.
// Throws DomainError unless 0 <= p <= 1.
GeometricGraph percolate(const GeometricGraph& g, double p, std::uint64_t seed);

// Same result as percolate(build_rgg(points, r), p, seed) without
// materializing the unpercolated graph.
GeometricGraph build_percolated_rgg(const PointSet& points, double r, double p, std::uint64_t seed);

// The coin used for edge {u, v}: true when the edge survives.
bool percolation_coin(std::uint64_t percolation_seed, Vertex u, Vertex v, double p);

// Regime helpers.
double dense_radius(std::size_t n, double k_const);       // pi n r^2 = K ln n
double sparse_radius(std::size_t n);                      // pi n r^2 = ln n + 2 ln ln n
double percolated_radius(std::size_t n, double p, double k_const);  // p n r^2 = K ln n

}  // namespace acqlab
