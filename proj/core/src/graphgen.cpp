#include "acqlab/graphgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "acqlab/error.hpp"
#include "acqlab/rng.hpp"

namespace acqlab {

namespace {

void check_radius(double r) {
  if (!(r > 0) || r >= std::sqrt(2.0)) {
    throw Error(ErrorCode::radius_out_of_range, "radius " + std::to_string(r) + " not in (0, sqrt 2)");
  }
}

void check_probability(double p) {
  if (!(p >= 0 && p <= 1)) throw Error(ErrorCode::domain_error, "edge probability " + std::to_string(p));
}

// Square buckets of side at least r; a point's neighbors lie in the 3x3
// block around its bucket.
class BucketGrid {
 public:
  BucketGrid(const PointSet& points, double r) {
    const double cap = std::max(1.0, std::floor(std::sqrt(static_cast<double>(points.size()))));
    dims_ = static_cast<std::size_t>(std::clamp(std::floor(1.0 / r), 1.0, cap));
    offsets_.assign(dims_ * dims_ + 1, 0);
    cell_.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      cell_[i] = index(points[i]);
      ++offsets_[cell_[i] + 1];
    }
    for (std::size_t c = 0; c < dims_ * dims_; ++c) offsets_[c + 1] += offsets_[c];
    members_.resize(points.size());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t i = 0; i < points.size(); ++i) members_[fill[cell_[i]]++] = static_cast<Vertex>(i);
  }

  template <class F>
  void for_each_candidate(Vertex v, F&& f) const {
    const std::size_t c = cell_[v];
    const long row = static_cast<long>(c / dims_);
    const long col = static_cast<long>(c % dims_);
    const long d = static_cast<long>(dims_);
    for (long rr = std::max(0L, row - 1); rr <= std::min(d - 1, row + 1); ++rr) {
      for (long cc = std::max(0L, col - 1); cc <= std::min(d - 1, col + 1); ++cc) {
        const std::size_t b = static_cast<std::size_t>(rr * d + cc);
        for (std::size_t k = offsets_[b]; k < offsets_[b + 1]; ++k) f(members_[k]);
      }
    }
  }

 private:
  std::size_t index(const Point& p) const {
    auto clampi = [this](double x) {
      const auto i = static_cast<long>(std::floor(x * static_cast<double>(dims_)));
      return static_cast<std::size_t>(std::clamp(i, 0L, static_cast<long>(dims_) - 1));
    };
    return clampi(p.y) * dims_ + clampi(p.x);
  }

  std::size_t dims_ = 1;
  std::vector<std::size_t> cell_;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> members_;
};

template <class Keep>
Graph build_graph(const PointSet& points, double r, Keep&& keep) {
  const std::size_t n = points.size();
  const double r2 = r * r;
  BucketGrid grid(points, r);
  std::vector<std::vector<Vertex>> upper(n);
  for (std::size_t u = 0; u < n; ++u) {
    const Vertex uu = static_cast<Vertex>(u);
    auto& list = upper[u];
    grid.for_each_candidate(uu, [&](Vertex v) {
      if (v > uu && squared_distance(points[u], points[v]) <= r2) list.push_back(v);
    });
    std::sort(list.begin(), list.end());
    std::erase_if(list, [&](Vertex v) { return !keep(uu, v); });
    list.shrink_to_fit();
  }
  return Graph::from_upper_lists(n, std::move(upper));
}

}  // namespace

PointSet sample_points(std::size_t n, std::uint64_t seed) {
  Rng rng(derive_seed(seed, "points"));
  PointSet out;
  out.seed = seed;
  out.points.resize(n);
  for (auto& p : out.points) {
    p.x = rng.uniform01();
    p.y = rng.uniform01();
  }
  return out;
}

PointSet make_point_set(std::vector<Point> points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point& p = points[i];
    if (!(p.x >= 0 && p.x <= 1 && p.y >= 0 && p.y <= 1)) {
      throw Error(ErrorCode::config_error, "point " + std::to_string(i) + " outside the unit square");
    }
  }
  PointSet out;
  out.points = std::move(points);
  return out;
}

GeometricGraph build_rgg(const PointSet& points, double r) {
  check_radius(r);
  GeometricGraph g;
  g.points = points;
  g.radius = r;
  g.graph = build_graph(points, r, [](Vertex, Vertex) { return true; });
  return g;
}

bool percolation_coin(std::uint64_t percolation_seed, Vertex u, Vertex v, double p) {
  if (u > v) std::swap(u, v);
  const std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | v;
  const std::uint64_t stream = derive_seed(percolation_seed, "percolation");
  return to_unit(mix64(stream ^ mix64(key))) < p;
}

GeometricGraph percolate(const GeometricGraph& g, double p, std::uint64_t seed) {
  check_probability(p);
  if (g.edge_prob != 1.0) throw Error(ErrorCode::config_error, "graph is already percolated");
  GeometricGraph out;
  out.points = g.points;
  out.radius = g.radius;
  out.edge_prob = p;
  out.percolation_seed = seed;
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<Vertex>> upper(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (Vertex v : g.graph.neighbors(static_cast<Vertex>(u))) {
      if (v > u && percolation_coin(seed, static_cast<Vertex>(u), v, p)) upper[u].push_back(v);
    }
  }
  out.graph = Graph::from_upper_lists(n, std::move(upper));
  return out;
}

GeometricGraph build_percolated_rgg(const PointSet& points, double r, double p, std::uint64_t seed) {
  check_radius(r);
  check_probability(p);
  GeometricGraph g;
  g.points = points;
  g.radius = r;
  g.edge_prob = p;
  g.percolation_seed = seed;
  if (p == 1.0) {
    g.graph = build_graph(points, r, [](Vertex, Vertex) { return true; });
  } else {
    g.graph = build_graph(points, r, [&](Vertex u, Vertex v) { return percolation_coin(seed, u, v, p); });
  }
  return g;
}

double dense_radius(std::size_t n, double k_const) {
  const double nn = static_cast<double>(n);
  return std::sqrt(k_const * std::log(nn) / (std::numbers::pi * nn));
}

double sparse_radius(std::size_t n) {
  const double nn = static_cast<double>(n);
  const double ln = std::log(nn);
  return std::sqrt((ln + 2.0 * std::log(ln)) / (std::numbers::pi * nn));
}

double percolated_radius(std::size_t n, double p, double k_const) {
  const double nn = static_cast<double>(n);
  return std::sqrt(k_const * std::log(nn) / (p * nn));
}

}  // namespace acqlab
