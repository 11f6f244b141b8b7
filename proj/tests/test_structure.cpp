#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "acqlab/error.hpp"
#include "acqlab/structure.hpp"
#include "doctest.h"

using namespace acqlab;

namespace {

// 4 x 4 cells of side 1/4 and a radius just above side * (1 + sqrt 2), so
// only side-sharing cells are adjacent under the corner rule. Every good cell
// holds four points near its top-right corner; all other points are given
// explicitly.
constexpr std::size_t kSide = 4;
constexpr double kThreshold = 4;
const double kRadius = 0.25 * (1 + std::sqrt(2.0)) + 0.0005;

struct Fixture {
  std::vector<Point> points;
  std::vector<Vertex> extra;  // ids of the explicit points, in order

  Fixture(const std::set<CellId>& bad, const std::vector<Point>& explicit_points) {
    for (CellId c = 0; c < kSide * kSide; ++c) {
      if (bad.count(c)) continue;
      const double x1 = 0.25 * static_cast<double>(c % kSide + 1);
      const double y1 = 0.25 * static_cast<double>(c / kSide + 1);
      for (int k = 0; k < 4; ++k) points.push_back({x1 - 0.01 - 0.002 * k, y1 - 0.01});
    }
    for (const Point& p : explicit_points) {
      extra.push_back(static_cast<Vertex>(points.size()));
      points.push_back(p);
    }
  }

  GeometricGraph graph() const { return build_rgg(make_point_set(points), kRadius); }
};

StructureConfig fixture_config() {
  StructureConfig c;
  c.cells_per_side = kSide;
  c.threshold = kThreshold;
  return c;
}

const std::set<CellId> kCornerHole = {0, 1, 4, 5};
const std::vector<Point> kTriangle = {{0.010, 0.010}, {0.012, 0.010}, {0.010, 0.012}};

std::vector<Point> with(std::vector<Point> a, const std::vector<Point>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

TEST_CASE("three dangerous points with a single bridge") {
  const Fixture f(kCornerHole, with(kTriangle, {{0.3, 0.3}}));
  const GeometricGraph g = f.graph();
  const StructureAnalysis a = analyze(g, fixture_config());
  const Vertex bridge = f.extra[3];

  CHECK(a.components.size() == 1);
  CHECK(a.components[0].size() == 12);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const bool corner = std::find(f.extra.begin(), f.extra.begin() + 3, v) != f.extra.begin() + 3;
    CHECK(a.labels[v] == (corner ? PointLabel::dangerous : PointLabel::safe));
  }
  CHECK(a.witness_cell[bridge] == 2);

  REQUIRE(a.obstructions.size() == 1);
  const Obstruction& o = a.obstructions[0];
  CHECK(o.kind == ObstructionKind::dangerous_cluster);
  CHECK(o.members == std::vector<Vertex>(f.extra.begin(), f.extra.begin() + 3));
  CHECK(o.crucial == std::vector<Vertex>{bridge});
  CHECK(crucial_vertices(g, a, o.members) == o.crucial);

  CHECK_FALSE(a.properties[0].holds);  // 12 of 16 cells
  for (std::size_t i = 1; i < 5; ++i) CHECK(a.properties[i].holds);
  CHECK_FALSE(a.all_properties());
}

TEST_CASE("without the bridge the obstruction has no crucial vertex") {
  const Fixture f(kCornerHole, kTriangle);
  StructureAnalysis a = analyze(f.graph(), fixture_config());
  REQUIRE(a.obstructions.size() == 1);
  CHECK(a.obstructions[0].crucial.empty());
  try {
    assign_and_partition(a, {0.01, 2});
    FAIL("expected NoCrucial");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::no_crucial);
  }
}

TEST_CASE("an obstruction goes to the cell holding most of its crucial vertices") {
  // Three crucial vertices see only cell 2, two see only cell 8.
  const std::vector<Point> hubs = {{0.30, 0.05}, {0.31, 0.05}, {0.30, 0.06}, {0.05, 0.30}, {0.05, 0.31}};
  const Fixture f(kCornerHole, with(kTriangle, hubs));
  const GeometricGraph g = f.graph();
  StructureAnalysis a = analyze(g, fixture_config());
  REQUIRE(a.obstructions.size() == 1);
  CHECK(a.obstructions[0].crucial == std::vector<Vertex>(f.extra.begin() + 3, f.extra.end()));
  for (int i = 3; i < 6; ++i) CHECK(a.witness_cell[f.extra[i]] == 2);
  for (int i = 6; i < 8; ++i) CHECK(a.witness_cell[f.extra[i]] == 8);

  assign_and_partition(a, {0.01, 3});
  for (int i = 0; i < 3; ++i) CHECK(a.home_cell[f.extra[i]] == 2);
  for (int i = 3; i < 6; ++i) CHECK(a.home_cell[f.extra[i]] == 2);
  for (int i = 6; i < 8; ++i) CHECK(a.home_cell[f.extra[i]] == 8);
  CHECK(a.partitioned);

  // A(c) starts with the cell's own members, then the vertices homed there.
  const auto& set2 = a.cell_sets[2];
  CHECK(set2.size() == 4 + 6);
  for (Vertex v : a.dissection.members(2)) CHECK(std::find(set2.begin(), set2.begin() + 4, v) != set2.begin() + 4);
  CHECK(a.cell_sets[8].size() == 4 + 2);
  // L = ceil(10 / 3) classes of at most 3.
  CHECK(a.class_size == 3);
  CHECK(a.class_count == 4);
  for (CellId c : a.components[0]) {
    std::vector<Vertex> joined;
    for (const auto& cls : a.classes[c]) {
      CHECK(cls.size() <= 3);
      joined.insert(joined.end(), cls.begin(), cls.end());
    }
    CHECK(joined == a.cell_sets[c]);
  }
  CHECK(a.cell_sets[0].empty());
}

TEST_CASE("dangerous points at intermediate distance violate P3") {
  const Fixture f(kCornerHole, {{0.010, 0.010}, {0.012, 0.010}, {0.100, 0.010}});
  const StructureAnalysis a = analyze(f.graph(), fixture_config());
  const PropertyCheck& p3 = a.properties[2];
  CHECK_FALSE(p3.holds);
  REQUIRE(p3.witness.has_value());
  const Vertex far = f.extra[2];
  CHECK((p3.witness->first == far || p3.witness->second == far));
  CHECK(p3.witness->first < p3.witness->second);
  CHECK(a.properties[1].holds);
  CHECK(a.properties[3].holds);
  CHECK(a.properties[4].holds);
}

TEST_CASE("a second component forms a gamma-plus set and its spread violates P2") {
  const Fixture f({2, 6, 10, 14}, {});
  const GeometricGraph g = f.graph();
  const StructureAnalysis a = analyze(g, fixture_config());
  REQUIRE(a.components.size() == 2);
  CHECK(a.components[0] == std::vector<CellId>{0, 1, 4, 5, 8, 9, 12, 13});
  CHECK(a.components[1] == std::vector<CellId>{3, 7, 11, 15});
  CHECK(a.component_of[3] == 1);
  CHECK(a.component_of[2] == StructureAnalysis::kNoComponent);
  REQUIRE(a.obstructions.size() == 1);
  const Obstruction& o = a.obstructions[0];
  CHECK(o.kind == ObstructionKind::gamma_plus);
  CHECK(o.component == 1);
  std::vector<Vertex> expected;
  for (CellId c : a.components[1])
    for (Vertex v : a.dissection.members(c)) expected.push_back(v);
  std::sort(expected.begin(), expected.end());
  CHECK(o.members == expected);
  CHECK_FALSE(a.properties[1].holds);
  REQUIRE(a.properties[1].witness.has_value());
  const auto [x, y] = *a.properties[1].witness;
  CHECK(std::sqrt(squared_distance(g.points[x], g.points[y])) >= kRadius / 100);
}

TEST_CASE("two gamma-plus sets closer than the separation violate P4") {
  const Fixture f({1, 5, 9, 13, 8}, {});
  const GeometricGraph g = f.graph();
  const StructureAnalysis a = analyze(g, fixture_config());
  REQUIRE(a.components.size() == 3);
  CHECK(a.components[1] == std::vector<CellId>{0, 4});
  CHECK(a.components[2] == std::vector<CellId>{12});
  CHECK(a.obstructions.size() == 2);
  const PropertyCheck& p4 = a.properties[3];
  CHECK_FALSE(p4.holds);
  REQUIRE(p4.witness.has_value());
  CHECK(a.obstruction_of[p4.witness->first] != a.obstruction_of[p4.witness->second]);
}

TEST_CASE("analysis agrees with direct definitions on random sparse instances") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const std::size_t n = 4000;
    const GeometricGraph g = build_rgg(sample_points(n, seed), sparse_radius(n));
    const StructureAnalysis a = analyze(g);
    const Dissection& d = a.dissection;
    const double ln = std::log(static_cast<double>(n));
    CHECK(d.m() == static_cast<std::size_t>(std::ceil(std::sqrt(n / ln))));
    CHECK(a.threshold == doctest::Approx(0.1 * ln));
    CHECK(a.separation == doctest::Approx(10 * g.radius));

    // Labels from neighbour counts per cell.
    for (Vertex v = 0; v < n; ++v) {
      std::map<CellId, int> count;
      for (Vertex w : g.graph.neighbors(v)) ++count[d.cell_of(w)];
      std::uint32_t best = StructureAnalysis::kNoComponent;
      for (auto [c, k] : count)
        if (a.good[c] && k >= a.threshold) best = std::min(best, a.component_of[c]);
      const PointLabel expect = best == StructureAnalysis::kNoComponent ? PointLabel::dangerous
                                : best == 0                              ? PointLabel::safe
                                                                         : PointLabel::risky;
      CHECK(a.labels[v] == expect);
    }

    // Obstructions are disjoint, cover exactly the intended points and list
    // every safe common neighbour as crucial.
    std::vector<int> covered(n, 0);
    for (std::size_t i = 0; i < a.obstructions.size(); ++i) {
      const Obstruction& o = a.obstructions[i];
      for (Vertex v : o.members) {
        ++covered[v];
        CHECK(a.obstruction_of[v] == i);
      }
      std::vector<Vertex> crucial;
      for (Vertex c = 0; c < n; ++c) {
        if (a.labels[c] != PointLabel::safe) continue;
        if (std::all_of(o.members.begin(), o.members.end(), [&](Vertex u) { return g.graph.adjacent(u, c); }))
          crucial.push_back(c);
      }
      CHECK(o.crucial == crucial);
    }
    for (Vertex v = 0; v < n; ++v) {
      const std::uint32_t comp = a.component_of[d.cell_of(v)];
      const bool in_plus = (comp != StructureAnalysis::kNoComponent && comp >= 1) || a.labels[v] == PointLabel::risky;
      const bool expect = in_plus || a.labels[v] == PointLabel::dangerous;
      CHECK(covered[v] == (expect ? 1 : 0));
    }

    // P3 by brute force over dangerous pairs.
    bool p3 = true;
    const double small = g.radius / 100;
    for (Vertex u = 0; u < n && p3; ++u) {
      if (a.labels[u] != PointLabel::dangerous) continue;
      for (Vertex v = u + 1; v < n; ++v) {
        if (a.labels[v] != PointLabel::dangerous) continue;
        const double dist = std::sqrt(squared_distance(g.points[u], g.points[v]));
        if (dist >= small && dist <= a.separation) {
          p3 = false;
          break;
        }
      }
    }
    CHECK(a.properties[2].holds == p3);
    // Cell occupancy at least T exactly for good cells.
    for (CellId c = 0; c < d.cell_count(); ++c) CHECK((a.good[c] != 0) == (d.occupancy(c) >= a.threshold));
  }
}

TEST_CASE("occupancy report") {
  const GeometricGraph g = build_rgg(sample_points(3000, 2), sparse_radius(3000));
  const StructureAnalysis a = analyze(g);
  std::size_t max_cell = 0;
  for (CellId c = 0; c < a.dissection.cell_count(); ++c) max_cell = std::max(max_cell, a.dissection.occupancy(c));
  const double ln = std::log(3000.0);
  const OccupancyReport r = check_occupancy(a, static_cast<double>(max_cell) / ln, 1e9, 1e9);
  CHECK(r.max_cell == max_cell);
  CHECK(r.cells_ok);
  CHECK(r.max_cell_set == 0);
  CHECK_FALSE(check_occupancy(a, static_cast<double>(max_cell - 1) / ln, 1e9, 1e9).cells_ok);
}

TEST_CASE("block report matches a direct window scan") {
  const std::size_t n = 5000;
  const GeometricGraph g = build_rgg(sample_points(n, 3), sparse_radius(n));
  const double threshold = 0.3 * std::log(static_cast<double>(n));
  for (std::size_t block : {1, 3, 7}) {
    const BlockReport r = check_blocks(g, block, 0.5, threshold);
    const StructureAnalysis a = analyze(g);
    const Dissection& d = a.dissection;
    const std::size_t m = d.m();
    double worst = 0;
    std::size_t corner_bad = 0;
    for (std::size_t i = 0; i + block <= m; ++i) {
      for (std::size_t j = 0; j + block <= m; ++j) {
        std::size_t bad = 0;
        for (std::size_t x = i; x < i + block; ++x)
          for (std::size_t y = j; y < j + block; ++y) bad += d.occupancy(d.cell(x, y)) < threshold;
        worst = std::max(worst, static_cast<double>(bad) * d.side() * d.side());
        if ((i == 0 || i + block == m) && (j == 0 || j + block == m)) corner_bad += bad;
      }
    }
    CHECK(r.block == block);
    CHECK(r.worst_area == doctest::Approx(worst));
    CHECK(r.corner_bad_cells == corner_bad);
    CHECK(r.area_limit == doctest::Approx(1.5 * std::log(5000.0) / 5000));
  }
  CHECK_THROWS_AS(check_blocks(g, 0, 0.5, 1), Error);
}

TEST_CASE("class size must be positive") {
  const GeometricGraph g = build_rgg(sample_points(2000, 1), sparse_radius(2000));
  StructureAnalysis a = analyze(g);
  try {
    assign_and_partition(a, {});
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::config_error);
  }
}

TEST_CASE("names") {
  CHECK(to_string(PointLabel::risky) == "risky");
  CHECK(to_string(ObstructionKind::gamma_plus) == "gamma_plus");
}
