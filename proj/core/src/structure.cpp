#include "acqlab/structure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "acqlab/error.hpp"

namespace acqlab {

namespace {

double log_n(std::size_t n) { return std::log(static_cast<double>(std::max<std::size_t>(n, 2))); }

std::size_t eta_cells(std::size_t n, double eta) {
  if (!(eta > 0)) throw Error(ErrorCode::config_error, "eta must be positive");
  const double m = std::ceil(std::sqrt(static_cast<double>(n) / (eta * eta * log_n(n))));
  return std::max<std::size_t>(1, static_cast<std::size_t>(m));
}

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0U); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Buckets a vertex subset into a square grid whose side is at least `reach`,
// so any pair within `reach` lies in the same or a neighbouring bucket.
class BucketIndex {
 public:
  BucketIndex(const PointSet& points, std::span<const Vertex> vertices, double reach) : points_(&points) {
    dims_ = reach > 0 ? static_cast<std::size_t>(std::clamp(std::floor(1.0 / reach), 1.0, 2048.0)) : 2048;
    offsets_.assign(dims_ * dims_ + 1, 0);
    for (Vertex v : vertices) ++offsets_[bucket(v) + 1];
    for (std::size_t b = 0; b < dims_ * dims_; ++b) offsets_[b + 1] += offsets_[b];
    items_.resize(vertices.size());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (Vertex v : vertices) items_[fill[bucket(v)]++] = v;
  }

  // Calls visit(w) for every indexed vertex w in the 3 x 3 buckets around v;
  // stops early when visit returns true.
  template <class Visit>
  bool around(Vertex v, Visit&& visit) const {
    const auto [bx, by] = coords(v);
    for (long dy = -1; dy <= 1; ++dy) {
      for (long dx = -1; dx <= 1; ++dx) {
        const long x = static_cast<long>(bx) + dx;
        const long y = static_cast<long>(by) + dy;
        if (x < 0 || y < 0 || x >= static_cast<long>(dims_) || y >= static_cast<long>(dims_)) continue;
        const std::size_t b = static_cast<std::size_t>(y) * dims_ + static_cast<std::size_t>(x);
        for (std::size_t i = offsets_[b]; i < offsets_[b + 1]; ++i)
          if (visit(items_[i])) return true;
      }
    }
    return false;
  }

 private:
  std::pair<std::size_t, std::size_t> coords(Vertex v) const {
    const auto clamp = [this](double t) {
      const auto i = static_cast<long>(std::floor(t * static_cast<double>(dims_)));
      return static_cast<std::size_t>(std::clamp<long>(i, 0, static_cast<long>(dims_) - 1));
    };
    return {clamp((*points_)[v].x), clamp((*points_)[v].y)};
  }
  std::size_t bucket(Vertex v) const {
    const auto [x, y] = coords(v);
    return y * dims_ + x;
  }

  const PointSet* points_;
  std::size_t dims_ = 1;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> items_;
};

// First pair (a in left, b in right, a != b) within `reach` accepted by
// `accept(a, b, squared distance)`.
template <class Accept>
std::optional<std::pair<Vertex, Vertex>> find_pair(const PointSet& points, std::span<const Vertex> left,
                                                   std::span<const Vertex> right, double reach, Accept&& accept) {
  const BucketIndex index(points, right, reach);
  const double reach2 = reach * reach;
  for (Vertex a : left) {
    std::optional<std::pair<Vertex, Vertex>> found;
    index.around(a, [&](Vertex b) {
      if (a == b) return false;
      const double d2 = squared_distance(points[a], points[b]);
      if (d2 <= reach2 && accept(a, b, d2)) {
        found = std::pair{std::min(a, b), std::max(a, b)};
        return true;
      }
      return false;
    });
    if (found) return found;
  }
  return std::nullopt;
}

std::string pair_text(std::pair<Vertex, Vertex> p) {
  return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

void find_components(StructureAnalysis& a) {
  const Dissection& d = a.dissection;
  const std::size_t cells = d.cell_count();
  a.component_of.assign(cells, StructureAnalysis::kNoComponent);
  const auto offsets = d.adjacency_offsets();
  const long m = static_cast<long>(d.m());
  std::vector<std::vector<CellId>> found;
  for (CellId start = 0; start < cells; ++start) {
    if (!a.good[start] || a.component_of[start] != StructureAnalysis::kNoComponent) continue;
    const auto id = static_cast<std::uint32_t>(found.size());
    std::vector<CellId> comp{start};
    a.component_of[start] = id;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      const long r0 = static_cast<long>(d.row(comp[head]));
      const long c0 = static_cast<long>(d.col(comp[head]));
      for (auto [dr, dc] : offsets) {
        const long r = r0 + dr;
        const long c = c0 + dc;
        if (r < 0 || c < 0 || r >= m || c >= m) continue;
        const auto next = static_cast<CellId>(r * m + c);
        if (!a.good[next] || a.component_of[next] != StructureAnalysis::kNoComponent) continue;
        a.component_of[next] = id;
        comp.push_back(next);
      }
    }
    std::sort(comp.begin(), comp.end());
    found.push_back(std::move(comp));
  }
  // Largest first; equal sizes keep the order of their smallest cell.
  std::stable_sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.size() > y.size(); });
  a.components = std::move(found);
  for (std::uint32_t i = 0; i < a.components.size(); ++i)
    for (CellId c : a.components[i]) a.component_of[c] = i;
}

void classify(const GeometricGraph& g, StructureAnalysis& a) {
  const std::size_t n = a.n;
  const Dissection& d = a.dissection;
  a.labels.assign(n, PointLabel::dangerous);
  a.witness_cell.assign(n, kNoCell);
  std::vector<std::uint32_t> count(d.cell_count(), 0);
  std::vector<CellId> touched;
  for (Vertex v = 0; v < n; ++v) {
    touched.clear();
    for (Vertex w : g.graph.neighbors(v)) {
      const CellId c = d.cell_of(w);
      if (count[c]++ == 0) touched.push_back(c);
    }
    std::sort(touched.begin(), touched.end());
    // Best qualifying cell: lowest component index first, then most
    // neighbours, then smallest cell.
    CellId best = kNoCell;
    for (CellId c : touched) {
      const std::uint32_t comp = a.component_of[c];
      if (comp == StructureAnalysis::kNoComponent || static_cast<double>(count[c]) < a.threshold) continue;
      if (best == kNoCell || comp < a.component_of[best] ||
          (comp == a.component_of[best] && count[c] > count[best])) {
        best = c;
      }
    }
    if (best != kNoCell) {
      a.labels[v] = a.component_of[best] == 0 ? PointLabel::safe : PointLabel::risky;
      a.witness_cell[v] = best;
    }
    for (CellId c : touched) count[c] = 0;
  }
}

void build_obstructions(const GeometricGraph& g, StructureAnalysis& a) {
  const std::size_t n = a.n;
  const Dissection& d = a.dissection;
  a.obstruction_of.assign(n, StructureAnalysis::kNoObstruction);
  // Gamma-plus sets: points in cells of a smaller component, then risky
  // points outside those cells joining the component that made them risky.
  std::vector<std::vector<Vertex>> plus(a.components.size());
  for (Vertex v = 0; v < n; ++v) {
    const std::uint32_t comp = a.component_of[d.cell_of(v)];
    if (comp != StructureAnalysis::kNoComponent && comp >= 1) {
      plus[comp].push_back(v);
    } else if (a.labels[v] == PointLabel::risky) {
      plus[a.component_of[a.witness_cell[v]]].push_back(v);
    }
  }
  for (std::size_t i = 1; i < plus.size(); ++i) {
    if (plus[i].empty()) continue;
    Obstruction o;
    o.kind = ObstructionKind::gamma_plus;
    o.component = i;
    o.members = std::move(plus[i]);
    for (Vertex v : o.members) a.obstruction_of[v] = static_cast<std::uint32_t>(a.obstructions.size());
    a.obstructions.push_back(std::move(o));
  }

  // Dangerous clusters: dangerous points outside gamma-plus sets, linked
  // whenever closer than the separation.
  std::vector<Vertex> loose;
  for (Vertex v = 0; v < n; ++v)
    if (a.labels[v] == PointLabel::dangerous && a.obstruction_of[v] == StructureAnalysis::kNoObstruction)
      loose.push_back(v);
  std::vector<std::uint32_t> local(n, 0);
  for (std::uint32_t i = 0; i < loose.size(); ++i) local[loose[i]] = i;
  UnionFind uf(loose.size());
  const BucketIndex index(g.points, loose, a.separation);
  const double sep2 = a.separation * a.separation;
  for (Vertex v : loose) {
    index.around(v, [&](Vertex w) {
      if (w > v && squared_distance(g.points[v], g.points[w]) < sep2) uf.unite(local[v], local[w]);
      return false;
    });
  }
  std::vector<std::vector<Vertex>> clusters(loose.size());
  for (Vertex v : loose) clusters[uf.find(local[v])].push_back(v);
  for (auto& members : clusters) {
    if (members.empty()) continue;
    Obstruction o;
    o.kind = ObstructionKind::dangerous_cluster;
    o.members = std::move(members);
    for (Vertex v : o.members) a.obstruction_of[v] = static_cast<std::uint32_t>(a.obstructions.size());
    a.obstructions.push_back(std::move(o));
  }
  for (Obstruction& o : a.obstructions) o.crucial = crucial_vertices(g, a, o.members);
}

void check_properties(const GeometricGraph& g, StructureAnalysis& a) {
  const double cells = static_cast<double>(a.dissection.cell_count());
  auto& [p1, p2, p3, p4, p5] = a.properties;
  const std::size_t largest = a.components.empty() ? 0 : a.components[0].size();
  p1.holds = static_cast<double>(largest) > 0.99 * cells;
  p1.detail = "largest component has " + std::to_string(largest) + " of " +
              std::to_string(a.dissection.cell_count()) + " cells";

  const double small = a.radius / 100;
  const double small2 = small * small;
  for (const Obstruction& o : a.obstructions) {
    if (o.kind != ObstructionKind::gamma_plus) continue;
    for (std::size_t i = 0; i < o.members.size() && p2.holds; ++i) {
      for (std::size_t j = i + 1; j < o.members.size(); ++j) {
        if (squared_distance(g.points[o.members[i]], g.points[o.members[j]]) >= small2) {
          p2.holds = false;
          p2.witness = std::pair{o.members[i], o.members[j]};
          p2.detail = "gamma-plus set of component " + std::to_string(o.component) + " spans " + pair_text(*p2.witness);
          break;
        }
      }
    }
    if (!p2.holds) break;
  }

  std::vector<Vertex> dangerous;
  std::vector<Vertex> plus;
  for (Vertex v = 0; v < a.n; ++v) {
    if (a.labels[v] == PointLabel::dangerous) dangerous.push_back(v);
    const std::uint32_t o = a.obstruction_of[v];
    if (o != StructureAnalysis::kNoObstruction && a.obstructions[o].kind == ObstructionKind::gamma_plus)
      plus.push_back(v);
  }
  const double sep = a.separation;
  const double sep2 = sep * sep;
  auto set_of = [&](Vertex v) { return a.obstruction_of[v]; };

  if (auto w = find_pair(g.points, dangerous, dangerous, sep,
                         [&](Vertex, Vertex, double d2) { return d2 >= small2 && d2 <= sep2; })) {
    p3.holds = false;
    p3.witness = w;
    p3.detail = "dangerous points " + pair_text(*w) + " at intermediate distance";
  }
  if (auto w = find_pair(g.points, plus, plus, sep,
                         [&](Vertex x, Vertex y, double d2) { return d2 < sep2 && set_of(x) != set_of(y); })) {
    p4.holds = false;
    p4.witness = w;
    p4.detail = "gamma-plus sets closer than the separation at " + pair_text(*w);
  }
  for (Vertex v : dangerous) {
    // A dangerous point inside a gamma-plus set is at distance zero from it.
    const std::uint32_t o = set_of(v);
    if (o != StructureAnalysis::kNoObstruction && a.obstructions[o].kind == ObstructionKind::gamma_plus) {
      p5.holds = false;
      p5.witness = std::pair{v, v};
      p5.detail = "dangerous point " + std::to_string(v) + " lies in a gamma-plus set";
      break;
    }
  }
  if (p5.holds) {
    if (auto w = find_pair(g.points, dangerous, plus, sep, [&](Vertex, Vertex, double d2) { return d2 < sep2; })) {
      p5.holds = false;
      p5.witness = w;
      p5.detail = "dangerous point near a gamma-plus set at " + pair_text(*w);
    }
  }
}

}  // namespace

bool StructureAnalysis::all_properties() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyCheck& p) { return p.holds; });
}

StructureAnalysis analyze(const GeometricGraph& g, const StructureConfig& config) {
  StructureAnalysis a;
  a.config = config;
  a.n = g.num_vertices();
  a.radius = g.radius;
  a.separation = config.separation_factor * g.radius;
  a.threshold = config.threshold > 0 ? config.threshold : config.delta * log_n(a.n);
  const std::size_t m = config.cells_per_side > 0 ? config.cells_per_side : eta_cells(a.n, config.eta);
  a.dissection = Dissection(g.points, m, g.radius, CellAdjacency::corner_rule);
  a.good.assign(a.dissection.cell_count(), 0);
  if (a.n > 0) {
    for (CellId c = 0; c < a.dissection.cell_count(); ++c)
      a.good[c] = static_cast<double>(a.dissection.occupancy(c)) >= a.threshold;
  }
  find_components(a);
  classify(g, a);
  build_obstructions(g, a);
  check_properties(g, a);
  return a;
}

std::vector<Vertex> crucial_vertices(const GeometricGraph& g, const StructureAnalysis& a,
                                     std::span<const Vertex> members) {
  std::vector<Vertex> out;
  if (members.empty()) return out;
  for (Vertex v : g.graph.neighbors(members[0])) {
    if (a.labels[v] != PointLabel::safe) continue;
    const bool all = std::all_of(members.begin(), members.end(),
                                 [&](Vertex u) { return u != v && g.graph.adjacent(u, v); });
    if (all) out.push_back(v);
  }
  return out;
}

OccupancyReport check_occupancy(const StructureAnalysis& a, double cell_constant, double obstruction_constant,
                                double cell_set_constant) {
  OccupancyReport r;
  const double ln = log_n(a.n);
  for (CellId c = 0; c < a.dissection.cell_count(); ++c) r.max_cell = std::max(r.max_cell, a.dissection.occupancy(c));
  for (const Obstruction& o : a.obstructions) r.max_obstruction = std::max(r.max_obstruction, o.size());
  for (const auto& set : a.cell_sets) r.max_cell_set = std::max(r.max_cell_set, set.size());
  r.cells_ok = static_cast<double>(r.max_cell) <= cell_constant * ln;
  r.obstructions_ok = static_cast<double>(r.max_obstruction) <= obstruction_constant * ln;
  r.cell_sets_ok = static_cast<double>(r.max_cell_set) <= cell_set_constant * ln;
  return r;
}

BlockReport check_blocks(const GeometricGraph& g, std::size_t block, double eps, double threshold, double eta) {
  if (block == 0) throw Error(ErrorCode::config_error, "block size must be at least 1");
  const std::size_t n = g.num_vertices();
  const std::size_t m = eta_cells(n, eta);
  const Dissection d(g.points, m, g.radius, CellAdjacency::corner_rule);
  const std::size_t k = std::min(block, m);
  const double cell_area = d.side() * d.side();
  BlockReport r;
  r.block = k;
  const double ln = log_n(n);
  r.area_limit = (1 + eps) * ln / static_cast<double>(std::max<std::size_t>(n, 1));
  r.boundary_limit = r.area_limit / 2;

  // prefix[(i) * (m + 1) + j]: bad cells with row < i and col < j.
  std::vector<std::size_t> prefix((m + 1) * (m + 1), 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const bool bad = static_cast<double>(d.occupancy(d.cell(i, j))) < threshold;
      prefix[(i + 1) * (m + 1) + j + 1] =
          prefix[i * (m + 1) + j + 1] + prefix[(i + 1) * (m + 1) + j] - prefix[i * (m + 1) + j] + (bad ? 1 : 0);
    }
  }
  auto bad_in = [&](std::size_t i, std::size_t j) {
    return prefix[(i + k) * (m + 1) + j + k] - prefix[i * (m + 1) + j + k] - prefix[(i + k) * (m + 1) + j] +
           prefix[i * (m + 1) + j];
  };
  for (std::size_t i = 0; i + k <= m; ++i) {
    for (std::size_t j = 0; j + k <= m; ++j) {
      const double area = static_cast<double>(bad_in(i, j)) * cell_area;
      r.worst_area = std::max(r.worst_area, area);
      const bool boundary = i == 0 || j == 0 || i + k == m || j + k == m;
      if (boundary) r.worst_boundary_area = std::max(r.worst_boundary_area, area);
      const bool corner = (i == 0 || i + k == m) && (j == 0 || j + k == m);
      if (corner) r.corner_bad_cells += bad_in(i, j);
    }
  }
  r.interior_ok = r.worst_area <= r.area_limit;
  r.boundary_ok = r.worst_boundary_area <= r.boundary_limit;
  r.corners_ok = r.corner_bad_cells == 0;
  return r;
}

void assign_and_partition(StructureAnalysis& a, const PartitionConfig& config) {
  const Dissection& d = a.dissection;
  const std::size_t size = config.class_size > 0
                               ? config.class_size
                               : static_cast<std::size_t>(std::floor(config.class_fraction * a.threshold));
  if (size == 0) throw Error(ErrorCode::config_error, "class size rounds down to zero");

  a.home_cell.assign(a.n, kNoCell);
  for (Vertex v = 0; v < a.n; ++v) {
    if (a.labels[v] != PointLabel::safe) continue;
    const CellId own = d.cell_of(v);
    a.home_cell[v] = a.in_largest_component(own) ? own : a.witness_cell[v];
  }
  for (std::size_t i = 0; i < a.obstructions.size(); ++i) {
    const Obstruction& o = a.obstructions[i];
    if (o.crucial.empty()) {
      throw Error(ErrorCode::no_crucial, "obstruction " + std::to_string(i) + " of " + std::to_string(o.size()) +
                                             " points has no crucial vertex");
    }
    std::vector<std::pair<CellId, std::size_t>> tally;
    for (Vertex v : o.crucial) {
      const CellId c = a.home_cell[v];
      auto it = std::find_if(tally.begin(), tally.end(), [c](const auto& t) { return t.first == c; });
      if (it == tally.end()) {
        tally.emplace_back(c, 1);
      } else {
        ++it->second;
      }
    }
    auto best = tally.front();
    for (const auto& t : tally)
      if (t.second > best.second || (t.second == best.second && t.first < best.first)) best = t;
    for (Vertex v : o.members) a.home_cell[v] = best.first;
  }

  a.cell_sets.assign(d.cell_count(), {});
  for (CellId c = 0; c < d.cell_count(); ++c) {
    if (!a.in_largest_component(c)) continue;
    for (Vertex v : d.members(c))
      if (a.home_cell[v] == c) a.cell_sets[c].push_back(v);
  }
  for (Vertex v = 0; v < a.n; ++v) {
    const CellId c = a.home_cell[v];
    if (c == kNoCell) throw Error(ErrorCode::structure_unusable, "vertex " + std::to_string(v) + " has no home cell");
    if (d.cell_of(v) != c) a.cell_sets[c].push_back(v);
  }

  std::size_t classes = 1;
  for (const auto& set : a.cell_sets) classes = std::max(classes, (set.size() + size - 1) / size);
  a.class_size = size;
  a.class_count = classes;
  a.classes.assign(d.cell_count(), {});
  for (CellId c = 0; c < d.cell_count(); ++c) {
    if (!a.in_largest_component(c)) continue;
    auto& parts = a.classes[c];
    parts.resize(classes);
    const auto& set = a.cell_sets[c];
    for (std::size_t i = 0; i < set.size(); ++i) parts[i / size].push_back(set[i]);
  }
  a.partitioned = true;
}

std::string_view to_string(PointLabel label) {
  switch (label) {
    case PointLabel::safe: return "safe";
    case PointLabel::risky: return "risky";
    case PointLabel::dangerous: return "dangerous";
  }
  return "?";
}

std::string_view to_string(ObstructionKind kind) {
  switch (kind) {
    case ObstructionKind::dangerous_cluster: return "dangerous_cluster";
    case ObstructionKind::gamma_plus: return "gamma_plus";
  }
  return "?";
}

}  // namespace acqlab
