#include "acqlab/strategies.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "acqlab/error.hpp"

namespace acqlab {

namespace {

void check_path(const Graph& host, std::span<const Vertex> path) {
  std::vector<Vertex> sorted(path.begin(), path.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::not_a_path, "path repeats a vertex");
  }
  if (!sorted.empty() && sorted.back() >= host.num_vertices()) {
    throw Error(ErrorCode::not_a_path, "path vertex outside the graph");
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!host.adjacent(path[i], path[i + 1])) {
      throw Error(ErrorCode::not_a_path, "vertices " + std::to_string(path[i]) + " and " +
                                             std::to_string(path[i + 1]) + " are not adjacent");
    }
  }
}

// Number of odd-even rounds on a path of n positions until the stop
// condition holds. Positions are simulated directly.
std::size_t sweep_length(std::size_t n, PathSweep sweep) {
  if (n <= 1) return 0;
  std::vector<std::size_t> at(n);  // at[position] = token
  std::iota(at.begin(), at.end(), 0);
  std::vector<std::vector<bool>> seen;
  std::size_t missing = 0;
  if (sweep == PathSweep::visit_all) {
    seen.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) seen[i][i] = true;
    missing = n * (n - 1);
  }
  auto reversed = [&] {
    for (std::size_t i = 0; i < n; ++i)
      if (at[i] != n - 1 - i) return false;
    return true;
  };
  for (std::size_t round = 1; round <= 2 * n; ++round) {
    const std::size_t first = (round - 1) % 2;
    for (std::size_t i = first; i + 1 < n; i += 2) {
      std::swap(at[i], at[i + 1]);
      if (sweep != PathSweep::visit_all) continue;
      for (std::size_t pos : {i, i + 1}) {
        if (!seen[at[pos]][pos]) {
          seen[at[pos]][pos] = true;
          --missing;
        }
      }
    }
    if (sweep == PathSweep::visit_all) {
      if (missing == 0) return round;
    } else if (reversed()) {
      return round;
    }
  }
  throw Error(ErrorCode::config_error, "odd-even sweep did not finish within 2n rounds");
}

}  // namespace

Schedule hamiltonian_path_schedule(const Graph& host, std::span<const Vertex> path, PathSweep sweep) {
  check_path(host, path);
  Schedule s;
  s.strategy = "hamiltonian_path";
  s.params["path_length"] = static_cast<std::int64_t>(path.size());
  s.params["sweep"] = std::string(sweep == PathSweep::visit_all ? "visit_all" : "reverse_order");
  const std::size_t n = path.size();
  const std::size_t length = sweep_length(n, sweep);
  if (length == 0) return s;
  Matching even;
  Matching odd;
  for (std::size_t i = 0; i + 1 < n; ++i) (i % 2 == 0 ? even : odd).emplace_back(path[i], path[i + 1]);
  const std::uint32_t ids[2] = {s.add_matching(std::move(even)), s.add_matching(std::move(odd))};
  for (std::size_t round = 0; round < length; ++round) s.push_round(ids[round % 2]);
  return s;
}

Schedule reverse_and_append(const Schedule& s) {
  Schedule out = s;
  out.append_reversed();
  return out;
}

Schedule lift_schedule(const Schedule& base, const GroupMap& groups, const TransferTable& transfer) {
  Schedule out;
  out.strategy = base.strategy;
  out.params = base.params;
  out.params["lifted"] = std::int64_t{1};
  for (const Matching& m : base.pool()) {
    Matching host;
    for (const Edge& e : m) {
      auto it = transfer.find({e.u, e.v});
      if (it == transfer.end()) {
        throw Error(ErrorCode::missing_transfer_matching,
                    "no transfer matching for groups " + std::to_string(e.u) + " and " + std::to_string(e.v));
      }
      if (e.u < groups.slots.size() && e.v < groups.slots.size() &&
          it->second.size() != groups.slots[e.u].size()) {
        throw Error(ErrorCode::missing_transfer_matching,
                    "transfer matching for groups " + std::to_string(e.u) + " and " + std::to_string(e.v) +
                        " does not cover every slot");
      }
      host.insert(host.end(), it->second.begin(), it->second.end());
    }
    out.add_matching(std::move(host));
  }
  for (std::uint32_t id : base.sequence()) out.push_round(id);
  return out;
}

std::vector<Vertex> grid_hamiltonian_path(std::size_t rows, std::size_t cols) {
  std::vector<Vertex> path;
  path.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = 0; k < cols; ++k) {
      const std::size_t c = r % 2 == 0 ? k : cols - 1 - k;
      path.push_back(static_cast<Vertex>(r * cols + c));
    }
  }
  return path;
}

std::vector<Edge> Tree::edges() const {
  std::vector<Edge> out;
  for (std::size_t v = 0; v < parent.size(); ++v)
    if (parent[v] != kNoParent) out.emplace_back(static_cast<Vertex>(v), parent[v]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Vertex>> Tree::adjacency() const {
  std::vector<std::vector<Vertex>> adj(parent.size());
  for (const Edge& e : edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

std::size_t Tree::max_degree() const {
  std::vector<std::size_t> degree(parent.size(), 0);
  for (const Edge& e : edges()) {
    ++degree[e.u];
    ++degree[e.v];
  }
  return degree.empty() ? 0 : *std::max_element(degree.begin(), degree.end());
}

Tree euclidean_spanning_tree(std::span<const Point> points, const Graph& graph) {
  const std::size_t n = graph.num_vertices();
  if (points.size() != n) throw Error(ErrorCode::config_error, "point count does not match the graph");
  struct Weighted {
    double length2;
    Edge e;
  };
  std::vector<Weighted> edges;
  edges.reserve(graph.num_edges());
  for (const Edge& e : graph.edges()) edges.push_back({squared_distance(points[e.u], points[e.v]), e});
  std::sort(edges.begin(), edges.end(), [](const Weighted& a, const Weighted& b) {
    if (a.length2 != b.length2) return a.length2 < b.length2;
    return a.e < b.e;
  });
  std::vector<Vertex> uf(n);
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](Vertex x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  std::vector<std::vector<Vertex>> adj(n);
  std::size_t used = 0;
  for (const Weighted& w : edges) {
    const Vertex a = find(w.e.u);
    const Vertex b = find(w.e.v);
    if (a == b) continue;
    uf[a] = b;
    adj[w.e.u].push_back(w.e.v);
    adj[w.e.v].push_back(w.e.u);
    ++used;
  }
  if (n > 0 && used + 1 != n) throw Error(ErrorCode::disconnected, "graph has no spanning tree");
  Tree tree;
  tree.parent.assign(n, Tree::kNoParent);
  if (n == 0) return tree;
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        tree.parent[w] = v;
        stack.push_back(w);
      }
    }
  }
  return tree;
}

Tree bounded_degree_spanning_tree(const GeometricGraph& g) {
  return euclidean_spanning_tree(g.points.points, g.graph);
}

Schedule tree_walk_schedule(const Graph& host, const Tree& tree, TreeWalkOptions options) {
  const std::size_t n = tree.size();
  if (host.num_vertices() != n) throw Error(ErrorCode::config_error, "tree and host sizes differ");
  const auto adj = tree.adjacency();
  Schedule s;
  s.strategy = "tree_walk";
  s.params["skip_acquainted"] = std::int64_t{options.skip_acquainted ? 1 : 0};
  if (n <= 1) return s;

  // One pool entry per tree edge.
  std::vector<std::pair<Edge, std::uint32_t>> edge_ids;
  for (const Edge& e : tree.edges()) {
    if (!host.adjacent(e.u, e.v)) throw Error(ErrorCode::not_a_path, "tree edge missing from the host");
    edge_ids.emplace_back(e, s.add_matching(Matching{e}));
  }
  auto id_of = [&](Vertex a, Vertex b) {
    const Edge key(a, b);
    auto it = std::lower_bound(edge_ids.begin(), edge_ids.end(), key,
                               [](const auto& entry, const Edge& k) { return entry.first < k; });
    return it->second;
  };

  ProcessState state(host);
  std::vector<std::size_t> next_child(n);
  for (Vertex walker = 0; walker < n; ++walker) {
    if (state.all_acquainted()) break;
    if (options.skip_acquainted) {
      bool knows_all = true;
      for (Agent other = 0; other < n && knows_all; ++other) knows_all = state.acquainted(walker, other);
      if (knows_all) continue;
    }
    // Every walk starts with all agents home, so the walker stands on its
    // own vertex. Depth-first tour from there.
    std::fill(next_child.begin(), next_child.end(), 0);
    std::vector<Vertex> stack{walker};
    std::vector<char> on_tour(n, 0);
    on_tour[walker] = 1;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      bool descended = false;
      while (next_child[v] < adj[v].size()) {
        const Vertex w = adj[v][next_child[v]++];
        if (on_tour[w]) continue;
        on_tour[w] = 1;
        const std::uint32_t id = id_of(v, w);
        s.push_round(id);
        state.apply(s.pool()[id]);
        stack.push_back(w);
        descended = true;
        break;
      }
      if (!descended) {
        stack.pop_back();
        if (!stack.empty()) {
          const std::uint32_t id = id_of(stack.back(), v);
          s.push_round(id);
          state.apply(s.pool()[id]);
        }
      }
    }
  }
  return s;
}

}  // namespace acqlab
