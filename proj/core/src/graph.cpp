#include "acqlab/graph.hpp"

#include <algorithm>
#include <string>

#include "acqlab/error.hpp"

namespace acqlab {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  Graph g(n);
  std::vector<Edge> sorted(edges.begin(), edges.end());
  for (const Edge& e : sorted) {
    if (e.u == e.v) throw Error(ErrorCode::config_error, "self loop at vertex " + std::to_string(e.u));
    if (e.v >= n) throw Error(ErrorCode::config_error, "edge endpoint " + std::to_string(e.v) + " out of range");
  }
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  for (const Edge& e : sorted) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.targets_.resize(sorted.size() * 2);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted by (u, v), so each list receives its entries in order:
  // lower neighbors arrive while scanning their own u, higher ones after.
  for (const Edge& e : sorted) g.targets_[fill[e.v]++] = e.u;
  for (const Edge& e : sorted) g.targets_[fill[e.u]++] = e.v;
  return g;
}

Graph Graph::from_upper_lists(std::size_t n, std::vector<std::vector<Vertex>> upper) {
  std::size_t total = 0;
  for (const auto& list : upper) total += list.size();
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u) {
    g.offsets_[u + 1] += upper[u].size();
    for (Vertex v : upper[u]) ++g.offsets_[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.targets_.resize(total * 2);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (std::size_t u = 0; u < n; ++u)
    for (Vertex v : upper[u]) g.targets_[fill[v]++] = static_cast<Vertex>(u);
  for (std::size_t u = 0; u < n; ++u) {
    for (Vertex v : upper[u]) g.targets_[fill[u]++] = v;
    std::vector<Vertex>().swap(upper[u]);
  }
  return g;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t v = 0; v < num_vertices(); ++v) best = std::max(best, degree(static_cast<Vertex>(v)));
  return best;
}

bool Graph::adjacent(Vertex a, Vertex b) const {
  if (a >= num_vertices() || b >= num_vertices()) return false;
  if (degree(a) > degree(b)) std::swap(a, b);
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

bool Graph::connected() const {
  const std::size_t n = num_vertices();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (std::size_t u = 0; u < num_vertices(); ++u) {
    for (Vertex v : neighbors(static_cast<Vertex>(u))) {
      if (v > u) out.emplace_back(static_cast<Vertex>(u), v);
    }
  }
  return out;
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  std::vector<std::pair<Vertex, Vertex>> index;  // host vertex -> local id
  index.reserve(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) index.emplace_back(vertices[i], static_cast<Vertex>(i));
  std::sort(index.begin(), index.end());
  auto local = [&](Vertex host) -> long long {
    auto it = std::lower_bound(index.begin(), index.end(), std::make_pair(host, Vertex{0}));
    if (it == index.end() || it->first != host) return -1;
    return it->second;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (Vertex w : g.neighbors(vertices[i])) {
      long long j = local(w);
      if (j > static_cast<long long>(i)) edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
  }
  return Graph::from_edges(vertices.size(), edges);
}

Graph make_path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
  return Graph::from_edges(n, edges);
}

Graph make_complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
  return Graph::from_edges(n, edges);
}

Graph make_grid_graph(std::size_t rows, std::size_t cols) {
  std::vector<Edge> edges;
  auto id = [cols](std::size_t r, std::size_t c) { return static_cast<Vertex>(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
    }
  }
  return Graph::from_edges(rows * cols, edges);
}

std::uint64_t pair_count(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

}  // namespace acqlab
