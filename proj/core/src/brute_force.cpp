#include "acqlab/brute_force.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

#include "acqlab/error.hpp"

namespace acqlab {

namespace {

constexpr std::size_t kMaxVertices = 6;

void enumerate(const std::vector<Edge>& edges, std::size_t from, std::uint32_t used, Matching& current,
               std::vector<Matching>& out) {
  for (std::size_t i = from; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    const std::uint32_t bits = (1U << e.u) | (1U << e.v);
    if (used & bits) continue;
    current.push_back(e);
    out.push_back(current);
    enumerate(edges, i + 1, used | bits, current, out);
    current.pop_back();
  }
}

// Placements of n agents, indexed densely, with precomputed transitions.
struct PlacementSpace {
  std::size_t n = 0;
  std::vector<std::vector<Agent>> perms;  // perms[i][v] = agent on v
  std::vector<std::uint32_t> pair_mask;   // acquaintances created by perms[i]
  std::uint32_t full_mask = 0;
  std::vector<std::uint32_t> key_to_index;

  PlacementSpace(const Graph& g) : n(g.num_vertices()) {
    int pair_index[kMaxVertices][kMaxVertices] = {};
    int next = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) pair_index[a][b] = pair_index[b][a] = next++;
    full_mask = next == 32 ? ~0U : ((1U << next) - 1);
    key_to_index.assign(std::size_t{1} << (3 * n), 0);
    std::vector<Agent> p(n);
    std::iota(p.begin(), p.end(), 0);
    const auto edges = g.edges();
    do {
      std::uint32_t mask = 0;
      for (const Edge& e : edges) mask |= 1U << pair_index[p[e.u]][p[e.v]];
      key_to_index[key(p)] = static_cast<std::uint32_t>(perms.size());
      perms.push_back(p);
      pair_mask.push_back(mask);
    } while (std::next_permutation(p.begin(), p.end()));
  }

  std::uint32_t key(const std::vector<Agent>& p) const {
    std::uint32_t k = 0;
    for (Agent a : p) k = (k << 3) | a;
    return k;
  }

  std::uint32_t after(std::uint32_t index, const Matching& m) const {
    std::vector<Agent> p = perms[index];
    for (const Edge& e : m) std::swap(p[e.u], p[e.v]);
    return key_to_index[key(p)];
  }
};

void check_size(const Graph& g) {
  if (g.num_vertices() > kMaxVertices) {
    throw Error(ErrorCode::config_error, "brute force supports at most 6 vertices, got " +
                                             std::to_string(g.num_vertices()));
  }
}

// Breadth-first search; fills `parent` (state -> (previous state, matching))
// when requested so a schedule can be read back.
std::optional<std::pair<std::size_t, std::uint64_t>> search(
    const Graph& g, std::size_t round_cap, const std::vector<Matching>& matchings,
    const PlacementSpace& space,
    std::unordered_map<std::uint64_t, std::pair<std::uint64_t, std::uint32_t>>* parent) {
  const std::size_t pair_bits = pair_count(g.num_vertices());
  auto state_id = [pair_bits](std::uint64_t perm, std::uint64_t mask) { return (perm << pair_bits) | mask; };

  const std::uint32_t start_mask = space.pair_mask[0];
  if (start_mask == space.full_mask) return std::make_pair(std::size_t{0}, state_id(0, start_mask));

  std::vector<std::vector<std::uint32_t>> next(space.perms.size(), std::vector<std::uint32_t>(matchings.size()));
  for (std::uint32_t i = 0; i < space.perms.size(); ++i)
    for (std::size_t j = 0; j < matchings.size(); ++j) next[i][j] = space.after(i, matchings[j]);

  std::vector<bool> seen(space.perms.size() << pair_bits, false);
  std::vector<std::uint64_t> frontier{state_id(0, start_mask)};
  seen[frontier[0]] = true;
  const std::uint64_t mask_bits = (std::uint64_t{1} << pair_bits) - 1;
  for (std::size_t depth = 1; depth <= round_cap && !frontier.empty(); ++depth) {
    std::vector<std::uint64_t> upcoming;
    for (std::uint64_t s : frontier) {
      const auto perm = static_cast<std::uint32_t>(s >> pair_bits);
      const auto mask = static_cast<std::uint32_t>(s & mask_bits);
      for (std::size_t j = 0; j < matchings.size(); ++j) {
        const std::uint32_t np = next[perm][j];
        const std::uint32_t nm = mask | space.pair_mask[np];
        const std::uint64_t id = state_id(np, nm);
        if (seen[id]) continue;
        seen[id] = true;
        if (parent) (*parent)[id] = {s, static_cast<std::uint32_t>(j)};
        if (nm == space.full_mask) return std::make_pair(depth, id);
        upcoming.push_back(id);
      }
    }
    frontier = std::move(upcoming);
  }
  return std::nullopt;
}

void check_connected(const Graph& g) {
  if (!g.connected()) throw Error(ErrorCode::disconnected, "acquaintance time is infinite on a disconnected graph");
}

}  // namespace

std::vector<Matching> enumerate_matchings(const Graph& g) {
  check_size(g);
  std::vector<Matching> out;
  Matching current;
  enumerate(g.edges(), 0, 0, current, out);
  return out;
}

std::optional<std::size_t> brute_force_ac(const Graph& g, std::size_t round_cap) {
  check_size(g);
  if (g.num_vertices() <= 1) return 0;
  check_connected(g);
  PlacementSpace space(g);
  auto found = search(g, round_cap, enumerate_matchings(g), space, nullptr);
  if (!found) return std::nullopt;
  return found->first;
}

std::optional<Schedule> brute_force_schedule(const Graph& g, std::size_t round_cap) {
  check_size(g);
  Schedule schedule;
  schedule.strategy = "brute_force";
  if (g.num_vertices() <= 1) return schedule;
  check_connected(g);
  PlacementSpace space(g);
  const auto matchings = enumerate_matchings(g);
  std::unordered_map<std::uint64_t, std::pair<std::uint64_t, std::uint32_t>> parent;
  auto found = search(g, round_cap, matchings, space, &parent);
  if (!found) return std::nullopt;
  std::vector<std::uint32_t> used;
  for (std::uint64_t s = found->second; parent.count(s);) {
    used.push_back(parent[s].second);
    s = parent[s].first;
  }
  std::reverse(used.begin(), used.end());
  for (std::uint32_t j : used) schedule.append(matchings[j]);
  return schedule;
}

std::size_t brute_force_helicopter_ac(const Graph& g) {
  check_size(g);
  const std::size_t n = g.num_vertices();
  if (n <= 1) return 0;
  if (g.num_edges() == 0) throw Error(ErrorCode::no_edges, "no placement acquaints anyone");
  PlacementSpace space(g);
  std::vector<std::uint32_t> masks = space.pair_mask;
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());

  const std::uint32_t start = space.pair_mask[0];
  if (start == space.full_mask) return 0;
  std::vector<bool> seen(std::size_t{1} << pair_count(n), false);
  std::vector<std::uint32_t> frontier{start};
  seen[start] = true;
  for (std::size_t depth = 1;; ++depth) {
    std::vector<std::uint32_t> upcoming;
    for (std::uint32_t s : frontier) {
      for (std::uint32_t m : masks) {
        const std::uint32_t next = s | m;
        if (next == space.full_mask) return depth;
        if (!seen[next]) {
          seen[next] = true;
          upcoming.push_back(next);
        }
      }
    }
    frontier = std::move(upcoming);
  }
}

}  // namespace acqlab
