#include "acqlab/sparse_strategy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "acqlab/error.hpp"
#include "acqlab/gnp_strategy.hpp"
#include "acqlab/rng.hpp"
#include "group_plan.hpp"

namespace acqlab {

namespace {

// Plans one cell's move on the shared placement. `locked` marks vertices
// holding agents that must not be displaced: movers of every cell before
// they move and after they land.
CellMove plan_move(const GeometricGraph& g, const StructureAnalysis& a, std::span<const Vertex> movers, CellId c,
                   std::vector<char>& locked) {
  const Dissection& d = a.dissection;
  CellMove out;
  out.landing.assign(movers.begin(), movers.end());
  auto in_cell = [&](Vertex v) { return d.cell_of(v) == c; };
  auto free_targets = [&] {
    std::vector<Vertex> t;
    for (Vertex v : d.members(c))
      if (!locked[v]) t.push_back(v);
    return t;
  };
  auto relocate = [&](std::size_t i, Vertex to) {
    locked[out.landing[i]] = 0;
    locked[to] = 1;
    out.landing[i] = to;
  };

  std::vector<std::size_t> safe;
  std::map<std::uint32_t, std::vector<std::size_t>> blocked;
  for (std::size_t i = 0; i < movers.size(); ++i) {
    const Vertex v = movers[i];
    if (in_cell(v)) continue;
    const std::uint32_t o = a.obstruction_of[v];
    if (o == StructureAnalysis::kNoObstruction) {
      safe.push_back(i);
    } else {
      blocked[o].push_back(i);
    }
  }

  if (!safe.empty()) {
    std::vector<Vertex> from;
    for (std::size_t i : safe) from.push_back(out.landing[i]);
    const auto partner = saturating_matching(g.graph, from, free_targets());
    if (!partner) {
      throw Error(ErrorCode::move_failed, "cell " + std::to_string(c) + ": " + std::to_string(safe.size()) +
                                              " safe agents cannot step into the cell");
    }
    Matching m;
    for (std::size_t k = 0; k < safe.size(); ++k) {
      m.emplace_back(from[k], (*partner)[k]);
      relocate(safe[k], (*partner)[k]);
    }
    out.schedule.append(std::move(m));
  }

  for (const auto& [o, waiting] : blocked) {
    const auto& crucial = a.obstructions[o].crucial;
    std::size_t next = 0;
    while (next < waiting.size()) {
      std::vector<Vertex> hubs;
      for (Vertex v : crucial)
        if (!locked[v]) hubs.push_back(v);
      if (hubs.empty()) {
        throw Error(ErrorCode::no_crucial_path,
                    "cell " + std::to_string(c) + ": obstruction " + std::to_string(o) + " has no free crucial vertex");
      }
      const std::size_t part = std::min(hubs.size(), waiting.size() - next);
      Matching onto_hubs;
      for (std::size_t k = 0; k < part; ++k) {
        onto_hubs.emplace_back(out.landing[waiting[next + k]], hubs[k]);
        relocate(waiting[next + k], hubs[k]);
      }
      out.schedule.append(std::move(onto_hubs));

      std::vector<std::size_t> outside;
      std::vector<Vertex> from;
      for (std::size_t k = 0; k < part; ++k) {
        const std::size_t i = waiting[next + k];
        if (!in_cell(out.landing[i])) {
          outside.push_back(i);
          from.push_back(out.landing[i]);
        }
      }
      if (!outside.empty()) {
        const auto partner = saturating_matching(g.graph, from, free_targets());
        if (!partner) {
          throw Error(ErrorCode::no_crucial_path, "cell " + std::to_string(c) + ": obstruction " + std::to_string(o) +
                                                      " agents cannot leave the crucial vertices");
        }
        Matching into_cell;
        for (std::size_t k = 0; k < outside.size(); ++k) {
          into_cell.emplace_back(from[k], (*partner)[k]);
          relocate(outside[k], (*partner)[k]);
        }
        out.schedule.append(std::move(into_cell));
      }
      next += part;
    }
  }
  return out;
}

void check_capacity(const StructureAnalysis& a, std::size_t movers, CellId c, const SparseConfig& config) {
  const double limit = config.capacity_fraction * a.threshold;
  if (static_cast<double>(movers) > limit || movers > a.dissection.occupancy(c)) {
    throw Error(ErrorCode::capacity_exceeded, "cell " + std::to_string(c) + ": " + std::to_string(movers) +
                                                  " agents exceed the move capacity");
  }
}

// Strategy on the largest component, on local ids (index into `cells`).
Schedule component_schedule(const StructureAnalysis& a, std::span<const CellId> cells, const Graph& local) {
  const Dissection& d = a.dissection;
  std::vector<Vertex> index(d.cell_count(), 0);
  for (std::size_t i = 0; i < cells.size(); ++i) index[cells[i]] = static_cast<Vertex>(i);
  const auto order = snake_order(cells, d.m());
  std::vector<Vertex> path;
  bool is_path = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    path.push_back(index[order[i]]);
    if (i > 0 && !local.adjacent(path[i - 1], path[i])) is_path = false;
  }
  if (!is_path) {
    path = long_path(local, 20, derive_seed(cells.size(), "cell_path"));
    is_path = path.size() == cells.size();
  }
  if (is_path) {
    Schedule s = hamiltonian_path_schedule(local, path, PathSweep::reverse_order);
    s.strategy = "cell_path";
    return s;
  }
  std::vector<Point> corners;
  for (CellId c : cells) corners.push_back(d.corner(c));
  return tree_walk_schedule(local, euclidean_spanning_tree(corners, local));
}

}  // namespace

SparseConfig asymptotic_sparse_config() {
  SparseConfig c;
  c.capacity_fraction = 1.0 / 50;
  return c;
}

std::vector<CellId> snake_order(std::span<const CellId> cells, std::size_t m) {
  std::vector<CellId> out(cells.begin(), cells.end());
  std::sort(out.begin(), out.end(), [m](CellId x, CellId y) {
    const std::size_t rx = x / m;
    const std::size_t ry = y / m;
    if (rx != ry) return rx < ry;
    return rx % 2 == 0 ? x < y : x > y;
  });
  return out;
}

CellMove move_into_cell(const GeometricGraph& g, const StructureAnalysis& a, std::span<const Vertex> agents,
                        CellId c, const SparseConfig& config) {
  check_capacity(a, agents.size(), c, config);
  std::vector<char> locked(a.n, 0);
  for (Vertex v : agents) locked[v] = 1;
  return plan_move(g, a, agents, c, locked);
}

StrategyReport sparse_schedule(const GeometricGraph& g, const StructureAnalysis& a, const SparseConfig& config) {
  auto unusable = [](const std::string& why) { return Error(ErrorCode::structure_unusable, why); };
  if (a.n != g.num_vertices()) throw unusable("analysis belongs to a different graph");
  if (!a.properties[0].holds) throw unusable("largest component too small: " + a.properties[0].detail);
  if (!a.partitioned) throw unusable("analysis has no assignment; run assign_and_partition first");
  for (std::size_t i = 0; i < a.obstructions.size(); ++i)
    if (a.obstructions[i].crucial.empty()) throw unusable("obstruction " + std::to_string(i) + " has no crucial vertex");
  const Dissection& d = a.dissection;
  if (d.side() * std::sqrt(2.0) > a.radius) throw unusable("cells are wider than the radius");

  const std::size_t m = d.m();
  StrategyReport report;
  report.theory_value = static_cast<double>(m * m);
  Schedule& total = report.schedule;
  total.strategy = "sparse";
  total.params["m"] = static_cast<std::int64_t>(m);
  total.params["threshold"] = a.threshold;
  total.params["classes"] = static_cast<std::int64_t>(a.class_count);
  total.params["class_size"] = static_cast<std::int64_t>(a.class_size);
  if (a.n < 2 || g.edge_count() == pair_count(a.n)) return report;

  const auto& cells = a.components[0];
  const std::size_t group = config.group_size > 0 ? config.group_size : static_cast<std::size_t>(std::ceil(a.threshold));
  total.params["group_size"] = static_cast<std::int64_t>(group);

  std::vector<Edge> local_edges;
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = i + 1; j < cells.size(); ++j)
      if (d.adjacent(cells[i], cells[j])) local_edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
  const Graph local = Graph::from_edges(cells.size(), local_edges);
  const Schedule base = component_schedule(a, cells, local);
  total.params["component_strategy"] = base.strategy;
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (const Edge& e : local_edges) pairs.emplace_back(e.u, e.v);

  std::vector<std::pair<std::size_t, std::size_t>> class_pairs;
  if (a.class_count == 1) class_pairs.emplace_back(0, 0);
  for (std::size_t i = 0; i < a.class_count; ++i)
    for (std::size_t j = i + 1; j < a.class_count; ++j) class_pairs.emplace_back(i, j);

  for (auto [ci, cj] : class_pairs) {
    std::vector<std::vector<Vertex>> movers(cells.size());
    std::vector<char> locked(a.n, 0);
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const auto& parts = a.classes[cells[k]];
      movers[k] = parts[ci];
      if (cj != ci) movers[k].insert(movers[k].end(), parts[cj].begin(), parts[cj].end());
      if (movers[k].size() > group) {
        throw Error(ErrorCode::capacity_exceeded, "cell " + std::to_string(cells[k]) + ": " +
                                                      std::to_string(movers[k].size()) + " agents exceed the group size");
      }
      check_capacity(a, movers[k].size(), cells[k], config);
      for (Vertex v : movers[k]) locked[v] = 1;
    }

    // Cell moves run side by side; a move touching a vertex used by an
    // earlier one starts after it ends, so every plan sees the placement it
    // was computed on.
    std::vector<Matching> merged;
    std::vector<std::size_t> busy_until(a.n, 0);
    GroupMap groups;
    groups.slots.resize(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const CellMove move = plan_move(g, a, movers[k], cells[k], locked);
      std::vector<Vertex> touched;
      for (std::size_t r = 0; r < move.schedule.rounds(); ++r)
        for (const Edge& e : move.schedule.round(r)) touched.insert(touched.end(), {e.u, e.v});
      std::size_t start = 0;
      for (Vertex v : touched) start = std::max(start, busy_until[v]);
      const std::size_t end = start + move.schedule.rounds();
      if (merged.size() < end) merged.resize(end);
      for (std::size_t r = 0; r < move.schedule.rounds(); ++r) {
        const auto& round = move.schedule.round(r);
        merged[start + r].insert(merged[start + r].end(), round.begin(), round.end());
      }
      for (Vertex v : touched) busy_until[v] = end;

      auto& slots = groups.slots[k];
      slots = move.landing;
      for (Vertex v : d.members(cells[k])) {
        if (slots.size() == group) break;
        if (std::find(slots.begin(), slots.end(), v) == slots.end() && !locked[v]) slots.push_back(v);
      }
      if (slots.size() != group) {
        throw Error(ErrorCode::capacity_exceeded, "cell " + std::to_string(cells[k]) + " cannot fill a group of " +
                                                      std::to_string(group));
      }
    }

    std::vector<std::uint32_t> move_ids;
    for (Matching& mm : merged) move_ids.push_back(total.add_matching(std::move(mm)));
    for (std::uint32_t id : move_ids) total.push_round(id);
    const TransferTable transfer = detail::index_transfers(groups, pairs);
    total.append(reverse_and_append(lift_schedule(base, groups, transfer)));
    for (std::size_t i = move_ids.size(); i-- > 0;) total.push_round(move_ids[i]);
  }

  report.rounds = total.rounds();
  report.bound_ratio = static_cast<double>(report.rounds) / report.theory_value;
  if (config.verify) {
    const SimulationResult sim = run_schedule(g.graph, total);
    if (!sim.all_acquainted) {
      throw Error(ErrorCode::not_all_acquainted,
                  std::to_string(sim.total_pairs - sim.acquainted_pairs) + " pairs never met");
    }
  }
  return report;
}

}  // namespace acqlab
