#include "acqlab/dense_strategy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "acqlab/error.hpp"
#include "group_plan.hpp"

namespace acqlab {

namespace detail {

OccupancyStats occupancy_stats(const Dissection& d) {
  OccupancyStats s;
  s.min = std::numeric_limits<std::size_t>::max();
  std::size_t total = 0;
  for (CellId c = 0; c < d.cell_count(); ++c) {
    s.min = std::min(s.min, d.occupancy(c));
    s.max = std::max(s.max, d.occupancy(c));
    total += d.occupancy(c);
  }
  s.mean = static_cast<double>(total) / static_cast<double>(d.cell_count());
  return s;
}

std::size_t choose_slots(const Dissection& d, const OccupancyStats& stats, double slot_fraction,
                         double lo_fraction, double hi_fraction) {
  for (CellId c = 0; c < d.cell_count(); ++c) {
    const auto occ = static_cast<double>(d.occupancy(c));
    if ((lo_fraction > 0 && occ < lo_fraction * stats.mean) || (hi_fraction > 0 && occ > hi_fraction * stats.mean)) {
      throw Error(ErrorCode::concentration_failed,
                  "cell " + std::to_string(c) + " holds " + std::to_string(d.occupancy(c)) + " points, mean " +
                      std::to_string(stats.mean));
    }
  }
  std::size_t slots = stats.min;
  if (slot_fraction > 0) {
    slots = static_cast<std::size_t>(std::floor(slot_fraction * stats.mean));
    if (slots > stats.min) {
      throw Error(ErrorCode::concentration_failed, "a cell holds " + std::to_string(stats.min) +
                                                       " points, fewer than the group size " + std::to_string(slots));
    }
  }
  if (slots == 0) throw Error(ErrorCode::concentration_failed, "a cell is empty");
  return slots;
}

GroupPlan plan_groups(const Dissection& d, std::size_t slots, std::size_t part_cap, PhasePlan plan) {
  if (part_cap == 0) throw Error(ErrorCode::concentration_failed, "groups too small to hold a part");
  const OccupancyStats stats = occupancy_stats(d);
  GroupPlan out;
  out.slots = slots;
  out.parts = std::max<std::size_t>(1, (stats.max + part_cap - 1) / part_cap);
  out.chunks = split_cells(d, out.parts);
  if (plan == PhasePlan::single_parts || out.parts == 1) {
    for (std::size_t i = 0; i < out.parts; ++i) out.phases.push_back({i});
  } else {
    for (std::size_t i = 0; i < out.parts; ++i)
      for (std::size_t j = i + 1; j < out.parts; ++j) out.phases.push_back({i, j});
  }
  return out;
}

GroupMap phase_groups(const GroupPlan& plan, std::size_t phase, const std::vector<char>& travelled) {
  GroupMap groups;
  const auto& active = plan.phases[phase];
  groups.slots.resize(plan.chunks.size());
  for (std::size_t c = 0; c < plan.chunks.size(); ++c) {
    auto& slots = groups.slots[c];
    const auto& chunks = plan.chunks[c];
    for (std::size_t part : active) slots.insert(slots.end(), chunks[part].begin(), chunks[part].end());
    auto fill_from = [&](bool want_travelled) {
      for (std::size_t part = 0; part < chunks.size() && slots.size() < plan.slots; ++part) {
        if (std::find(active.begin(), active.end(), part) != active.end()) continue;
        if (static_cast<bool>(travelled[part]) != want_travelled) continue;
        for (Vertex v : chunks[part]) {
          if (slots.size() == plan.slots) break;
          slots.push_back(v);
        }
      }
    };
    fill_from(true);
    fill_from(false);
    if (slots.size() != plan.slots) {
      throw Error(ErrorCode::concentration_failed, "cell " + std::to_string(c) + " cannot fill its group");
    }
  }
  return groups;
}

std::vector<std::pair<Vertex, Vertex>> path_pairs(const std::vector<Vertex>& path) {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) out.emplace_back(path[i], path[i + 1]);
  return out;
}

TransferTable index_transfers(const GroupMap& groups, const std::vector<std::pair<Vertex, Vertex>>& pairs) {
  TransferTable table;
  for (auto [a, b] : pairs) {
    const Vertex c = std::min(a, b);
    const Vertex d = std::max(a, b);
    Matching m;
    for (std::size_t i = 0; i < groups.slots[c].size(); ++i) m.emplace_back(groups.slots[c][i], groups.slots[d][i]);
    table[{c, d}] = canonical(std::move(m));
  }
  return table;
}

}  // namespace detail

DenseConfig asymptotic_dense_config() {
  DenseConfig c;
  c.granularity = 3.0;
  c.slot_fraction = 0.9;
  c.min_occupancy_fraction = 0.9;
  c.max_occupancy_fraction = 1.1;
  c.part_fraction = 0.4;
  c.plan = PhasePlan::part_pairs;
  return c;
}

std::vector<std::vector<std::vector<Vertex>>> split_cells(const Dissection& d, std::size_t parts) {
  std::vector<std::vector<std::vector<Vertex>>> out(d.cell_count());
  for (CellId c = 0; c < d.cell_count(); ++c) {
    auto members = d.members(c);
    out[c].resize(parts);
    const std::size_t size = members.size();
    for (std::size_t i = 0; i < parts; ++i) {
      const std::size_t begin = size * i / parts;
      const std::size_t end = size * (i + 1) / parts;
      out[c][i].assign(members.begin() + static_cast<std::ptrdiff_t>(begin),
                       members.begin() + static_cast<std::ptrdiff_t>(end));
    }
  }
  return out;
}

StrategyReport dense_schedule(const GeometricGraph& g, const DenseConfig& config, DensePlanInfo* info) {
  const std::size_t n = g.num_vertices();
  if (config.granularity < std::sqrt(5.0) * (1 - 1e-12)) {
    throw Error(ErrorCode::config_error, "granularity below sqrt(5) leaves side-adjacent cells incomplete");
  }
  const Dissection d = dissect(g.points, config.granularity, g.radius, CellAdjacency::four);
  const std::size_t m = d.m();
  StrategyReport report;
  report.theory_value = static_cast<double>(m * m);
  Schedule& total = report.schedule;
  total.strategy = "dense";
  total.params["granularity"] = config.granularity;
  total.params["m"] = static_cast<std::int64_t>(m);
  if (info) info->m = m;

  if (g.edge_count() == pair_count(n)) {
    // Everyone already knows everyone.
    return report;
  }

  const auto stats = detail::occupancy_stats(d);
  const std::size_t slots = detail::choose_slots(d, stats, config.slot_fraction, config.min_occupancy_fraction,
                                                 config.max_occupancy_fraction);
  std::size_t part_cap = config.plan == PhasePlan::single_parts ? slots : slots / 2;
  if (config.part_fraction > 0) {
    part_cap = std::min(part_cap, static_cast<std::size_t>(std::floor(config.part_fraction * stats.mean)));
  }
  const detail::GroupPlan plan = detail::plan_groups(d, slots, part_cap, config.plan);
  total.params["slots"] = static_cast<std::int64_t>(slots);
  total.params["parts"] = static_cast<std::int64_t>(plan.parts);
  total.params["phases"] = static_cast<std::int64_t>(plan.phases.size());
  total.params["plan"] = std::string(config.plan == PhasePlan::single_parts ? "single_parts" : "part_pairs");
  if (info) {
    info->slots = slots;
    info->parts = plan.parts;
    info->phases = plan.phases.size();
  }

  const Graph cells = make_grid_graph(m, m);
  const std::vector<Vertex> path = grid_hamiltonian_path(m, m);
  const auto pairs = detail::path_pairs(path);
  const PathSweep sweep = config.plan == PhasePlan::single_parts ? PathSweep::visit_all : PathSweep::reverse_order;
  const Schedule base = hamiltonian_path_schedule(cells, path, sweep);

  std::vector<char> travelled(plan.parts, 0);
  for (std::size_t phase = 0; phase < plan.phases.size(); ++phase) {
    const GroupMap groups = detail::phase_groups(plan, phase, travelled);
    const TransferTable transfer = detail::index_transfers(groups, pairs);
    total.append(reverse_and_append(lift_schedule(base, groups, transfer)));
    for (std::size_t part : plan.phases[phase]) travelled[part] = 1;
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
