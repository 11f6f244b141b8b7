#include "acqlab/percolated_strategy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "acqlab/error.hpp"
#include "acqlab/rng.hpp"
#include "group_plan.hpp"

namespace acqlab {

namespace {

// Rounds of several vertex-disjoint sessions run side by side: round j is the
// union of round j of every session that is still running.
struct Batch {
  std::vector<std::uint32_t> forward;  // pool ids in `total`
};

Batch merge_sessions(Schedule& total, const std::vector<Schedule>& sessions) {
  std::size_t length = 0;
  for (const auto& s : sessions) length = std::max(length, s.rounds());
  Batch batch;
  for (std::size_t j = 0; j < length; ++j) {
    Matching m;
    for (const auto& s : sessions) {
      if (j < s.rounds()) m.insert(m.end(), s.round(j).begin(), s.round(j).end());
    }
    batch.forward.push_back(total.add_matching(std::move(m)));
  }
  return batch;
}

void push_session_batch(Schedule& total, const Batch& batch) {
  for (std::uint32_t id : batch.forward) total.push_round(id);
  for (std::size_t i = batch.forward.size(); i-- > 0;) total.push_round(batch.forward[i]);
}

}  // namespace

PercolatedConfig asymptotic_percolated_config() {
  PercolatedConfig c;
  c.granularity = 3.0;
  c.slot_fraction = 0.9;
  c.min_occupancy_fraction = 0.9;
  c.max_occupancy_fraction = 1.1;
  c.part_fraction = 0.4;
  c.team_cap_fraction = 1e-3;
  c.cover = SessionCover::grid_four;
  return c;
}

std::size_t percolated_team_size(std::size_t n, double p, std::size_t slots, const PercolatedConfig& config) {
  if (!(p > 0)) throw Error(ErrorCode::config_error, "percolated strategy needs p > 0");
  const double by_log = config.team_constant * std::log(static_cast<double>(n)) / p;
  const double by_slots = config.team_cap_fraction * static_cast<double>(slots);
  const auto k = static_cast<std::size_t>(std::floor(std::min(by_log, by_slots)));
  if (k == 0) throw Error(ErrorCode::config_error, "team size rounds down to zero");
  return k;
}

StrategyReport percolated_schedule(const GeometricGraph& g, const PercolatedConfig& config, std::uint64_t seed,
                                   PercolatedPlanInfo* info) {
  const std::size_t n = g.num_vertices();
  if (config.granularity < std::sqrt(5.0) * (1 - 1e-12)) {
    throw Error(ErrorCode::config_error, "granularity below sqrt(5) leaves side-adjacent cells out of range");
  }
  const Dissection d = dissect(g.points, config.granularity, g.radius, CellAdjacency::four);
  const std::size_t m = d.m();
  const std::size_t cells = d.cell_count();
  StrategyReport report;
  Schedule& total = report.schedule;
  total.strategy = "percolated";
  total.params["granularity"] = config.granularity;
  total.params["m"] = static_cast<std::int64_t>(m);
  total.params["p"] = g.edge_prob;
  total.params["cover"] = std::string(config.cover == SessionCover::path_step ? "path_step" : "grid_four");
  PercolatedPlanInfo local_info;
  PercolatedPlanInfo& out_info = info ? *info : local_info;
  out_info.m = m;

  const auto stats = detail::occupancy_stats(d);
  const std::size_t slots = detail::choose_slots(d, stats, config.slot_fraction, config.min_occupancy_fraction,
                                                 config.max_occupancy_fraction);
  const std::size_t k = percolated_team_size(n, g.edge_prob, slots, config);
  report.theory_value = static_cast<double>(m * m) * static_cast<double>(k);
  std::size_t part_cap = slots / 2;
  if (config.part_fraction > 0) {
    part_cap = std::min(part_cap, static_cast<std::size_t>(std::floor(config.part_fraction * stats.mean)));
  }
  const detail::GroupPlan plan = detail::plan_groups(d, slots, part_cap, PhasePlan::part_pairs);
  total.params["slots"] = static_cast<std::int64_t>(slots);
  total.params["k"] = static_cast<std::int64_t>(k);
  total.params["parts"] = static_cast<std::int64_t>(plan.parts);
  total.params["phases"] = static_cast<std::int64_t>(plan.phases.size());
  out_info.slots = slots;
  out_info.parts = plan.parts;
  out_info.phases = plan.phases.size();
  out_info.team_size = k;

  const Graph cell_grid = make_grid_graph(m, m);
  const std::vector<Vertex> path = grid_hamiltonian_path(m, m);
  const auto pairs = detail::path_pairs(path);
  const Schedule moves = hamiltonian_path_schedule(cell_grid, path, PathSweep::reverse_order);

  // Session batches: the two path matchings for path_step, the four grid
  // cover matchings for grid_four.
  std::vector<Matching> batch_edges;
  if (m == 1) {
    // A single cell never moves; one session covers it.
    batch_edges.push_back({});
  } else if (config.cover == SessionCover::path_step) {
    for (const Matching& mm : moves.pool()) batch_edges.push_back(mm);
  } else {
    batch_edges = grid_four_cover(m, m);
  }

  TeamStrategyConfig team = config.team;
  team.team_size = k;
  std::vector<char> travelled(plan.parts, 0);
  for (std::size_t phase = 0; phase < plan.phases.size(); ++phase) {
    const GroupMap groups = detail::phase_groups(plan, phase, travelled);
    TransferTable transfer;
    try {
      transfer = inter_cell_matchings(g.graph, groups, pairs);
    } catch (const Error& e) {
      throw Error(ErrorCode::matching_missing, e.what());
    }
    const Schedule lifted_moves = lift_schedule(moves, groups, transfer);

    std::vector<Batch> batches;
    for (const Matching& cover_edges : batch_edges) {
      std::vector<Schedule> sessions;
      const Matching edges = m == 1 ? Matching{Edge{0, 0}} : cover_edges;
      for (const Edge& e : edges) {
        std::vector<Vertex> members = groups.slots[e.u];
        if (e.v != e.u) members.insert(members.end(), groups.slots[e.v].begin(), groups.slots[e.v].end());
        const Graph h = induced_subgraph(g.graph, members);
        const std::uint64_t sub = derive_seed(seed, "session", (phase * cells + e.u) * cells + e.v);
        StrategyReport session;
        try {
          session = gnp_pair_schedule(h, team, sub);
        } catch (const Error& err) {
          throw Error(ErrorCode::cell_pair_strategy_failed,
                      "cells " + std::to_string(e.u) + " and " + std::to_string(e.v) + ": " + err.what());
        }
        ++out_info.sessions;
        Schedule host;
        for (const Matching& local : session.schedule.pool()) {
          Matching mapped;
          for (const Edge& le : local) mapped.emplace_back(members[le.u], members[le.v]);
          host.add_matching(std::move(mapped));
        }
        for (std::uint32_t id : session.schedule.sequence()) host.push_round(id);
        sessions.push_back(std::move(host));
      }
      batches.push_back(merge_sessions(total, sessions));
    }

    // Pool ids of the lifted group moves inside `total`.
    std::vector<std::uint32_t> move_ids;
    for (const Matching& mm : lifted_moves.pool()) move_ids.push_back(total.add_matching(mm));

    std::vector<std::uint32_t> phase_moves;
    if (config.cover == SessionCover::grid_four) {
      for (const Batch& b : batches) push_session_batch(total, b);
    }
    for (std::size_t step = 0; step < lifted_moves.rounds(); ++step) {
      const std::uint32_t parity = moves.round_id(step);
      if (config.cover == SessionCover::path_step) push_session_batch(total, batches[parity]);
      total.push_round(move_ids[parity]);
      phase_moves.push_back(move_ids[parity]);
      if (config.cover == SessionCover::grid_four) {
        for (const Batch& b : batches) push_session_batch(total, b);
      }
    }
    // Sessions leave every agent where it was, so undoing the moves brings
    // every group home.
    for (std::size_t i = phase_moves.size(); i-- > 0;) total.push_round(phase_moves[i]);
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
