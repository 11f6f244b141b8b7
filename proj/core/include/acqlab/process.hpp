#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "acqlab/graph.hpp"

namespace acqlab {

// A set of vertex-disjoint edges; every matched pair of agents swaps.
using Matching = std::vector<Edge>;

// Sorted copy with normalized edges.
Matching canonical(Matching m);

using ParamValue = std::variant<std::int64_t, double, std::string>;
using Params = std::map<std::string, ParamValue>;

// A sequence of matchings, one per round. Matchings are stored once in a pool
// and referenced by id from the round sequence, so schedules that repeat or
// mirror matchings (lifted group moves, reversed halves) stay small.
class Schedule {
 public:
  std::string strategy;
  Params params;

  std::size_t rounds() const { return sequence_.size(); }
  bool empty() const { return sequence_.empty(); }
  const Matching& round(std::size_t i) const { return pool_[sequence_[i]]; }
  std::uint32_t round_id(std::size_t i) const { return sequence_[i]; }

  // Adds a matching to the pool without scheduling it.
  std::uint32_t add_matching(Matching m);
  void push_round(std::uint32_t id);
  void append(Matching m) { push_round(add_matching(std::move(m))); }
  // Appends all rounds of `other` after the current ones.
  void append(const Schedule& other);
  // Appends the rounds of this schedule in reverse order.
  void append_reversed();

  std::span<const Matching> pool() const { return pool_; }
  std::span<const std::uint32_t> sequence() const { return sequence_; }
  std::vector<Matching> expanded() const;

 private:
  std::vector<Matching> pool_;
  std::vector<std::uint32_t> sequence_;
};

struct SimulationResult;
SimulationResult run_schedule(const Graph& g, const Schedule& s);

// Agent i starts on vertex i. After each round the agents on adjacent
// vertices become acquainted; agents adjacent at the start are acquainted
// from round 0. Acquaintance is stored per agent pair as a bit matrix, so
// memory grows as n^2 / 8 bytes.
class ProcessState {
 public:
  explicit ProcessState(const Graph& g);

  const Graph& graph() const { return *graph_; }
  std::size_t num_agents() const { return agent_at_.size(); }
  std::size_t round() const { return round_; }

  Agent agent_at(Vertex v) const { return agent_at_[v]; }
  Vertex vertex_of(Agent a) const { return vertex_of_[a]; }
  std::span<const Agent> placement() const { return agent_at_; }

  bool acquainted(Agent a, Agent b) const;
  std::uint64_t acquainted_pairs() const { return total_pairs_ - remaining_; }
  std::uint64_t total_pairs() const { return total_pairs_; }
  bool all_acquainted() const { return remaining_ == 0; }
  std::optional<std::size_t> first_complete_round() const { return first_complete_; }
  std::vector<std::pair<Agent, Agent>> unacquainted_pairs(std::size_t limit) const;

  // Throws InvalidMatching (and leaves the state untouched) if an edge is not
  // in the graph or two edges share a vertex.
  void apply(const Matching& m) { apply_impl(m, true); }

 private:
  friend SimulationResult run_schedule(const Graph& g, const Schedule& s);

  void apply_impl(const Matching& m, bool evaluate);
  void validate(const Matching& m);
  void visit(Vertex v);
  void mark(Agent a, Agent b);

  const Graph* graph_;
  std::vector<Agent> agent_at_;
  std::vector<Vertex> vertex_of_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint32_t> known_;
  std::uint64_t total_pairs_ = 0;
  std::uint64_t remaining_ = 0;
  std::size_t round_ = 0;
  std::optional<std::size_t> first_complete_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t stamp_value_ = 0;
};

struct SimulationResult {
  std::size_t rounds = 0;
  bool all_acquainted = false;
  std::optional<std::size_t> first_complete_round;
  std::uint64_t acquainted_pairs = 0;
  std::uint64_t total_pairs = 0;
  // Up to 16 pairs that never met.
  std::vector<std::pair<Agent, Agent>> unacquainted_sample;
  std::vector<Agent> final_placement;
};

// Runs the whole schedule. A round whose matching is the same pool entry as
// the last unmatched round undoes it and leads back to an already evaluated
// configuration, so acquaintance is not re-scanned for it; the result is
// identical to evaluating every round.
SimulationResult run_schedule(const Graph& g, const Schedule& s);

// ceil(C(n,2) / |E|) - 1. Throws NoEdges for an edgeless graph.
std::uint64_t trivial_lower_bound(const Graph& g);

}  // namespace acqlab
