#include "acqlab/process.hpp"

#include <algorithm>
#include <string>

#include "acqlab/error.hpp"

namespace acqlab {

Matching canonical(Matching m) {
  for (Edge& e : m) e = Edge(e.u, e.v);
  std::sort(m.begin(), m.end());
  return m;
}

std::uint32_t Schedule::add_matching(Matching m) {
  pool_.push_back(canonical(std::move(m)));
  return static_cast<std::uint32_t>(pool_.size() - 1);
}

void Schedule::push_round(std::uint32_t id) {
  if (id >= pool_.size()) throw Error(ErrorCode::config_error, "unknown matching id " + std::to_string(id));
  sequence_.push_back(id);
}

void Schedule::append(const Schedule& other) {
  const auto offset = static_cast<std::uint32_t>(pool_.size());
  pool_.insert(pool_.end(), other.pool_.begin(), other.pool_.end());
  sequence_.reserve(sequence_.size() + other.sequence_.size());
  for (std::uint32_t id : other.sequence_) sequence_.push_back(id + offset);
}

void Schedule::append_reversed() {
  const std::size_t n = sequence_.size();
  sequence_.reserve(2 * n);
  for (std::size_t i = n; i-- > 0;) sequence_.push_back(sequence_[i]);
}

std::vector<Matching> Schedule::expanded() const {
  std::vector<Matching> out;
  out.reserve(sequence_.size());
  for (std::uint32_t id : sequence_) out.push_back(pool_[id]);
  return out;
}

ProcessState::ProcessState(const Graph& g) : graph_(&g) {
  const std::size_t n = g.num_vertices();
  agent_at_.resize(n);
  vertex_of_.resize(n);
  for (std::size_t i = 0; i < n; ++i) agent_at_[i] = vertex_of_[i] = static_cast<Vertex>(i);
  words_ = (n + 63) / 64;
  bits_.assign(words_ * n, 0);
  known_.assign(n, 0);
  total_pairs_ = remaining_ = pair_count(n);
  stamp_.assign(n, 0);
  for (std::size_t u = 0; u < n; ++u)
    for (Vertex v : g.neighbors(static_cast<Vertex>(u)))
      if (v > u) mark(static_cast<Agent>(u), v);
  if (remaining_ == 0) first_complete_ = 0;
}

bool ProcessState::acquainted(Agent a, Agent b) const {
  if (a == b) return true;
  return (bits_[a * words_ + (b >> 6)] >> (b & 63)) & 1U;
}

std::vector<std::pair<Agent, Agent>> ProcessState::unacquainted_pairs(std::size_t limit) const {
  std::vector<std::pair<Agent, Agent>> out;
  const std::size_t n = num_agents();
  for (std::size_t a = 0; a < n && out.size() < limit; ++a) {
    if (known_[a] + 1 == n) continue;
    for (std::size_t b = a + 1; b < n && out.size() < limit; ++b) {
      if (!acquainted(static_cast<Agent>(a), static_cast<Agent>(b))) out.emplace_back(a, b);
    }
  }
  return out;
}

inline void ProcessState::mark(Agent a, Agent b) {
  std::uint64_t& word = bits_[a * words_ + (b >> 6)];
  const std::uint64_t bit = std::uint64_t{1} << (b & 63);
  if (word & bit) return;
  word |= bit;
  bits_[b * words_ + (a >> 6)] |= std::uint64_t{1} << (a & 63);
  ++known_[a];
  ++known_[b];
  --remaining_;
}

void ProcessState::visit(Vertex v) {
  const Agent a = agent_at_[v];
  if (known_[a] + 1 == agent_at_.size()) return;
  std::uint64_t* row = bits_.data() + a * words_;
  const std::uint64_t self = std::uint64_t{1} << (a & 63);
  const std::size_t self_word = a >> 6;
  for (Vertex w : graph_->neighbors(v)) {
    const Agent b = agent_at_[w];
    const std::uint64_t bit = std::uint64_t{1} << (b & 63);
    std::uint64_t& word = row[b >> 6];
    if (word & bit) continue;
    word |= bit;
    bits_[b * words_ + self_word] |= self;
    ++known_[a];
    ++known_[b];
    --remaining_;
  }
}

void ProcessState::validate(const Matching& m) {
  const std::size_t n = num_agents();
  if (++stamp_value_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    stamp_value_ = 1;
  }
  for (const Edge& e : m) {
    const Vertex u = std::min(e.u, e.v);
    const Vertex v = std::max(e.u, e.v);
    auto fail = [&](const std::string& why) {
      throw Error(ErrorCode::invalid_matching, "round " + std::to_string(round_ + 1) + ": edge (" +
                                                   std::to_string(u) + "," + std::to_string(v) + ") " + why);
    };
    if (v >= n) fail("has an endpoint outside the graph");
    if (u == v) fail("is a loop");
    if (stamp_[u] == stamp_value_ || stamp_[v] == stamp_value_) fail("shares a vertex with another edge");
    if (!graph_->adjacent(u, v)) fail("is not an edge of the graph");
    stamp_[u] = stamp_[v] = stamp_value_;
  }
}

void ProcessState::apply_impl(const Matching& m, bool evaluate) {
  validate(m);
  for (const Edge& e : m) {
    std::swap(agent_at_[e.u], agent_at_[e.v]);
    vertex_of_[agent_at_[e.u]] = e.u;
    vertex_of_[agent_at_[e.v]] = e.v;
  }
  ++round_;
  if (evaluate && remaining_ > 0) {
    for (const Edge& e : m) {
      visit(e.u);
      visit(e.v);
    }
    if (remaining_ == 0) first_complete_ = round_;
  }
}

SimulationResult run_schedule(const Graph& g, const Schedule& s) {
  ProcessState state(g);
  std::vector<std::uint32_t> applied;
  for (std::size_t i = 0; i < s.rounds(); ++i) {
    const std::uint32_t id = s.round_id(i);
    if (!applied.empty() && applied.back() == id) {
      state.apply_impl(s.round(i), false);
      applied.pop_back();
    } else {
      state.apply_impl(s.round(i), true);
      applied.push_back(id);
    }
  }
  SimulationResult out;
  out.rounds = state.round();
  out.all_acquainted = state.all_acquainted();
  out.first_complete_round = state.first_complete_round();
  out.acquainted_pairs = state.acquainted_pairs();
  out.total_pairs = state.total_pairs();
  out.unacquainted_sample = state.unacquainted_pairs(16);
  out.final_placement.assign(state.placement().begin(), state.placement().end());
  return out;
}

std::uint64_t trivial_lower_bound(const Graph& g) {
  const std::uint64_t e = g.num_edges();
  if (e == 0) throw Error(ErrorCode::no_edges, "graph has no edges");
  const std::uint64_t pairs = pair_count(g.num_vertices());
  const std::uint64_t ceil = (pairs + e - 1) / e;
  return ceil == 0 ? 0 : ceil - 1;
}

}  // namespace acqlab
