#include "acqlab/gnp_strategy.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "acqlab/error.hpp"
#include "acqlab/rng.hpp"

namespace acqlab {

namespace {

std::vector<Vertex> one_path(const Graph& h, Rng& rng) {
  const std::size_t n = h.num_vertices();
  std::vector<char> used(n, 0);
  std::vector<Vertex> path{static_cast<Vertex>(rng.below(n))};
  used[path[0]] = 1;
  std::vector<Vertex> options;
  auto extend_tail = [&] {
    options.clear();
    for (Vertex w : h.neighbors(path.back()))
      if (!used[w]) options.push_back(w);
    if (options.empty()) return false;
    const Vertex next = options[rng.below(options.size())];
    used[next] = 1;
    path.push_back(next);
    return true;
  };
  // Extend at the tail, then at the head, then try a few rotations that
  // bring a different vertex to the tail.
  std::size_t rotations = 0;
  const std::size_t max_rotations = 4 * n;
  while (true) {
    while (extend_tail()) {
    }
    std::reverse(path.begin(), path.end());
    while (extend_tail()) {
    }
    if (path.size() == n || rotations >= max_rotations) break;
    bool progressed = false;
    while (rotations < max_rotations && !progressed) {
      ++rotations;
      // Rotation: pick a path neighbor y = path[i] of the tail and reverse
      // path[i+1..]; the old path[i+1] becomes the tail.
      auto nb = h.neighbors(path.back());
      if (nb.size() < 2) break;
      const Vertex y = nb[rng.below(nb.size())];
      auto it = std::find(path.begin(), path.end(), y);
      if (it == path.end() || it + 1 >= path.end() - 1) continue;
      std::reverse(it + 1, path.end());
      for (Vertex w : h.neighbors(path.back())) {
        if (!used[w]) {
          progressed = true;
          break;
        }
      }
    }
    if (!progressed) break;
  }
  return path;
}

}  // namespace

std::vector<Vertex> long_path(const Graph& h, std::size_t restarts, std::uint64_t seed) {
  if (h.num_vertices() == 0) return {};
  Rng rng(seed);
  std::vector<Vertex> best;
  for (std::size_t i = 0; i < std::max<std::size_t>(restarts, 1); ++i) {
    auto path = one_path(h, rng);
    if (path.size() > best.size()) best = std::move(path);
    if (best.size() == h.num_vertices()) break;
  }
  return best;
}

StrategyReport gnp_pair_schedule(const Graph& h, const TeamStrategyConfig& config, std::uint64_t seed) {
  if (config.team_size == 0) throw Error(ErrorCode::config_error, "team size must be positive");
  const std::size_t t = h.num_vertices();
  std::optional<Error> last;
  for (std::size_t attempt = 0; attempt <= config.max_retries; ++attempt) {
    const std::uint64_t sub = derive_seed(seed, "team_attempt", attempt);
    Schedule s;
    s.strategy = "gnp_team";
    s.params["k"] = static_cast<std::int64_t>(config.team_size);
    s.params["t"] = static_cast<std::int64_t>(t);
    s.params["attempt"] = static_cast<std::int64_t>(attempt);
    StrategyReport report;
    report.theory_value = static_cast<double>(config.team_size);
    report.retries = attempt;
    if (t <= 1) {
      report.schedule = std::move(s);
      return report;
    }

    std::vector<Vertex> path = long_path(h, config.path_restarts, sub);
    const auto needed = static_cast<std::size_t>(std::ceil(config.min_path_fraction * static_cast<double>(t)));
    if (path.size() < std::max<std::size_t>(needed, 2)) {
      last = Error(ErrorCode::path_too_short, "longest path found has " + std::to_string(path.size()) + " of " +
                                                  std::to_string(t) + " vertices");
      continue;
    }
    std::size_t k = config.team_size;
    if (path.size() <= k) {
      k = path.size();
    } else {
      path.resize(path.size() / k * k);
    }

    std::vector<char> on_path(t, 0);
    for (Vertex v : path) on_path[v] = 1;
    std::vector<Vertex> off;
    for (Vertex v = 0; v < t; ++v)
      if (!on_path[v]) off.push_back(v);
    std::optional<std::vector<Vertex>> partner;
    if (!off.empty()) {
      partner = saturating_matching(h, off, path);
      if (!partner) {
        last = Error(ErrorCode::no_saturating_matching,
                     std::to_string(off.size()) + " vertices off the path cannot be matched onto it");
        continue;
      }
    }

    // All teams sweep in lockstep, so the union of their rounds alternates
    // between two matchings.
    const std::size_t teams = path.size() / k;
    std::vector<Matching> unions(2);
    std::size_t sweep_rounds = 0;
    for (std::size_t j = 0; j < teams; ++j) {
      std::span<const Vertex> segment(path.data() + j * k, k);
      Schedule one = hamiltonian_path_schedule(h, segment, PathSweep::visit_all);
      sweep_rounds = one.rounds();
      for (std::size_t i = 0; i < std::min<std::size_t>(2, one.rounds()); ++i) {
        const auto& m = one.round(i);
        unions[i].insert(unions[i].end(), m.begin(), m.end());
      }
    }
    const std::uint32_t ids[2] = {s.add_matching(unions[0]), s.add_matching(unions[1])};
    for (std::size_t i = 0; i < sweep_rounds; ++i) s.push_round(ids[i % 2]);
    if (!off.empty()) {
      Matching swap;
      for (std::size_t i = 0; i < off.size(); ++i) swap.emplace_back(off[i], (*partner)[i]);
      s.append(std::move(swap));
      for (std::size_t i = 0; i < sweep_rounds; ++i) s.push_round(ids[i % 2]);
    }

    const SimulationResult sim = run_schedule(h, s);
    if (!sim.all_acquainted) {
      std::string sample;
      for (std::size_t i = 0; i < std::min<std::size_t>(3, sim.unacquainted_sample.size()); ++i) {
        sample += " (" + std::to_string(sim.unacquainted_sample[i].first) + "," +
                  std::to_string(sim.unacquainted_sample[i].second) + ")";
      }
      last = Error(ErrorCode::not_all_acquainted,
                   std::to_string(sim.total_pairs - sim.acquainted_pairs) + " pairs never met:" + sample);
      continue;
    }
    report.rounds = s.rounds();
    report.bound_ratio = static_cast<double>(report.rounds) / report.theory_value;
    report.schedule = std::move(s);
    return report;
  }
  throw *last;
}

}  // namespace acqlab
