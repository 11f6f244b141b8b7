#include <cmath>

#include "acqlab/error.hpp"
#include "acqlab/percolated_strategy.hpp"
#include "doctest.h"

using namespace acqlab;

namespace {

GeometricGraph fixture(std::size_t n, double p, std::uint64_t seed) {
  return build_percolated_rgg(sample_points(n, seed), percolated_radius(n, p, 80), p, seed);
}

}  // namespace

TEST_CASE("percolated strategy acquaints everyone") {
  for (SessionCover cover : {SessionCover::path_step, SessionCover::grid_four}) {
    const GeometricGraph g = fixture(1500, 0.6, 1);
    PercolatedConfig config;
    config.cover = cover;
    PercolatedPlanInfo info;
    const StrategyReport r = percolated_schedule(g, config, 5, &info);
    CHECK(run_schedule(g.graph, r.schedule).all_acquainted);
    CHECK(r.rounds >= trivial_lower_bound(g.graph));
    CHECK(r.theory_value == static_cast<double>(info.m * info.m * info.team_size));
    CHECK(info.team_size == percolated_team_size(1500, 0.6, info.slots, config));
    CHECK(info.sessions > 0);
  }
}

TEST_CASE("percolated strategy is deterministic in its seed") {
  const GeometricGraph g = fixture(1500, 0.6, 2);
  const StrategyReport a = percolated_schedule(g, {}, 9);
  const StrategyReport b = percolated_schedule(g, {}, 9);
  CHECK(a.rounds == b.rounds);
  CHECK(a.schedule.expanded() == b.schedule.expanded());
}

TEST_CASE("team size follows C ln n / p capped by the group") {
  PercolatedConfig config;
  const std::size_t n = 10000;
  CHECK(percolated_team_size(n, 0.3, 1000, config) ==
        static_cast<std::size_t>(std::floor(1.5 * std::log(10000.0) / 0.3)));
  CHECK(percolated_team_size(n, 0.3, 20, config) == 20);
  CHECK_THROWS_AS(percolated_team_size(n, 0.0, 100, config), Error);
  // The asymptotic cap of slots / 1000 leaves no team at desk sizes.
  try {
    percolated_team_size(n, 0.3, 300, asymptotic_percolated_config());
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::config_error);
  }
}
