#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "acqlab/error.hpp"
#include "acqlab/experiment.hpp"
#include "acqlab/rng.hpp"
#include "doctest.h"
#include "error_check.hpp"

using namespace acqlab;

namespace {

ExperimentRecord sample_record(std::size_t i) {
  ExperimentRecord r;
  r.n = 1000 + i;
  r.r = 0.1 / static_cast<double>(i + 3);
  r.p = 0.75;
  r.seed = 0xFFFFFFFFFFFFFFF0ULL + i;
  r.strategy = i % 2 ? "dense" : "percolated";
  r.rounds = 12345 * i;
  r.lower_bound = 17 + i;
  r.theory_value = std::log(1000.0 + static_cast<double>(i)) * 3.3;
  r.ratio = 1.0 / 3.0 + static_cast<double>(i);
  r.all_acquainted = i % 3 != 0;
  r.wall_time_ms = 12.5 + static_cast<double>(i) / 7.0;
  return r;
}

std::vector<ExperimentRecord> read(const std::string& text) {
  std::istringstream in(text);
  return read_csv(in);
}

const std::string kHeader(kCsvHeader);

}  // namespace

TEST_CASE("regime names") {
  for (Regime r : {Regime::dense, Regime::sparse, Regime::percolated}) CHECK(parse_regime(to_string(r)) == r);
  CHECK(error_code_of([] { return parse_regime("medium"); }) == ErrorCode::config_error);
  CHECK(strategy_name(Regime::percolated) == "percolated");
}

TEST_CASE("regime radius follows the scaling laws") {
  const double pi = std::numbers::pi;
  for (std::size_t n : {100u, 5000u, 100000u}) {
    const double ln = std::log(static_cast<double>(n));
    const double nd = static_cast<double>(n);
    CHECK(regime_radius(Regime::dense, n, 50, 0.3) == doctest::Approx(std::sqrt(50 * ln / (pi * nd))));
    CHECK(regime_radius(Regime::sparse, n, 50, 0.3) == doctest::Approx(std::sqrt((ln + 2 * std::log(ln)) / (pi * nd))));
    CHECK(regime_radius(Regime::percolated, n, 50, 0.3) == doctest::Approx(std::sqrt(50 * ln / (0.3 * nd))));
  }
  CHECK(error_code_of([] { return regime_radius(Regime::dense, 1, 100, 1); }) == ErrorCode::config_error);
}

TEST_CASE("csv header is exact") {
  std::ostringstream out;
  write_csv(out, {});
  CHECK(out.str() == "n,r,p,seed,strategy,rounds,lower_bound,theory_value,ratio,all_acquainted,wall_time_ms\n");
}

TEST_CASE("csv round trip") {
  std::vector<ExperimentRecord> records;
  for (std::size_t i = 0; i < 5; ++i) records.push_back(sample_record(i));
  std::ostringstream out;
  write_csv(out, records);
  const auto back = read(out.str());
  REQUIRE(back.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(back[i].n == records[i].n);
    CHECK(back[i].r == records[i].r);
    CHECK(back[i].p == records[i].p);
    CHECK(back[i].seed == records[i].seed);
    CHECK(back[i].strategy == records[i].strategy);
    CHECK(back[i].rounds == records[i].rounds);
    CHECK(back[i].lower_bound == records[i].lower_bound);
    CHECK(back[i].theory_value == records[i].theory_value);
    CHECK(back[i].ratio == records[i].ratio);
    CHECK(back[i].all_acquainted == records[i].all_acquainted);
    CHECK(back[i].wall_time_ms == doctest::Approx(records[i].wall_time_ms).epsilon(1e-6));
  }
  std::ostringstream again;
  write_csv(again, back);
  CHECK(again.str() == out.str());
}

TEST_CASE("csv reader accepts CRLF and blank lines") {
  const auto rows = read(kHeader + "\r\n1,0.5,1,7,dense,3,2,4,0.75,true,1.0\r\n\n");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].rounds == 3);
  CHECK(rows[0].all_acquainted);
}

TEST_CASE("csv schema errors") {
  const std::string good = "1,0.5,1,7,dense,3,2,4,0.75,true,1.0\n";
  auto code = [](const std::string& text) { return error_code_of([&] { return read(text); }); };
  CHECK(code("") == ErrorCode::schema_error);
  CHECK(code("n,r,p\n" + good) == ErrorCode::schema_error);
  CHECK(code(kHeader + "\n1,0.5,1,7,dense,3,2,4,0.75,true\n") == ErrorCode::schema_error);
  CHECK(code(kHeader + "\n1,0.5,1,7,dense,3,2,4,0.75,true,1.0,\n") == ErrorCode::schema_error);
  CHECK(code(kHeader + "\nx,0.5,1,7,dense,3,2,4,0.75,true,1.0\n") == ErrorCode::schema_error);
  CHECK(code(kHeader + "\n1,0.5,1,7,dense,3.5,2,4,0.75,true,1.0\n") == ErrorCode::schema_error);
  CHECK(code(kHeader + "\n1,0.5,1,7,dense,3,2,4,0.75,yes,1.0\n") == ErrorCode::schema_error);
  CHECK(code(kHeader + "\n1,,1,7,dense,3,2,4,0.75,true,1.0\n") == ErrorCode::schema_error);
  CHECK_FALSE(code(kHeader + "\n" + good).has_value());
}

TEST_CASE("run seeds are distinct and reproducible") {
  CHECK(run_seed(5, 0) == derive_seed(5, "run", 0));
  CHECK(run_seed(5, 1) != run_seed(5, 0));
  CHECK(run_seed(6, 0) != run_seed(5, 0));
}

TEST_CASE("a dense run records a complete schedule") {
  ExperimentConfig c;
  c.regime = Regime::dense;
  const ExperimentRecord rec = run_experiment(c, 2000, 11);
  CHECK(rec.error.empty());
  CHECK(rec.all_acquainted);
  CHECK(rec.n == 2000);
  CHECK(rec.seed == 11);
  CHECK(rec.p == 1.0);
  CHECK(rec.strategy == "dense");
  CHECK(rec.r == doctest::Approx(dense_radius(2000, 100)));
  const GeometricGraph g = build_rgg(sample_points(2000, 11), rec.r);
  CHECK(rec.lower_bound == trivial_lower_bound(g.graph));
  CHECK(rec.rounds >= rec.lower_bound);
  CHECK(rec.ratio == doctest::Approx(static_cast<double>(rec.rounds) / rec.theory_value));
  CHECK(rec.wall_time_ms > 0);
}

TEST_CASE("failures are recorded, not thrown") {
  ExperimentConfig c;
  c.regime = Regime::sparse;
  const ExperimentRecord rec = run_experiment(c, 300, 4);
  CHECK_FALSE(rec.error.empty());
  CHECK_FALSE(rec.all_acquainted);
  CHECK(rec.strategy == "sparse");
}

TEST_CASE("sweep order, seeds and thread independence") {
  ExperimentConfig c;
  c.regime = Regime::dense;
  c.ns = {1500, 2000};
  c.seeds = 2;
  c.base_seed = 77;
  c.threads = 1;
  const auto serial = scaling_experiment(c);
  REQUIRE(serial.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(serial[i].n == c.ns[i / 2]);
    CHECK(serial[i].seed == run_seed(77, i));
    CHECK(serial[i].error.empty());
  }
  c.threads = 2;
  const auto parallel = scaling_experiment(c);
  REQUIRE(parallel.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(parallel[i].seed == serial[i].seed);
    CHECK(parallel[i].rounds == serial[i].rounds);
    CHECK(parallel[i].lower_bound == serial[i].lower_bound);
  }
}

TEST_CASE("runs past the time budget are skipped") {
  ExperimentConfig c;
  c.regime = Regime::dense;
  c.ns = {2000, 2000, 2000};
  c.threads = 1;
  c.time_budget_s = 1e-3;
  const auto records = scaling_experiment(c);
  REQUIRE(records.size() == 3);
  CHECK(records[0].error.empty());
  for (std::size_t i = 1; i < 3; ++i) {
    CHECK(records[i].error.rfind("skipped", 0) == 0);
    CHECK(records[i].n == 2000);
    CHECK(records[i].seed == run_seed(c.base_seed, i));
    CHECK_FALSE(records[i].all_acquainted);
  }
}
