#include "acqlab/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "acqlab/error.hpp"
#include "acqlab/rng.hpp"

namespace acqlab {

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::dense: return "dense";
    case Regime::sparse: return "sparse";
    case Regime::percolated: return "percolated";
  }
  return "?";
}

Regime parse_regime(std::string_view name) {
  if (name == "dense") return Regime::dense;
  if (name == "sparse") return Regime::sparse;
  if (name == "percolated") return Regime::percolated;
  throw Error(ErrorCode::config_error, "unknown regime '" + std::string(name) + "'");
}

double regime_radius(Regime regime, std::size_t n, double k_const, double p) {
  if (n < 2) throw Error(ErrorCode::config_error, "regime radius needs n >= 2");
  switch (regime) {
    case Regime::dense: return dense_radius(n, k_const);
    case Regime::sparse: return sparse_radius(n);
    case Regime::percolated: return percolated_radius(n, p, k_const);
  }
  return 0;
}

std::string strategy_name(Regime regime) { return std::string(to_string(regime)); }

std::uint64_t run_seed(std::uint64_t base_seed, std::size_t index) { return derive_seed(base_seed, "run", index); }

ExperimentRecord run_experiment(const ExperimentConfig& config, std::size_t n, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentRecord rec;
  rec.n = n;
  rec.seed = seed;
  rec.p = config.regime == Regime::percolated ? config.p : 1.0;
  rec.strategy = strategy_name(config.regime);
  try {
    rec.r = regime_radius(config.regime, n, config.k_const, config.p);
    const PointSet points = sample_points(n, seed);
    const GeometricGraph g = config.regime == Regime::percolated
                                 ? build_percolated_rgg(points, rec.r, config.p, seed)
                                 : build_rgg(points, rec.r);
    if (g.edge_count() > 0) rec.lower_bound = trivial_lower_bound(g.graph);
    StrategyReport report;
    switch (config.regime) {
      case Regime::dense: {
        DenseConfig c = config.dense;
        c.verify = false;
        report = dense_schedule(g, c);
        break;
      }
      case Regime::percolated: {
        PercolatedConfig c = config.percolated;
        c.verify = false;
        report = percolated_schedule(g, c, derive_seed(seed, "strategy"));
        break;
      }
      case Regime::sparse: {
        StructureAnalysis a = analyze(g, config.structure);
        assign_and_partition(a, config.partition);
        SparseConfig c = config.sparse;
        c.verify = false;
        report = sparse_schedule(g, a, c);
        break;
      }
    }
    rec.rounds = report.rounds;
    rec.theory_value = report.theory_value;
    rec.ratio = report.theory_value > 0 ? static_cast<double>(report.rounds) / report.theory_value : 0;
    const SimulationResult sim = run_schedule(g.graph, report.schedule);
    rec.all_acquainted = sim.all_acquainted;
    if (!sim.all_acquainted) rec.error = std::to_string(sim.total_pairs - sim.acquainted_pairs) + " pairs never met";
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  rec.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

std::vector<ExperimentRecord> scaling_experiment(const ExperimentConfig& config) {
  struct Run {
    std::size_t n;
    std::uint64_t seed;
  };
  std::vector<Run> runs;
  for (std::size_t n : config.ns)
    for (std::size_t s = 0; s < config.seeds; ++s) runs.push_back({n, run_seed(config.base_seed, runs.size())});

  std::size_t threads = config.threads;
  if (threads == 0) {
    const char* env = std::getenv("ACQLAB_THREADS");
    threads = env ? std::strtoul(env, nullptr, 10) : 1;
  }
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(runs.size(), 1));

  std::vector<ExperimentRecord> records(runs.size());
  std::atomic<std::size_t> next{0};
  const auto start = std::chrono::steady_clock::now();
  auto worker = [&] {
    for (std::size_t i = next++; i < runs.size(); i = next++) {
      const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (config.time_budget_s > 0 && elapsed > config.time_budget_s) {
        ExperimentRecord& rec = records[i];
        rec.n = runs[i].n;
        rec.seed = runs[i].seed;
        rec.p = config.regime == Regime::percolated ? config.p : 1.0;
        rec.strategy = strategy_name(config.regime);
        rec.error = "skipped: time budget of " + std::to_string(config.time_budget_s) + " s used up";
        continue;
      }
      records[i] = run_experiment(config, runs[i].n, runs[i].seed);
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return records;
}

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    std::ostringstream row;
    row << std::setprecision(17) << r.n << ',' << r.r << ',' << r.p << ',' << r.seed << ',' << r.strategy << ','
        << r.rounds << ',' << r.lower_bound << ',' << r.theory_value << ',' << r.ratio << ','
        << (r.all_acquainted ? "true" : "false") << ',' << std::setprecision(6) << std::fixed << r.wall_time_ms;
    out << row.str() << '\n';
  }
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <class T>
T parse_field(const std::string& text, std::size_t line, std::string_view column) {
  std::istringstream in(text);
  T value{};
  in >> value;
  if (in.fail() || !in.eof()) {
    throw Error(ErrorCode::schema_error,
                "line " + std::to_string(line) + ": bad " + std::string(column) + " '" + text + "'");
  }
  return value;
}

}  // namespace

std::vector<ExperimentRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::schema_error, "empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw Error(ErrorCode::schema_error, "unexpected header '" + line + "'");
  std::vector<ExperimentRecord> out;
  for (std::size_t number = 2; std::getline(in, line); ++number) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 11) {
      throw Error(ErrorCode::schema_error,
                  "line " + std::to_string(number) + ": expected 11 fields, got " + std::to_string(f.size()));
    }
    ExperimentRecord r;
    r.n = parse_field<std::size_t>(f[0], number, "n");
    r.r = parse_field<double>(f[1], number, "r");
    r.p = parse_field<double>(f[2], number, "p");
    r.seed = parse_field<std::uint64_t>(f[3], number, "seed");
    r.strategy = f[4];
    r.rounds = parse_field<std::size_t>(f[5], number, "rounds");
    r.lower_bound = parse_field<std::uint64_t>(f[6], number, "lower_bound");
    r.theory_value = parse_field<double>(f[7], number, "theory_value");
    r.ratio = parse_field<double>(f[8], number, "ratio");
    if (f[9] != "true" && f[9] != "false") {
      throw Error(ErrorCode::schema_error, "line " + std::to_string(number) + ": bad all_acquainted '" + f[9] + "'");
    }
    r.all_acquainted = f[9] == "true";
    r.wall_time_ms = parse_field<double>(f[10], number, "wall_time_ms");
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace acqlab
