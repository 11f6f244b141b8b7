#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "acqlab/bounds.hpp"
#include "acqlab/brute_force.hpp"
#include "acqlab/dense_strategy.hpp"
#include "acqlab/error.hpp"
#include "acqlab/experiment.hpp"
#include "acqlab/gnp_strategy.hpp"
#include "acqlab/graphgen.hpp"
#include "acqlab/percolated_strategy.hpp"
#include "acqlab/rng.hpp"
#include "acqlab/serialize.hpp"
#include "acqlab/sparse_strategy.hpp"
#include "acqlab/strategies.hpp"
#include "acqlab/structure.hpp"

namespace acqlab::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + path + "'");
  file << text;
  if (!file) throw UsageError("write to '" + path + "' failed");
}

// Writes to `path`, or to `out` when no path was given.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_file(path, text);
  }
}

bool usage_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::radius_out_of_range:
    case ErrorCode::invalid_matching:
    case ErrorCode::config_error:
    case ErrorCode::domain_error:
    case ErrorCode::schema_error:
      return true;
    default:
      return false;
  }
}

// Strategy and sweep constants; unset fields keep the library defaults.
struct Overrides {
  bool asymptotic = false;
  std::optional<double> granularity;
  std::optional<double> slot_fraction;
  std::optional<double> min_occupancy;
  std::optional<double> max_occupancy;
  std::optional<double> part_fraction;
  std::optional<std::string> plan;
  std::optional<double> team_constant;
  std::optional<double> team_cap;
  std::optional<std::string> cover;
  std::optional<std::size_t> team_size;
  std::optional<std::size_t> path_restarts;
  std::optional<double> min_path_fraction;
  std::optional<std::size_t> retries;
  std::optional<double> eta;
  std::optional<double> delta;
  std::optional<double> separation;
  std::optional<std::size_t> cells;
  std::optional<double> threshold;
  std::optional<std::size_t> class_size;
  std::optional<double> class_fraction;
  std::optional<double> capacity_fraction;
  std::optional<std::size_t> group_size;
};

void add_overrides(CLI::App* app, Overrides& o) {
  app->add_flag("--asymptotic", o.asymptotic, "Start from the constants of the asymptotic construction");
  app->add_option("--granularity", o.granularity, "Cells have side 1 / ceil(granularity / r)");
  app->add_option("--slot-fraction", o.slot_fraction, "Group size as a share of the mean occupancy");
  app->add_option("--min-occupancy", o.min_occupancy, "Lowest allowed occupancy as a share of the mean");
  app->add_option("--max-occupancy", o.max_occupancy, "Highest allowed occupancy as a share of the mean");
  app->add_option("--part-fraction", o.part_fraction, "Largest part as a share of the mean occupancy");
  app->add_option("--plan", o.plan, "Phase plan")->check(CLI::IsMember({"single_parts", "part_pairs"}));
  app->add_option("--team-constant", o.team_constant, "Team size constant for k = C ln n / p");
  app->add_option("--team-cap", o.team_cap, "Team size cap as a share of the group size");
  app->add_option("--cover", o.cover, "Session schedule")->check(CLI::IsMember({"path_step", "grid_four"}));
  app->add_option("--k", o.team_size, "Team size for the team strategy");
  app->add_option("--path-restarts", o.path_restarts, "Randomized long-path searches per attempt");
  app->add_option("--min-path-fraction", o.min_path_fraction, "Share of vertices the long path must cover");
  app->add_option("--retries", o.retries, "Team strategy retries with fresh sub-seeds");
  app->add_option("--eta", o.eta, "Structure cells: m = ceil(sqrt(n / (eta^2 ln n)))");
  app->add_option("--delta", o.delta, "Good cells hold at least delta ln n points");
  app->add_option("--separation", o.separation, "Obstruction separation in multiples of r");
  app->add_option("--cells", o.cells, "Structure cells per side, overriding eta");
  app->add_option("--threshold", o.threshold, "Good-cell threshold, overriding delta");
  app->add_option("--class-size", o.class_size, "Vertices per class in the sparse partition");
  app->add_option("--class-fraction", o.class_fraction, "Class size as a share of the threshold");
  app->add_option("--capacity-fraction", o.capacity_fraction, "Agents moving into a cell at once, share of T");
  app->add_option("--group-size", o.group_size, "Travelling group size in the sparse strategy");
}

template <class T>
void set_if(T& target, const std::optional<T>& value) {
  if (value) target = *value;
}

DenseConfig dense_config(const Overrides& o) {
  DenseConfig c = o.asymptotic ? asymptotic_dense_config() : DenseConfig{};
  set_if(c.granularity, o.granularity);
  set_if(c.slot_fraction, o.slot_fraction);
  set_if(c.min_occupancy_fraction, o.min_occupancy);
  set_if(c.max_occupancy_fraction, o.max_occupancy);
  set_if(c.part_fraction, o.part_fraction);
  if (o.plan) c.plan = *o.plan == "single_parts" ? PhasePlan::single_parts : PhasePlan::part_pairs;
  return c;
}

TeamStrategyConfig team_config(TeamStrategyConfig c, const Overrides& o) {
  set_if(c.team_size, o.team_size);
  set_if(c.path_restarts, o.path_restarts);
  set_if(c.min_path_fraction, o.min_path_fraction);
  set_if(c.max_retries, o.retries);
  return c;
}

PercolatedConfig percolated_config(const Overrides& o) {
  PercolatedConfig c = o.asymptotic ? asymptotic_percolated_config() : PercolatedConfig{};
  set_if(c.granularity, o.granularity);
  set_if(c.slot_fraction, o.slot_fraction);
  set_if(c.min_occupancy_fraction, o.min_occupancy);
  set_if(c.max_occupancy_fraction, o.max_occupancy);
  set_if(c.part_fraction, o.part_fraction);
  set_if(c.team_constant, o.team_constant);
  set_if(c.team_cap_fraction, o.team_cap);
  if (o.cover) c.cover = *o.cover == "path_step" ? SessionCover::path_step : SessionCover::grid_four;
  c.team = team_config(c.team, o);
  return c;
}

StructureConfig structure_config(const Overrides& o) {
  StructureConfig c;
  set_if(c.eta, o.eta);
  set_if(c.delta, o.delta);
  set_if(c.separation_factor, o.separation);
  set_if(c.cells_per_side, o.cells);
  set_if(c.threshold, o.threshold);
  return c;
}

PartitionConfig partition_config(const Overrides& o) {
  PartitionConfig c;
  set_if(c.class_fraction, o.class_fraction);
  set_if(c.class_size, o.class_size);
  return c;
}

SparseConfig sparse_config(const Overrides& o) {
  SparseConfig c = o.asymptotic ? asymptotic_sparse_config() : SparseConfig{};
  set_if(c.capacity_fraction, o.capacity_fraction);
  set_if(c.group_size, o.group_size);
  return c;
}

// Copies every option given on the command line into `params`, so that the
// output file records how it was produced.
void echo_options(const CLI::App* app, std::initializer_list<std::string_view> skip, Params& params) {
  for (const CLI::Option* opt : app->get_options()) {
    if (opt->count() == 0 || opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help" || std::find(skip.begin(), skip.end(), name) != skip.end()) continue;
    if (opt->get_type_size() == 0) {
      params[name] = std::int64_t{1};
      continue;
    }
    const std::string value = opt->as<std::string>();
    std::size_t used = 0;
    try {
      const double d = std::stod(value, &used);
      if (used == value.size()) {
        if (value.find_first_of(".eE") == std::string::npos) {
          params[name] = static_cast<std::int64_t>(std::stoll(value));
        } else {
          params[name] = d;
        }
        continue;
      }
    } catch (const std::exception&) {
    }
    params[name] = value;
  }
}

struct GenArgs {
  std::size_t n = 0;
  std::optional<double> r;
  std::optional<std::string> regime;
  double k_const = 100;
  double p = 1;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  if (a.r.has_value() == a.regime.has_value()) throw UsageError("give exactly one of --r and --regime");
  const double r = a.r ? *a.r : regime_radius(parse_regime(*a.regime), a.n, a.k_const, a.p);
  const PointSet points = sample_points(a.n, a.seed);
  const GeometricGraph g = a.p < 1 ? build_percolated_rgg(points, r, a.p, a.seed) : build_rgg(points, r);
  emit(a.out, graph_to_json(g), out);
  return kExitOk;
}

struct SimulateArgs {
  std::string graph;
  std::string schedule;
  std::string out;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const GeometricGraph g = graph_from_json(read_file(a.graph));
  const Schedule s = schedule_from_json(read_file(a.schedule));
  const SimulationResult result = run_schedule(g.graph, s);
  emit(a.out, result_to_json(result), out);
  return result.all_acquainted ? kExitOk : kExitFailure;
}

struct StrategyArgs {
  std::string graph;
  std::string strategy;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string report;
  Overrides overrides;
};

int cmd_strategy(const StrategyArgs& a, const CLI::App* app, std::ostream& out) {
  const GeometricGraph g = graph_from_json(read_file(a.graph));
  const std::uint64_t seed = a.seed.value_or(g.points.seed);
  const Overrides& o = a.overrides;
  StrategyReport report;
  if (a.strategy == "dense") {
    DenseConfig c = dense_config(o);
    c.verify = false;
    report = dense_schedule(g, c);
  } else if (a.strategy == "percolated") {
    PercolatedConfig c = percolated_config(o);
    c.verify = false;
    report = percolated_schedule(g, c, derive_seed(seed, "strategy"));
  } else if (a.strategy == "sparse") {
    StructureAnalysis analysis = analyze(g, structure_config(o));
    assign_and_partition(analysis, partition_config(o));
    SparseConfig c = sparse_config(o);
    c.verify = false;
    report = sparse_schedule(g, analysis, c);
  } else if (a.strategy == "team") {
    if (!o.team_size) throw UsageError("the team strategy needs --k");
    report = gnp_pair_schedule(g.graph, team_config({}, o), derive_seed(seed, "strategy"));
  } else {
    report.schedule = tree_walk_schedule(g.graph, bounded_degree_spanning_tree(g));
    report.rounds = report.schedule.rounds();
  }
  report.schedule.params["seed"] = static_cast<std::int64_t>(seed);
  echo_options(app, {"graph", "strategy", "seed", "out", "report"}, report.schedule.params);

  const SimulationResult result = run_schedule(g.graph, report.schedule);
  if (!a.out.empty()) write_file(a.out, schedule_to_json(report.schedule));
  emit(a.report, report_to_json(report, &result), out);
  return result.all_acquainted ? kExitOk : kExitFailure;
}

struct BruteArgs {
  std::string graph;
  bool helicopter = false;
  std::size_t cap = 64;
  std::string schedule_out;
};

int cmd_bruteforce(const BruteArgs& a, std::ostream& out) {
  const GeometricGraph g = graph_from_json(read_file(a.graph));
  if (a.helicopter) {
    out << brute_force_helicopter_ac(g.graph) << '\n';
    return kExitOk;
  }
  const std::optional<Schedule> best = brute_force_schedule(g.graph, a.cap);
  if (!best) {
    out << "none within " << a.cap << " rounds\n";
    return kExitFailure;
  }
  out << best->rounds() << '\n';
  if (!a.schedule_out.empty()) write_file(a.schedule_out, schedule_to_json(*best));
  return kExitOk;
}

struct StructureArgs {
  std::string graph;
  bool partition = false;
  std::string out;
  Overrides overrides;
};

int cmd_structure(const StructureArgs& a, std::ostream& out) {
  const GeometricGraph g = graph_from_json(read_file(a.graph));
  StructureAnalysis analysis = analyze(g, structure_config(a.overrides));
  if (a.partition) assign_and_partition(analysis, partition_config(a.overrides));
  emit(a.out, analysis_to_json(analysis), out);
  return kExitOk;
}

struct SweepArgs {
  std::string regime;
  double k_const = 100;
  double p = 1;
  std::vector<std::size_t> ns;
  std::size_t seeds = 1;
  std::uint64_t seed = 1;
  std::size_t threads = 0;
  double time_budget = 0;
  std::string out;
  Overrides overrides;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  ExperimentConfig config;
  config.regime = parse_regime(a.regime);
  config.k_const = a.k_const;
  config.p = a.p;
  config.ns = a.ns;
  config.seeds = a.seeds;
  config.base_seed = a.seed;
  config.threads = a.threads;
  config.time_budget_s = a.time_budget;
  config.dense = dense_config(a.overrides);
  config.percolated = percolated_config(a.overrides);
  config.structure = structure_config(a.overrides);
  config.partition = partition_config(a.overrides);
  config.sparse = sparse_config(a.overrides);
  if (config.regime == Regime::percolated && !(a.p > 0 && a.p <= 1)) throw UsageError("--p must lie in (0, 1]");

  const std::vector<ExperimentRecord> records = scaling_experiment(config);
  std::ostringstream csv;
  write_csv(csv, records);
  emit(a.out, csv.str(), out);
  if (!a.out.empty()) write_file(a.out + ".config.json", experiment_to_json(config, records));

  std::size_t failed = 0;
  for (const ExperimentRecord& r : records) {
    if (r.all_acquainted) continue;
    ++failed;
    err << "n=" << r.n << " seed=" << r.seed << ": " << (r.error.empty() ? "not all acquainted" : r.error) << '\n';
  }
  return failed == 0 ? kExitOk : kExitFailure;
}

std::string shortest(double value) {
  char buf[32];
  const auto end = std::to_chars(buf, buf + sizeof buf, value).ptr;
  return std::string(buf, end);
}

struct PmArgs {
  std::size_t t = 0;
  double p = 0;
  std::size_t trials = 100000;
  std::uint64_t seed = 1;
};

int cmd_pmprob(const PmArgs& a, std::ostream& out) {
  const ProportionEstimate e = pm_probability(a.t, a.p, a.trials, a.seed);
  out << "{\n  \"t\": " << a.t << ",\n  \"p\": " << shortest(a.p) << ",\n  \"trials\": " << a.trials
      << ",\n  \"seed\": " << a.seed << ",\n  \"successes\": " << e.successes
      << ",\n  \"estimate\": " << shortest(e.estimate) << ",\n  \"low\": " << shortest(e.low)
      << ",\n  \"high\": " << shortest(e.high) << "\n}\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Acquaintance time experiments on random geometric graphs", "acqlab"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Sample a (percolated) random geometric graph");
  gen_cmd->add_option("--n", gen.n, "Number of points")->required()->check(CLI::PositiveNumber);
  auto* r_opt = gen_cmd->add_option("--r", gen.r, "Connection radius");
  auto* regime_opt = gen_cmd->add_option("--regime", gen.regime, "Radius from a regime formula")
                         ->check(CLI::IsMember({"dense", "sparse", "percolated"}));
  r_opt->excludes(regime_opt);
  gen_cmd->add_option("--K", gen.k_const, "Regime constant K")->capture_default_str();
  gen_cmd->add_option("--p", gen.p, "Edge retention probability")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--seed", gen.seed, "Seed for points and percolation")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output path (default: standard output)");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Run a schedule on a graph");
  sim_cmd->add_option("--graph", sim.graph, "Graph JSON")->required();
  sim_cmd->add_option("--schedule", sim.schedule, "Schedule JSON")->required();
  sim_cmd->add_option("--out", sim.out, "Result path (default: standard output)");

  StrategyArgs strat;
  auto* strat_cmd = app.add_subcommand("strategy", "Build a schedule with a named strategy and verify it");
  strat_cmd->add_option("--graph", strat.graph, "Graph JSON")->required();
  strat_cmd->add_option("--strategy", strat.strategy, "Strategy name")
      ->required()
      ->check(CLI::IsMember({"dense", "percolated", "sparse", "team", "tree_walk"}));
  strat_cmd->add_option("--seed", strat.seed, "Strategy seed (default: the graph seed)");
  strat_cmd->add_option("--out", strat.out, "Schedule output path");
  strat_cmd->add_option("--report", strat.report, "Report path (default: standard output)");
  add_overrides(strat_cmd, strat.overrides);

  BruteArgs brute;
  auto* brute_cmd = app.add_subcommand("bruteforce", "Exact acquaintance time of a small graph");
  brute_cmd->add_option("--graph", brute.graph, "Graph JSON")->required();
  brute_cmd->add_flag("--helicopter", brute.helicopter, "Allow any permutation per round");
  brute_cmd->add_option("--cap", brute.cap, "Largest number of rounds searched")->capture_default_str();
  brute_cmd->add_option("--schedule-out", brute.schedule_out, "Write an optimal schedule here");

  StructureArgs st;
  auto* st_cmd = app.add_subcommand("structure", "Cells, labels, obstructions and properties of a sparse graph");
  st_cmd->add_option("--graph", st.graph, "Graph JSON")->required();
  st_cmd->add_flag("--partition", st.partition, "Also assign vertices to cells and split into classes");
  st_cmd->add_option("--out", st.out, "Output path (default: standard output)");
  add_overrides(st_cmd, st.overrides);

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Seeded scaling sweep written as CSV");
  sweep_cmd->add_option("--regime", sweep.regime, "Regime")
      ->required()
      ->check(CLI::IsMember({"dense", "sparse", "percolated"}));
  sweep_cmd->add_option("--K", sweep.k_const, "Regime constant K")->capture_default_str();
  sweep_cmd->add_option("--p", sweep.p, "Edge retention probability")->capture_default_str();
  sweep_cmd->add_option("--ns", sweep.ns, "Comma-separated sizes")->required()->delimiter(',');
  sweep_cmd->add_option("--seeds", sweep.seeds, "Runs per size")->capture_default_str();
  sweep_cmd->add_option("--seed", sweep.seed, "Base seed")->capture_default_str();
  sweep_cmd->add_option("--threads", sweep.threads, "Worker threads (default: ACQLAB_THREADS or 1)");
  sweep_cmd->add_option("--time-budget", sweep.time_budget, "Skip runs not started within this many seconds");
  sweep_cmd->add_option("--out", sweep.out, "CSV path (default: standard output); config goes to <out>.config.json");
  add_overrides(sweep_cmd, sweep.overrides);

  PmArgs pm;
  auto* pm_cmd = app.add_subcommand("pmprob", "Monte Carlo probability of a perfect matching in B(t, p)");
  pm_cmd->add_option("--t", pm.t, "Side size")->required();
  pm_cmd->add_option("--p", pm.p, "Edge probability")->required();
  pm_cmd->add_option("--trials", pm.trials, "Number of trials")->capture_default_str();
  pm_cmd->add_option("--seed", pm.seed, "Seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen, out);
    if (sim_cmd->parsed()) return cmd_simulate(sim, out);
    if (strat_cmd->parsed()) return cmd_strategy(strat, strat_cmd, out);
    if (brute_cmd->parsed()) return cmd_bruteforce(brute, out);
    if (st_cmd->parsed()) return cmd_structure(st, out);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep, out, err);
    if (pm_cmd->parsed()) return cmd_pmprob(pm, out);
  } catch (const UsageError& e) {
    err << "acqlab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "acqlab: " << e.what() << '\n';
    return usage_code(e.code()) ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    err << "acqlab: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace acqlab::cli
