#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "acqlab/dense_strategy.hpp"
#include "acqlab/percolated_strategy.hpp"
#include "acqlab/sparse_strategy.hpp"
#include "acqlab/structure.hpp"

namespace acqlab {

// How the radius follows n:
//   dense:      pi n r^2 = K ln n
//   sparse:     pi n r^2 = ln n + 2 ln ln n
//   percolated: p n r^2 = K ln n, edges kept with probability p
enum class Regime { dense, sparse, percolated };

std::string_view to_string(Regime regime);
Regime parse_regime(std::string_view name);  // throws ConfigError
double regime_radius(Regime regime, std::size_t n, double k_const, double p);

struct ExperimentConfig {
  Regime regime = Regime::dense;
  double k_const = 100;
  double p = 1.0;
  std::vector<std::size_t> ns;
  std::size_t seeds = 1;
  std::uint64_t base_seed = 1;
  DenseConfig dense;
  PercolatedConfig percolated;
  StructureConfig structure;
  PartitionConfig partition;
  SparseConfig sparse;
  // Worker threads; 0 reads ACQLAB_THREADS and defaults to 1.
  std::size_t threads = 0;
  // Runs not started within this many seconds are skipped; 0 disables.
  double time_budget_s = 0;
};

std::string strategy_name(Regime regime);

struct ExperimentRecord {
  std::size_t n = 0;
  double r = 0;
  double p = 1;
  std::uint64_t seed = 0;
  std::string strategy;
  std::size_t rounds = 0;
  std::uint64_t lower_bound = 0;
  double theory_value = 0;
  double ratio = 0;
  bool all_acquainted = false;
  double wall_time_ms = 0;
  // Not part of the CSV: failure message or skip reason, empty on success.
  std::string error;
};

inline constexpr std::string_view kCsvHeader =
    "n,r,p,seed,strategy,rounds,lower_bound,theory_value,ratio,all_acquainted,wall_time_ms";

// Seed of run `index` (n-major, then seed) of a sweep.
std::uint64_t run_seed(std::uint64_t base_seed, std::size_t index);

// One run: build the graph for (n, seed), compile the regime's strategy
// without its internal check, replay it and record the outcome. Failures
// are recorded, not thrown.
ExperimentRecord run_experiment(const ExperimentConfig& config, std::size_t n, std::uint64_t seed);

// All runs of the sweep in n-major order, computed in parallel.
std::vector<ExperimentRecord> scaling_experiment(const ExperimentConfig& config);

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);
// Throws SchemaError when the header or a row does not match the schema.
std::vector<ExperimentRecord> read_csv(std::istream& in);

}  // namespace acqlab
