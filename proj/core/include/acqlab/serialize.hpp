#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "acqlab/experiment.hpp"
#include "acqlab/graphgen.hpp"
#include "acqlab/process.hpp"
#include "acqlab/strategies.hpp"
#include "acqlab/structure.hpp"

namespace acqlab {

// All writers produce deterministic text: keys in a fixed order, doubles in
// shortest round-trip form, two-space indentation except where noted. Readers
// throw SchemaError on malformed input.

// {n, r, p, seed, points: [[x, y], ...], edges: [[u, v], ...]} with u < v.
// `seed` is the point seed; percolation coins use the same seed on reading.
std::string graph_to_json(const GeometricGraph& g);
// Points may be empty for graphs given only by their edges.
GeometricGraph graph_from_json(std::string_view text);

// {strategy, params, matchings: [[[u, v], ...], ...]}, one matching per round.
std::string schedule_to_json(const Schedule& s);
Schedule schedule_from_json(std::string_view text);

std::string result_to_json(const SimulationResult& result);

// Report fields and the schedule summary (strategy, params, rounds); the
// matchings themselves go through schedule_to_json. With a simulation result
// its outcome is included as well.
std::string report_to_json(const StrategyReport& report, const SimulationResult* simulation = nullptr);

// Labels, components, obstructions with crucial vertices, property checks
// with witnesses and, when partitioned, home cells and class sizes.
std::string analysis_to_json(const StructureAnalysis& a);

// Sweep parameters written next to a sweep CSV, plus the per-run errors.
std::string experiment_to_json(const ExperimentConfig& config, const std::vector<ExperimentRecord>& records);

}  // namespace acqlab
