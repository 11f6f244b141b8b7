#include "acqlab/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <type_traits>
#include <variant>

#include "acqlab/error.hpp"
#include "json.hpp"

namespace acqlab {

namespace {

using Json = nlohmann::ordered_json;

// Top-level object with one key per line. Values are compact, except the
// arrays named in `expanded`, which get one element per line.
std::string write_object(const Json& object, std::initializer_list<std::string_view> expanded = {}) {
  std::ostringstream out;
  out << "{\n";
  std::size_t i = 0;
  for (auto it = object.begin(); it != object.end(); ++it, ++i) {
    out << "  " << Json(it.key()).dump() << ": ";
    const bool expand = it.value().is_array() && !it.value().empty() &&
                        std::find(expanded.begin(), expanded.end(), it.key()) != expanded.end();
    if (expand) {
      out << "[\n";
      for (std::size_t j = 0; j < it.value().size(); ++j) {
        out << "    " << it.value()[j].dump() << (j + 1 < it.value().size() ? ",\n" : "\n");
      }
      out << "  ]";
    } else {
      out << it.value().dump();
    }
    out << (i + 1 < object.size() ? ",\n" : "\n");
  }
  out << "}\n";
  return out.str();
}

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::schema_error, std::string("invalid JSON: ") + e.what());
  }
}

const Json& field(const Json& object, const char* key) {
  if (!object.is_object()) throw Error(ErrorCode::schema_error, "expected a JSON object");
  auto it = object.find(key);
  if (it == object.end()) throw Error(ErrorCode::schema_error, std::string("missing field '") + key + "'");
  return *it;
}

template <class T>
T get(const Json& value, const char* what) {
  if constexpr (std::is_unsigned_v<T>) {
    if (!value.is_number_unsigned()) {
      throw Error(ErrorCode::schema_error, std::string("bad value for '") + what + "': " + value.dump());
    }
  }
  try {
    return value.get<T>();
  } catch (const Json::exception&) {
    throw Error(ErrorCode::schema_error, std::string("bad value for '") + what + "': " + value.dump());
  }
}

Edge read_edge(const Json& pair, std::size_t n, const char* what) {
  if (!pair.is_array() || pair.size() != 2) {
    throw Error(ErrorCode::schema_error, std::string("bad pair in '") + what + "': " + pair.dump());
  }
  const auto u = get<std::uint64_t>(pair[0], what);
  const auto v = get<std::uint64_t>(pair[1], what);
  if (n != 0 && (u >= n || v >= n)) {
    throw Error(ErrorCode::schema_error, std::string("vertex out of range in '") + what + "': " + pair.dump());
  }
  if (u == v) throw Error(ErrorCode::schema_error, std::string("loop in '") + what + "': " + pair.dump());
  return Edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
}

Json params_json(const Params& params) {
  Json out = Json::object();
  for (const auto& [key, value] : params) std::visit([&](const auto& v) { out[key] = v; }, value);
  return out;
}

Params params_from(const Json& object) {
  if (!object.is_object()) throw Error(ErrorCode::schema_error, "params must be an object");
  Params out;
  for (auto it = object.begin(); it != object.end(); ++it) {
    const Json& v = it.value();
    if (v.is_number_integer()) {
      out[it.key()] = v.get<std::int64_t>();
    } else if (v.is_number_float()) {
      out[it.key()] = v.get<double>();
    } else if (v.is_string()) {
      out[it.key()] = v.get<std::string>();
    } else {
      throw Error(ErrorCode::schema_error, "unsupported value for param '" + it.key() + "'");
    }
  }
  return out;
}

Json pair_json(Vertex a, Vertex b) { return Json::array({a, b}); }

}  // namespace

std::string graph_to_json(const GeometricGraph& g) {
  Json out;
  out["n"] = g.num_vertices();
  out["r"] = g.radius;
  out["p"] = g.edge_prob;
  out["seed"] = g.points.seed;
  Json points = Json::array();
  for (const Point& pt : g.points.points) points.push_back(Json::array({pt.x, pt.y}));
  out["points"] = std::move(points);
  Json edges = Json::array();
  for (const Edge& e : g.graph.edges()) edges.push_back(pair_json(e.u, e.v));
  out["edges"] = std::move(edges);
  return write_object(out, {"points", "edges"});
}

GeometricGraph graph_from_json(std::string_view text) {
  const Json doc = parse(text);
  const auto n = get<std::size_t>(field(doc, "n"), "n");
  GeometricGraph g;
  g.radius = get<double>(field(doc, "r"), "r");
  g.edge_prob = get<double>(field(doc, "p"), "p");
  if (!(g.edge_prob >= 0 && g.edge_prob <= 1)) throw Error(ErrorCode::schema_error, "p must lie in [0, 1]");
  g.points.seed = get<std::uint64_t>(field(doc, "seed"), "seed");
  g.percolation_seed = g.points.seed;

  const Json& points = field(doc, "points");
  if (!points.is_array() || (!points.empty() && points.size() != n)) {
    throw Error(ErrorCode::schema_error, "points must be empty or hold n entries");
  }
  for (const Json& pt : points) {
    if (!pt.is_array() || pt.size() != 2) throw Error(ErrorCode::schema_error, "bad point " + pt.dump());
    const Point p{get<double>(pt[0], "points"), get<double>(pt[1], "points")};
    if (!(p.x >= 0 && p.x <= 1 && p.y >= 0 && p.y <= 1)) {
      throw Error(ErrorCode::schema_error, "point outside the unit square " + pt.dump());
    }
    g.points.points.push_back(p);
  }

  const Json& edges = field(doc, "edges");
  if (!edges.is_array()) throw Error(ErrorCode::schema_error, "edges must be an array");
  std::vector<Edge> list;
  list.reserve(edges.size());
  for (const Json& e : edges) list.push_back(read_edge(e, n == 0 ? 1 : n, "edges"));
  g.graph = Graph::from_edges(n, list);
  return g;
}

std::string schedule_to_json(const Schedule& s) {
  Json out;
  out["strategy"] = s.strategy;
  out["params"] = params_json(s.params);
  Json matchings = Json::array();
  for (std::size_t i = 0; i < s.rounds(); ++i) {
    Json round = Json::array();
    for (const Edge& e : s.round(i)) round.push_back(pair_json(e.u, e.v));
    matchings.push_back(std::move(round));
  }
  out["matchings"] = std::move(matchings);
  return write_object(out, {"matchings"});
}

Schedule schedule_from_json(std::string_view text) {
  const Json doc = parse(text);
  Schedule s;
  s.strategy = get<std::string>(field(doc, "strategy"), "strategy");
  s.params = params_from(field(doc, "params"));
  const Json& matchings = field(doc, "matchings");
  if (!matchings.is_array()) throw Error(ErrorCode::schema_error, "matchings must be an array");
  for (const Json& round : matchings) {
    if (!round.is_array()) throw Error(ErrorCode::schema_error, "a matching must be an array of pairs");
    Matching m;
    m.reserve(round.size());
    for (const Json& e : round) m.push_back(read_edge(e, 0, "matchings"));
    s.append(std::move(m));
  }
  return s;
}

std::string result_to_json(const SimulationResult& result) {
  Json out;
  out["rounds"] = result.rounds;
  out["all_acquainted"] = result.all_acquainted;
  out["first_complete_round"] =
      result.first_complete_round ? Json(*result.first_complete_round) : Json(nullptr);
  out["acquainted_pairs"] = result.acquainted_pairs;
  out["total_pairs"] = result.total_pairs;
  Json missing = Json::array();
  for (const auto& [a, b] : result.unacquainted_sample) missing.push_back(pair_json(a, b));
  out["unacquainted_sample"] = std::move(missing);
  return write_object(out);
}

std::string report_to_json(const StrategyReport& report, const SimulationResult* simulation) {
  Json out;
  out["strategy"] = report.schedule.strategy;
  out["params"] = params_json(report.schedule.params);
  out["rounds"] = report.rounds;
  out["theory_value"] = report.theory_value;
  out["bound_ratio"] = report.bound_ratio;
  out["retries"] = report.retries;
  if (simulation) {
    out["all_acquainted"] = simulation->all_acquainted;
    out["first_complete_round"] =
        simulation->first_complete_round ? Json(*simulation->first_complete_round) : Json(nullptr);
    out["unacquainted_pairs"] = simulation->total_pairs - simulation->acquainted_pairs;
  }
  return write_object(out);
}

std::string analysis_to_json(const StructureAnalysis& a) {
  Json out;
  out["n"] = a.n;
  out["r"] = a.radius;
  out["eta"] = a.config.eta;
  out["delta"] = a.config.delta;
  out["cells_per_side"] = a.cells_per_side();
  out["threshold"] = a.threshold;
  out["separation"] = a.separation;

  std::size_t good = 0;
  for (char c : a.good) good += c != 0;
  out["good_cells"] = good;
  Json sizes = Json::array();
  for (const auto& comp : a.components) sizes.push_back(comp.size());
  out["component_sizes"] = std::move(sizes);

  Json props = Json::array();
  for (std::size_t i = 0; i < a.properties.size(); ++i) {
    const PropertyCheck& pc = a.properties[i];
    Json p;
    p["name"] = "P" + std::to_string(i + 1);
    p["holds"] = pc.holds;
    p["witness"] = pc.witness ? pair_json(pc.witness->first, pc.witness->second) : Json(nullptr);
    p["detail"] = pc.detail;
    props.push_back(std::move(p));
  }
  out["properties"] = std::move(props);

  Json obstructions = Json::array();
  for (const Obstruction& o : a.obstructions) {
    Json j;
    j["kind"] = to_string(o.kind);
    if (o.kind == ObstructionKind::gamma_plus) j["component"] = o.component;
    j["members"] = o.members;
    j["crucial"] = o.crucial;
    obstructions.push_back(std::move(j));
  }
  out["obstructions"] = std::move(obstructions);

  Json labels = Json::array();
  for (PointLabel l : a.labels) labels.push_back(to_string(l));
  out["labels"] = std::move(labels);

  if (a.partitioned) {
    out["class_count"] = a.class_count;
    out["class_size"] = a.class_size;
    Json home = Json::array();
    for (CellId c : a.home_cell) home.push_back(c == kNoCell ? Json(nullptr) : Json(c));
    out["home_cell"] = std::move(home);
  }
  return write_object(out, {"properties", "obstructions"});
}

std::string experiment_to_json(const ExperimentConfig& config, const std::vector<ExperimentRecord>& records) {
  Json out;
  out["regime"] = to_string(config.regime);
  out["K"] = config.k_const;
  out["p"] = config.p;
  out["ns"] = config.ns;
  out["seeds"] = config.seeds;
  out["base_seed"] = config.base_seed;
  out["time_budget_s"] = config.time_budget_s;
  switch (config.regime) {
    case Regime::dense:
      out["granularity"] = config.dense.granularity;
      out["slot_fraction"] = config.dense.slot_fraction;
      out["part_fraction"] = config.dense.part_fraction;
      out["plan"] = config.dense.plan == PhasePlan::single_parts ? "single_parts" : "part_pairs";
      break;
    case Regime::percolated:
      out["granularity"] = config.percolated.granularity;
      out["slot_fraction"] = config.percolated.slot_fraction;
      out["part_fraction"] = config.percolated.part_fraction;
      out["team_constant"] = config.percolated.team_constant;
      out["team_cap_fraction"] = config.percolated.team_cap_fraction;
      out["cover"] = config.percolated.cover == SessionCover::path_step ? "path_step" : "grid_four";
      {
        // Exponent e with p^2 n r^2 = n^e; the matching lower bound needs e > 1/2.
        Json exponents = Json::array();
        for (std::size_t n : config.ns) {
          if (n < 3) continue;
          const double r = regime_radius(config.regime, n, config.k_const, config.p);
          const double nd = static_cast<double>(n);
          exponents.push_back({{"n", n}, {"exponent", std::log(config.p * config.p * nd * r * r) / std::log(nd)}});
        }
        out["density_exponents"] = std::move(exponents);
      }
      break;
    case Regime::sparse:
      out["eta"] = config.structure.eta;
      out["delta"] = config.structure.delta;
      out["separation_factor"] = config.structure.separation_factor;
      out["class_size"] = config.partition.class_size;
      out["capacity_fraction"] = config.sparse.capacity_fraction;
      out["group_size"] = config.sparse.group_size;
      break;
  }
  Json errors = Json::array();
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].error.empty()) continue;
    Json e;
    e["row"] = i;
    e["n"] = records[i].n;
    e["seed"] = records[i].seed;
    e["error"] = records[i].error;
    errors.push_back(std::move(e));
  }
  out["errors"] = std::move(errors);
  return write_object(out, {"errors"});
}

}  // namespace acqlab
