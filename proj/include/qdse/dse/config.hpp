// Copyright 2026 The qdse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Sweep configuration: a JSON document validated strictly (unknown keys are
// errors). See README.md for the schema.

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "qdse/bench.hpp"
#include "qdse/circuit.hpp"
#include "qdse/device.hpp"
#include "qdse/metrics.hpp"
#include "qdse/noise.hpp"
#include "qdse/qasm.hpp"
#include "qdse/topology.hpp"
#include "qdse/transpile.hpp"

namespace qdse::dse {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HeavyHexSpec {
  int rows = 1;
  int cols = 1;
  std::optional<int> crop_to;
};

struct GridSpec {
  int rows = 1;
  int cols = 1;
};

struct EdgeListSpec {
  std::string path;
};

struct TopologySpec {
  std::variant<HeavyHexSpec, GridSpec, EdgeListSpec> shape;
  std::string label;
};

/// A density axis value; nullopt means the unmodified base graph.
struct DensityPoint {
  std::optional<double> target;

  std::string label() const {
    if (!target) return "base";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", *target);
    return buf;
  }
};

struct BenchmarkEntry {
  std::string label;
  Circuit circuit;
};

/// Everything needed to turn a coupling graph into a DeviceSpec.
struct DeviceTemplate {
  GateSet native = device_basis();
  double f1q = kDefaultF1q;
  double f2q = kDefaultF2q;
  GateTable gate_fidelity{};
  std::vector<std::pair<Edge, double>> edge_fidelity;
  std::vector<double> t1;  // one entry broadcasts to every qubit
  std::vector<double> t2;
  GateTable duration{};
  GateTable depol{};
  CrosstalkParams xtalk;

  DeviceSpec build(std::shared_ptr<const CouplingGraph> graph) const {
    DeviceSpec dev = make_device(std::move(graph), native);
    dev.f1q = f1q;
    dev.f2q = f2q;
    dev.gate_fidelity = gate_fidelity;
    for (const auto& [e, f] : edge_fidelity) {
      if (e.v >= dev.num_qubits() || !dev.coupling().adjacent(e.u, e.v)) {
        throw std::invalid_argument("edge fidelity given for a pair that is not a device edge");
      }
      dev.edge_fidelity[e] = f;
    }
    const auto n = static_cast<std::size_t>(dev.num_qubits());
    auto per_qubit = [&](const std::vector<double>& v, double& fallback, std::vector<double>& out, const char* what) {
      if (v.size() == 1) {
        fallback = v[0];
      } else if (!v.empty()) {
        if (v.size() != n) throw std::invalid_argument(std::string(what) + " list length does not match the device");
        out = v;
      }
    };
    per_qubit(t1, dev.default_t1, dev.t1, "t1");
    per_qubit(t2, dev.default_t2, dev.t2, "t2");
    for (std::size_t k = 0; k < kGateKindCount; ++k) {
      if (duration[k]) dev.duration[k] = duration[k];
      if (depol[k]) dev.depol[k] = depol[k];
    }
    dev.xtalk = xtalk;
    dev.validate();
    return dev;
  }
};

struct SweepConfig {
  std::vector<BenchmarkEntry> benchmarks;
  std::vector<TopologySpec> topologies;
  std::vector<DensityPoint> densities;
  DeviceTemplate device;
  std::vector<NoiseModel> noise_models;
  NoiseModel fidelity_model = NoiseModel::Depolarizing;
  std::vector<LayoutMethod> layouts{LayoutMethod::Sabre};
  std::vector<RoutingMethod> routings{RoutingMethod::Sabre};
  std::vector<int> levels{1};
  std::vector<int> setups{0};
  std::vector<SchedulePolicy> schedulings{SchedulePolicy::ALAP};
  int sabre_trials = 4;
  int stochastic_trials = 20;
  SabreParams sabre;
  MetricParams metrics;
  std::vector<std::uint64_t> seeds{1};
  std::uint64_t global_seed = 0;
  int workers = 1;
  std::filesystem::path base_dir;  // relative paths resolve against this

  std::size_t num_points() const {
    return benchmarks.size() * topologies.size() * densities.size() * layouts.size() * routings.size() *
           levels.size() * setups.size() * schedulings.size() * seeds.size();
  }
};

inline CouplingGraph build_topology(const TopologySpec& spec, const std::filesystem::path& base_dir) {
  if (const auto* h = std::get_if<HeavyHexSpec>(&spec.shape)) return heavy_hex(h->rows, h->cols, h->crop_to);
  if (const auto* g = std::get_if<GridSpec>(&spec.shape)) return sycamore_grid(g->rows, g->cols);
  const auto& e = std::get<EdgeListSpec>(spec.shape);
  std::filesystem::path p(e.path);
  if (p.is_relative()) p = base_dir / p;
  return read_edge_list_file(p.string());
}

namespace config_detail {

using nlohmann::json;

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

inline void check_keys(const json& obj, const std::string& where, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(where.empty() ? key : where + "." + key, "unknown key");
    }
  }
}

inline std::string join(const std::string& where, std::string_view key) {
  return where.empty() ? std::string(key) : where + "." + std::string(key);
}

inline std::string at(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

inline double get_number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<double>();
}

inline std::int64_t get_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  return v.get<std::int64_t>();
}

inline std::uint64_t get_uint(const json& v, const std::string& where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    fail(where, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

inline std::string get_string(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string");
  return v.get<std::string>();
}

inline const json& get_array(const json& v, const std::string& where, bool non_empty = true) {
  if (!v.is_array()) fail(where, "expected an array");
  if (non_empty && v.empty()) fail(where, "must not be empty");
  return v;
}

template <typename T, typename Parse>
std::vector<T> enum_list(const json& v, const std::string& where, Parse parse, const char* what) {
  std::vector<T> out;
  const json& arr = get_array(v, where);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string s = get_string(arr[i], at(where, i));
    const auto parsed = parse(s);
    if (!parsed) fail(at(where, i), std::string("unknown ") + what + " '" + s + "'");
    out.push_back(*parsed);
  }
  return out;
}

inline std::vector<int> int_list(const json& v, const std::string& where, int lo, int hi, const char* what) {
  std::vector<int> out;
  const json& arr = get_array(v, where);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto x = get_int(arr[i], at(where, i));
    if (x < lo || x > hi) fail(at(where, i), std::string("invalid ") + what + " " + std::to_string(x));
    out.push_back(static_cast<int>(x));
  }
  return out;
}

inline GateKind gate_key(const std::string& name, const std::string& where) {
  const auto k = gate_kind_from_name(name);
  if (!k) fail(where, "unknown gate '" + name + "'");
  return *k;
}

inline GateTable gate_table(const json& v, const std::string& where) {
  if (!v.is_object()) fail(where, "expected an object of gate name to value");
  GateTable t{};
  for (const auto& [key, value] : v.items()) {
    t[static_cast<std::size_t>(gate_key(key, join(where, key)))] = get_number(value, join(where, key));
  }
  return t;
}

inline std::vector<double> time_list(const json& v, const std::string& where) {
  if (v.is_number()) return {get_number(v, where)};
  std::vector<double> out;
  const json& arr = get_array(v, where);
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(get_number(arr[i], at(where, i)));
  if (out.size() == 1) fail(where, "per-qubit lists need one entry per qubit");
  return out;
}

inline TopologySpec parse_topology(const json& v, const std::string& where) {
  if (!v.is_object() || !v.contains("kind")) fail(where, "topology needs a 'kind'");
  const std::string kind = get_string(v["kind"], join(where, "kind"));
  TopologySpec spec;
  auto positive = [&](const char* key) {
    if (!v.contains(key)) fail(join(where, key), "missing");
    const auto x = get_int(v[key], join(where, key));
    if (x < 1) fail(join(where, key), "must be at least 1");
    return static_cast<int>(x);
  };
  if (kind == "heavy_hex") {
    check_keys(v, where, {"kind", "rows", "cols", "crop_to"});
    HeavyHexSpec h{positive("rows"), positive("cols"), std::nullopt};
    if (v.contains("crop_to")) h.crop_to = positive("crop_to");
    spec.label = "heavy_hex(" + std::to_string(h.rows) + "x" + std::to_string(h.cols) +
                 (h.crop_to ? ";" + std::to_string(*h.crop_to) : std::string()) + ")";
    spec.shape = h;
  } else if (kind == "sycamore") {
    check_keys(v, where, {"kind", "rows", "cols"});
    GridSpec g{positive("rows"), positive("cols")};
    spec.label = "sycamore(" + std::to_string(g.rows) + "x" + std::to_string(g.cols) + ")";
    spec.shape = g;
  } else if (kind == "edge_list") {
    check_keys(v, where, {"kind", "path"});
    if (!v.contains("path")) fail(join(where, "path"), "missing");
    EdgeListSpec e{get_string(v["path"], join(where, "path"))};
    spec.label = "edge_list(" + std::filesystem::path(e.path).filename().string() + ")";
    spec.shape = e;
  } else {
    fail(join(where, "kind"), "unknown topology kind '" + kind + "'");
  }
  return spec;
}

inline std::vector<DensityPoint> parse_densities(const json& v, const std::string& where) {
  std::vector<DensityPoint> out;
  const json& arr = get_array(v, where);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (arr[i].is_string()) {
      if (arr[i].get<std::string>() != "base") fail(at(where, i), "expected a number or \"base\"");
      if (i != 0) fail(at(where, i), "\"base\" must come first");
      out.push_back({std::nullopt});
      continue;
    }
    const double d = get_number(arr[i], at(where, i));
    if (!(d > 0.0 && d <= 1.0)) fail(at(where, i), "density must lie in (0, 1]");
    if (!out.empty() && out.back().target && d <= *out.back().target) {
      fail(at(where, i), "densities must be strictly ascending");
    }
    out.push_back({d});
  }
  return out;
}

inline GateSet parse_native(const json& v, const std::string& where) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "device") return device_basis();
    if (s == "compile") return compile_basis();
    fail(where, "expected \"device\", \"compile\" or a list of gate names");
  }
  GateSet set;
  const json& arr = get_array(v, where);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const GateKind k = gate_key(get_string(arr[i], at(where, i)), at(where, i));
    if (k == GateKind::Measure || k == GateKind::Barrier) fail(at(where, i), "not a gate");
    set.insert(k);
  }
  if (!set.includes(device_basis()) && !set.includes(compile_basis())) {
    fail(where, "native gates must include the device or the compile basis");
  }
  return set;
}

inline void parse_device(const json& v, const std::string& where, SweepConfig& cfg) {
  check_keys(v, where,
             {"topologies", "densities", "native_gates", "f1q", "f2q", "gate_fidelity", "edge_fidelity", "t1", "t2",
              "durations", "depolarization", "crosstalk"});
  if (!v.contains("topologies")) fail(join(where, "topologies"), "missing");
  const json& tops = get_array(v["topologies"], join(where, "topologies"));
  for (std::size_t i = 0; i < tops.size(); ++i) {
    cfg.topologies.push_back(parse_topology(tops[i], at(join(where, "topologies"), i)));
  }
  cfg.densities = v.contains("densities") ? parse_densities(v["densities"], join(where, "densities"))
                                          : std::vector<DensityPoint>{{std::nullopt}};
  DeviceTemplate& d = cfg.device;
  if (v.contains("native_gates")) d.native = parse_native(v["native_gates"], join(where, "native_gates"));
  if (v.contains("f1q")) d.f1q = get_number(v["f1q"], join(where, "f1q"));
  if (v.contains("f2q")) d.f2q = get_number(v["f2q"], join(where, "f2q"));
  if (v.contains("gate_fidelity")) d.gate_fidelity = gate_table(v["gate_fidelity"], join(where, "gate_fidelity"));
  if (v.contains("edge_fidelity")) {
    const std::string w = join(where, "edge_fidelity");
    const json& arr = get_array(v["edge_fidelity"], w, false);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const json& e = arr[i];
      if (!e.is_array() || e.size() != 3) fail(at(w, i), "expected [u, v, fidelity]");
      const auto a = get_int(e[0], at(w, i));
      const auto b = get_int(e[1], at(w, i));
      if (a < 0 || b < 0 || a == b) fail(at(w, i), "invalid edge");
      d.edge_fidelity.push_back({Edge(static_cast<int>(a), static_cast<int>(b)), get_number(e[2], at(w, i))});
    }
  }
  if (v.contains("t1")) d.t1 = time_list(v["t1"], join(where, "t1"));
  if (v.contains("t2")) d.t2 = time_list(v["t2"], join(where, "t2"));
  if (v.contains("durations")) d.duration = gate_table(v["durations"], join(where, "durations"));
  if (v.contains("depolarization")) d.depol = gate_table(v["depolarization"], join(where, "depolarization"));
  if (v.contains("crosstalk")) {
    const std::string w = join(where, "crosstalk");
    const json& x = v["crosstalk"];
    check_keys(x, w, {"n", "k", "r_max", "single_qubit_weight"});
    if (x.contains("n")) d.xtalk.n = get_number(x["n"], join(w, "n"));
    if (x.contains("k")) d.xtalk.k = get_number(x["k"], join(w, "k"));
    if (x.contains("r_max")) d.xtalk.r_max = get_number(x["r_max"], join(w, "r_max"));
    if (x.contains("single_qubit_weight")) {
      d.xtalk.single_qubit_weight = get_number(x["single_qubit_weight"], join(w, "single_qubit_weight"));
    }
  }
}

inline void parse_compiler(const json& v, const std::string& where, SweepConfig& cfg) {
  check_keys(v, where,
             {"layouts", "routings", "levels", "setups", "scheduling", "sabre_trials", "stochastic_trials", "sabre"});
  if (v.contains("layouts")) {
    cfg.layouts = enum_list<LayoutMethod>(v["layouts"], join(where, "layouts"), parse_layout_method, "layout");
  }
  if (v.contains("routings")) {
    cfg.routings = enum_list<RoutingMethod>(v["routings"], join(where, "routings"), parse_routing_method, "routing");
  }
  if (v.contains("levels")) {
    cfg.levels = int_list(v["levels"], join(where, "levels"), 0, kMaxOptimizationLevel, "optimization level");
  }
  if (v.contains("setups")) cfg.setups = int_list(v["setups"], join(where, "setups"), 0, kMaxSetup, "setup");
  if (v.contains("scheduling")) {
    cfg.schedulings =
        enum_list<SchedulePolicy>(v["scheduling"], join(where, "scheduling"), parse_schedule_policy, "scheduling");
  }
  auto trials = [&](const char* key, int& out) {
    if (!v.contains(key)) return;
    const auto x = get_int(v[key], join(where, key));
    if (x < 1) fail(join(where, key), "must be at least 1");
    out = static_cast<int>(x);
  };
  trials("sabre_trials", cfg.sabre_trials);
  trials("stochastic_trials", cfg.stochastic_trials);
  if (v.contains("sabre")) {
    const std::string w = join(where, "sabre");
    const json& s = v["sabre"];
    check_keys(s, w, {"extended_set_size", "extended_set_weight", "decay_factor", "decay_reset_interval"});
    if (s.contains("extended_set_size")) {
      cfg.sabre.extended_set_size = static_cast<std::size_t>(get_uint(s["extended_set_size"], join(w, "extended_set_size")));
    }
    if (s.contains("extended_set_weight")) {
      cfg.sabre.extended_set_weight = get_number(s["extended_set_weight"], join(w, "extended_set_weight"));
    }
    if (s.contains("decay_factor")) cfg.sabre.decay_factor = get_number(s["decay_factor"], join(w, "decay_factor"));
    if (s.contains("decay_reset_interval")) {
      const auto x = get_int(s["decay_reset_interval"], join(w, "decay_reset_interval"));
      if (x < 1) fail(join(w, "decay_reset_interval"), "must be at least 1");
      cfg.sabre.decay_reset_interval = static_cast<int>(x);
    }
    if (cfg.sabre.decay_factor < 1.0) fail(join(w, "decay_factor"), "must be at least 1");
  }
}

inline BenchmarkEntry load_benchmark(const std::string& entry, const std::string& where,
                                     const std::filesystem::path& base_dir) {
  if (entry.size() > 5 && entry.ends_with(".qasm")) {
    std::filesystem::path p(entry);
    if (p.is_relative()) p = base_dir / p;
    try {
      return {entry, read_qasm_file(p.string())};
    } catch (const QasmError& e) {
      fail(where, std::string(e.what()));
    } catch (const std::exception& e) {
      fail(where, e.what());
    }
  }
  try {
    const BenchmarkId id = parse_benchmark_id(entry);
    return {to_string(id), generate(id)};
  } catch (const std::exception& e) {
    fail(where, e.what());
  }
}

inline std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace config_detail

/// Parses and validates a config document. `base_dir` anchors relative
/// QASM and edge-list paths.
inline SweepConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {}) {
  using namespace config_detail;
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, col] = line_col(text, byte);
    throw ConfigError("parse error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                      e.what());
  }
  SweepConfig cfg;
  cfg.base_dir = base_dir;
  check_keys(root, "", {"benchmarks", "device", "noise", "compiler", "metrics", "seeds", "global_seed", "workers"});

  if (!root.contains("benchmarks")) fail("benchmarks", "missing");
  const json& benches = get_array(root["benchmarks"], "benchmarks");
  for (std::size_t i = 0; i < benches.size(); ++i) {
    cfg.benchmarks.push_back(load_benchmark(get_string(benches[i], at("benchmarks", i)), at("benchmarks", i), base_dir));
  }

  if (!root.contains("device")) fail("device", "missing");
  parse_device(root["device"], "device", cfg);

  if (root.contains("noise")) {
    const json& n = root["noise"];
    check_keys(n, "noise", {"models", "fidelity_model"});
    if (n.contains("models")) {
      cfg.noise_models = enum_list<NoiseModel>(n["models"], "noise.models", parse_noise_model, "noise model");
    }
    if (n.contains("fidelity_model")) {
      const std::string s = get_string(n["fidelity_model"], "noise.fidelity_model");
      const auto m = parse_noise_model(s);
      if (!m) fail("noise.fidelity_model", "unknown noise model '" + s + "'");
      cfg.fidelity_model = *m;
    }
  } else {
    cfg.noise_models.assign(kAllNoiseModels.begin(), kAllNoiseModels.end());
  }

  if (root.contains("compiler")) parse_compiler(root["compiler"], "compiler", cfg);

  if (root.contains("metrics")) {
    const json& m = root["metrics"];
    check_keys(m, "metrics", {"f1q", "f2q", "k"});
    if (m.contains("f1q")) cfg.metrics.f1q = get_number(m["f1q"], "metrics.f1q");
    if (m.contains("f2q")) cfg.metrics.f2q = get_number(m["f2q"], "metrics.f2q");
    if (m.contains("k")) cfg.metrics.k = get_number(m["k"], "metrics.k");
    try {
      cfg.metrics.validate();
    } catch (const std::exception& e) {
      fail("metrics", e.what());
    }
  }

  if (root.contains("seeds")) {
    cfg.seeds.clear();
    const json& arr = get_array(root["seeds"], "seeds");
    for (std::size_t i = 0; i < arr.size(); ++i) cfg.seeds.push_back(get_uint(arr[i], at("seeds", i)));
  }
  if (root.contains("global_seed")) cfg.global_seed = get_uint(root["global_seed"], "global_seed");
  if (root.contains("workers")) {
    const auto w = get_int(root["workers"], "workers");
    if (w < 1) fail("workers", "must be at least 1");
    cfg.workers = static_cast<int>(w);
  }

  // Build each base device once so bad topology or noise tables fail here.
  for (std::size_t i = 0; i < cfg.topologies.size(); ++i) {
    try {
      cfg.device.build(std::make_shared<const CouplingGraph>(build_topology(cfg.topologies[i], base_dir)));
    } catch (const std::exception& e) {
      fail(at("device.topologies", i), e.what());
    }
  }
  return cfg;
}

inline SweepConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

}  // namespace qdse::dse
