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

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "qdse/dse/dse.hpp"

using namespace qdse;
using namespace qdse::dse;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = QDSE_SOURCE_DIR;

std::string minimal(const std::string& extra = "") {
  return R"({"benchmarks": ["ghz:4"], "device": {"topologies": [{"kind": "sycamore", "rows": 3, "cols": 3}]})" +
         extra + "}";
}

std::string config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string small_sweep() {
  return R"({
    "benchmarks": ["ghz:5", "qft:4"],
    "device": {"topologies": [{"kind": "heavy_hex", "rows": 2, "cols": 2}], "densities": ["base", 0.2, 0.5]},
    "compiler": {"layouts": ["dense"], "routings": ["sabre", "stochastic"], "stochastic_trials": 4},
    "seeds": [7]
  })";
}

struct CliResult {
  int code;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(QDSE_DSE_BINARY) + " " + args + " 2>/dev/null";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe.release());
  return {WEXITSTATUS(status), out};
}

fs::path temp_dir() {
  const fs::path d = fs::temp_directory_path() / ("qdse_dse_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

void write(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

}  // namespace

TEST(config, minimal_defaults) {
  const SweepConfig cfg = parse_config(minimal());
  ASSERT_EQ(cfg.benchmarks.size(), 1u);
  EXPECT_EQ(cfg.benchmarks[0].label, "ghz:4");
  EXPECT_EQ(cfg.topologies[0].label, "sycamore(3x3)");
  ASSERT_EQ(cfg.densities.size(), 1u);
  EXPECT_EQ(cfg.densities[0].label(), "base");
  EXPECT_EQ(cfg.noise_models.size(), 5u);
  EXPECT_EQ(cfg.layouts, std::vector<LayoutMethod>{LayoutMethod::Sabre});
  EXPECT_EQ(cfg.levels, std::vector<int>{1});
  EXPECT_EQ(cfg.seeds, std::vector<std::uint64_t>{1});
  EXPECT_EQ(cfg.num_points(), 1u);
}

TEST(config, rejects_out_of_range_density) {
  const std::string err = config_error(R"({"benchmarks": ["ghz:4"], "device": {"topologies": [{"kind": "sycamore",
      "rows": 3, "cols": 3}], "densities": [0.2, 1.2]}})");
  EXPECT_NE(err.find("device.densities[1]"), std::string::npos) << err;
  EXPECT_NE(config_error(R"({"benchmarks": ["ghz:4"], "device": {"topologies": [{"kind": "sycamore",
      "rows": 3, "cols": 3}], "densities": [0.5, 0.2]}})"), "");
  EXPECT_NE(config_error(R"({"benchmarks": ["ghz:4"], "device": {"topologies": [{"kind": "sycamore",
      "rows": 3, "cols": 3}], "densities": [0.5, "base"]}})"), "");
}

TEST(config, names_the_offending_field) {
  const std::string err = config_error(minimal(R"(, "compiler": {"layouts": ["sabre", "magic"]})"));
  EXPECT_NE(err.find("compiler.layouts[1]"), std::string::npos) << err;
  EXPECT_NE(err.find("magic"), std::string::npos) << err;
  EXPECT_NE(config_error(minimal(R"(, "compiler": {"levels": [4]})")).find("compiler.levels[0]"), std::string::npos);
  EXPECT_NE(config_error(minimal(R"(, "compiler": {"setups": [6]})")).find("compiler.setups[0]"), std::string::npos);
  EXPECT_NE(config_error(minimal(R"(, "noise": {"models": ["cosmic"]})")).find("noise.models[0]"), std::string::npos);
  EXPECT_NE(config_error(minimal(R"(, "metrics": {"k": 1.5})")).find("metrics"), std::string::npos);
  EXPECT_NE(config_error(minimal(R"(, "workers": 0)")).find("workers"), std::string::npos);
}

TEST(config, unknown_keys_are_errors) {
  EXPECT_NE(config_error(minimal(R"(, "sedes": [1])")).find("sedes"), std::string::npos);
  EXPECT_NE(config_error(minimal(R"(, "compiler": {"level": [1]})")).find("compiler.level"), std::string::npos);
  EXPECT_NE(config_error(R"({"benchmarks": ["ghz:4"], "device": {"topologies": [{"kind": "sycamore", "rows": 3,
      "cols": 3, "crop_to": 4}]}})"), "");
}

TEST(config, parse_errors_carry_line_and_column) {
  const std::string err = config_error("{\n  \"benchmarks\": [\"ghz:4\",]\n}");
  EXPECT_NE(err.find("line 2"), std::string::npos) << err;
  EXPECT_NE(err.find("column"), std::string::npos) << err;
}

TEST(config, bad_benchmarks_and_topologies) {
  EXPECT_NE(config_error(R"({"benchmarks": ["nope:3"], "device": {"topologies": [{"kind": "sycamore", "rows": 2,
      "cols": 2}]}})").find("benchmarks[0]"), std::string::npos);
  EXPECT_NE(config_error(R"({"benchmarks": ["missing.qasm"], "device": {"topologies": [{"kind": "sycamore",
      "rows": 2, "cols": 2}]}})").find("benchmarks[0]"), std::string::npos);
  EXPECT_NE(config_error(R"({"benchmarks": ["ghz:4"], "device": {"topologies": [{"kind": "torus"}]}})")
                .find("device.topologies[0].kind"),
            std::string::npos);
  EXPECT_NE(config_error(R"({"benchmarks": ["ghz:4"]})"), "");
  EXPECT_NE(config_error(R"({"benchmarks": [], "device": {"topologies": [{"kind": "sycamore", "rows": 2,
      "cols": 2}]}})"), "");
}

TEST(config, device_overrides) {
  const SweepConfig cfg = parse_config(R"({"benchmarks": ["ghz:4"], "device": {
      "topologies": [{"kind": "sycamore", "rows": 2, "cols": 2}],
      "native_gates": "compile", "f2q": 0.99, "t1": 80, "t2": [50, 60, 70, 80],
      "edge_fidelity": [[0, 1, 0.95]], "durations": {"cx": 0.4}, "crosstalk": {"r_max": 1.5}}})");
  const DeviceSpec dev = cfg.device.build(std::make_shared<const CouplingGraph>(sycamore_grid(2, 2)));
  EXPECT_TRUE(dev.native.contains(GateKind::CX));
  EXPECT_DOUBLE_EQ(dev.f2q, 0.99);
  EXPECT_DOUBLE_EQ(dev.t1_of(3), 80.0);
  EXPECT_DOUBLE_EQ(dev.t2_of(2), 70.0);
  EXPECT_DOUBLE_EQ(dev.fidelity(make_gate(GateKind::CX, {1, 0})), 0.95);
  EXPECT_DOUBLE_EQ(dev.duration_of(GateKind::CX), 0.4);
  EXPECT_DOUBLE_EQ(dev.xtalk.r_max, 1.5);
  // Per-qubit lists must match the device size.
  EXPECT_NE(config_error(R"({"benchmarks": ["ghz:4"], "device": {"topologies": [{"kind": "sycamore", "rows": 2,
      "cols": 2}], "t1": [1, 2, 3]}})"), "");
}

TEST(config, shipped_configs_load) {
  const SweepConfig def = load_config(kSource / "configs" / "default_sweep.json");
  EXPECT_EQ(def.benchmarks.size(), 18u);
  EXPECT_EQ(def.num_points(), 18u * 7u * 3u * 2u * 2u * 1u * 3u);
  const SweepConfig ex = load_config(kSource / "configs" / "example_sweep.json");
  EXPECT_EQ(ex.benchmarks.back().label, "ghz3.qasm");
  const Circuit& ghz = ex.benchmarks.back().circuit;
  EXPECT_EQ(ghz.num_clbits(), 3);
  ASSERT_EQ(ghz.size(), 6u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(ghz[i], generate("ghz:3")[i]);
  EXPECT_THROW(load_config(kSource / "configs" / "absent.json"), ConfigError);
}

TEST(sweep, grid_product_and_order) {
  const SweepConfig cfg = parse_config(small_sweep());
  ASSERT_EQ(cfg.num_points(), 12u);
  const auto records = run_sweep(cfg);
  ASSERT_EQ(records.size(), 12u);
  EXPECT_FALSE(has_failures(records));
  std::set<std::tuple<std::string, std::string, std::string>> axes;
  for (const auto& r : records) {
    EXPECT_TRUE(r.error.empty()) << r.error;
    axes.insert({r.benchmark, r.density, r.routing});
    EXPECT_EQ(r.seed, 7u);
    EXPECT_EQ(r.layout, "dense");
    ASSERT_TRUE(r.f_after && r.f_before && r.cost_improvement && r.f_shared_qubit && r.f_thermal);
    EXPECT_GT(*r.f_after, 0.0);
    EXPECT_LE(*r.f_after, *r.f_before + 1e-12);
    EXPECT_EQ(*r.f_after, *r.f_depolarizing);
    EXPECT_EQ(r.num_qubits, heavy_hex_size(2, 2));
  }
  EXPECT_EQ(axes.size(), 12u);
  // Benchmark is the slowest axis, routing the fastest of those varied here.
  EXPECT_EQ(records[0].benchmark, "ghz:5");
  EXPECT_EQ(records[0].density, "base");
  EXPECT_EQ(records[0].routing, "sabre");
  EXPECT_EQ(records[1].routing, "stochastic");
  EXPECT_EQ(records[2].density, "0.2");
  EXPECT_EQ(records[6].benchmark, "qft:4");
  // Densified devices reach their targets and nest.
  EXPECT_GE(records[2].actual_density, 0.2);
  EXPECT_GE(records[4].actual_density, 0.5);
  EXPECT_LT(records[0].num_edges, records[2].num_edges);
}

TEST(sweep, worker_count_does_not_change_output) {
  const SweepConfig cfg = parse_config(small_sweep());
  const std::string one = to_csv(run_sweep(cfg, {1, false}));
  EXPECT_EQ(one, to_csv(run_sweep(cfg, {4, false})));
  EXPECT_EQ(one, to_csv(run_sweep(cfg, {1, false})));
}

TEST(sweep, global_seed_changes_results) {
  SweepConfig cfg = parse_config(small_sweep());
  const auto a = run_sweep(cfg);
  cfg.global_seed = 99;
  const auto b = run_sweep(cfg);
  EXPECT_NE(to_csv(a), to_csv(b));
}

TEST(sweep, failing_points_record_errors) {
  // Density 0.01 lies below the base density of the 2x2 grid (4/6).
  const SweepConfig cfg = parse_config(R"({"benchmarks": ["ghz:3", "ghz:5"], "device": {"topologies":
      [{"kind": "sycamore", "rows": 2, "cols": 2}], "densities": ["base", 0.01]}})");
  const auto records = run_sweep(cfg);
  ASSERT_EQ(records.size(), 4u);
  EXPECT_TRUE(has_failures(records));
  EXPECT_TRUE(records[0].error.empty());
  EXPECT_NE(records[1].error.find("below the base density"), std::string::npos);
  // ghz:5 does not fit on four qubits.
  EXPECT_FALSE(records[2].error.empty());
  EXPECT_FALSE(records[2].f_after.has_value());
}

TEST(results, csv_and_json_round_trip) {
  auto records = run_sweep(parse_config(small_sweep()));
  records[3].error = "odd, \"quoted\"\nvalue";
  records[4].f_proximity.reset();
  const std::string csv = to_csv(records);
  const auto back = parse_csv(csv);
  ASSERT_EQ(back.size(), records.size());
  EXPECT_EQ(to_csv(back), csv);
  EXPECT_EQ(back[3].error, records[3].error);
  EXPECT_FALSE(back[4].f_proximity.has_value());
  EXPECT_EQ(from_json(to_json(records)), records);
}

TEST(results, column_order) {
  const std::string csv = to_csv(std::vector<ResultRecord>(1));
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "benchmark,topology,density,layout,routing,opt_level,setup,scheduling,seed,num_qubits,num_edges,"
            "actual_density,logical_qubits,swaps_added,gates_before,gates_after,depth_before,depth_after,"
            "n1q_before,n2q_before,n1q_after,n2q_after,base_fidelity,f_shared_qubit,f_simultaneous,f_proximity,"
            "f_thermal,f_depolarizing,f_before,f_after,gate_overhead,depth_overhead,fidelity_decrease,"
            "cost_improvement,wall_ms,error");
  EXPECT_THROW(to_csv({}), std::invalid_argument);
  EXPECT_THROW(parse_csv("benchmark,bogus\nx,y\n"), std::invalid_argument);
  EXPECT_THROW(parse_csv("benchmark,seed\nx\n"), std::invalid_argument);
  EXPECT_THROW(parse_csv("benchmark,seed\nx,1.5\n"), std::invalid_argument);
}

namespace {

ResultRecord rec(std::string bench, std::string routing, int level, std::string layout, std::uint64_t seed,
                 double ci) {
  ResultRecord r;
  r.benchmark = std::move(bench);
  r.topology = "t";
  r.density = "base";
  r.scheduling = "alap";
  r.routing = std::move(routing);
  r.opt_level = level;
  r.layout = std::move(layout);
  r.seed = seed;
  r.cost_improvement = ci;
  r.swaps_added = static_cast<std::int64_t>(ci * 10);
  return r;
}

}  // namespace

TEST(summary, best_and_worst_with_medians_and_ties) {
  std::vector<ResultRecord> rs{
      rec("a", "sabre", 1, "dense", 1, 0.9), rec("a", "sabre", 1, "dense", 2, 0.7),
      rec("a", "sabre", 1, "dense", 3, 0.8),  // median 0.8
      rec("a", "stochastic", 1, "dense", 1, 0.6),
      rec("a", "stochastic", 2, "sabre", 1, 0.6),
      rec("b", "sabre", 1, "dense", 1, 1.0),
      rec("b", "stochastic", 1, "dense", 1, 1.0),
      rec("c", "sabre", 1, "dense", 1, 0.5),  // single combination
  };
  ResultRecord failed = rec("b", "stochastic", 2, "sabre", 1, 9.0);
  failed.error = "boom";
  rs.push_back(failed);

  const FrequencyTable t = summarize_best_worst(rs, "cost_improvement");
  EXPECT_TRUE(t.higher_is_better);
  EXPECT_EQ(t.groups, 2u);
  EXPECT_EQ(t.skipped_groups, 1u);
  EXPECT_DOUBLE_EQ(t.best.at("sabre|1|dense"), 1.5);
  EXPECT_DOUBLE_EQ(t.best.at("stochastic|1|dense"), 0.5);
  EXPECT_DOUBLE_EQ(t.worst.at("stochastic|1|dense"), 1.0);
  EXPECT_DOUBLE_EQ(t.worst.at("stochastic|2|sabre"), 0.5);
  EXPECT_EQ(t.worst.count("sabre|1|dense"), 1u);  // tie in group b

  const FrequencyTable s = summarize_best_worst(rs, "swaps_added");
  EXPECT_FALSE(s.higher_is_better);
  EXPECT_DOUBLE_EQ(s.best.at("stochastic|1|dense"), 1.0);
  EXPECT_DOUBLE_EQ(s.worst.at("sabre|1|dense"), 1.5);

  EXPECT_THROW(summarize_best_worst(rs, "benchmark"), std::invalid_argument);
  EXPECT_THROW(summarize_best_worst(rs, "no_such"), std::invalid_argument);
  EXPECT_THROW(summarize_best_worst(rs, "seed"), std::invalid_argument);
}

TEST(cli, list_benchmarks) {
  const CliResult r = run_cli("list-benchmarks");
  EXPECT_EQ(r.code, 0);
  std::string expect;
  for (const auto& id : list_suite()) expect += to_string(id) + "\n";
  EXPECT_EQ(r.out, expect);
}

TEST(cli, exit_codes) {
  const fs::path dir = temp_dir();
  write(dir / "good.json", small_sweep());
  write(dir / "bad.json", minimal(R"(, "compiler": {"layouts": ["magic"]})"));
  write(dir / "partial.json", R"({"benchmarks": ["ghz:3", "ghz:5"], "device": {"topologies":
      [{"kind": "sycamore", "rows": 2, "cols": 2}]}})");
  const std::string out = (dir / "out.csv").string();

  EXPECT_EQ(run_cli("run " + (dir / "good.json").string() + " --out " + out).code, 0);
  const auto records = read_csv(out);
  EXPECT_EQ(records.size(), 12u);
  EXPECT_EQ(to_csv(records), to_csv(run_sweep(parse_config(small_sweep()))));

  EXPECT_EQ(run_cli("run " + (dir / "bad.json").string() + " --out " + out).code, 1);
  EXPECT_EQ(run_cli("run " + (dir / "missing.json").string() + " --out " + out).code, 1);
  EXPECT_EQ(run_cli("run").code, 1);
  EXPECT_EQ(run_cli("frobnicate").code, 1);
  EXPECT_EQ(run_cli("run " + (dir / "partial.json").string() + " --out " + out).code, 2);
  EXPECT_EQ(read_csv(out).size(), 2u);

  const CliResult summary = run_cli("summarize " + out + " --metric depth_after");
  EXPECT_EQ(summary.code, 0);
  EXPECT_NE(summary.out.find("lower is better"), std::string::npos) << summary.out;
  EXPECT_EQ(run_cli("summarize " + out + " --metric layout").code, 1);

  const CliResult describe = run_cli("describe-device " + (dir / "good.json").string());
  EXPECT_EQ(describe.code, 0);
  EXPECT_NE(describe.out.find("heavy_hex(2x2),0.5,7,35,"), std::string::npos) << describe.out;
  fs::remove_all(dir);
}
