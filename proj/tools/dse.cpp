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

// dse: sweep driver.
//
//   dse run <config> --out results.csv [--json results.json] [--workers N] [--seed S] [--timing]
//   dse list-benchmarks
//   dse describe-device <config>
//   dse summarize <results.csv> [--metric cost_improvement]
//
// Exit codes: 0 success, 1 configuration or usage error, 2 some sweep points
// failed (their error column is filled).

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qdse/bench.hpp"
#include "qdse/dse/dse.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitPartial = 2;

int cmd_run(const std::string& config_path, const std::string& out, const std::string& json_out,
            std::optional<int> workers, std::optional<std::uint64_t> seed, bool timing) {
  qdse::dse::SweepConfig cfg;
  try {
    cfg = qdse::dse::load_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (seed) cfg.global_seed = *seed;
  qdse::dse::SweepOptions opts;
  opts.workers = workers.value_or(cfg.workers);
  opts.timing = timing;
  const auto records = qdse::dse::run_sweep(cfg, opts);
  try {
    qdse::dse::write_csv(records, out);
    if (!json_out.empty()) qdse::dse::write_json(records, json_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  std::size_t failed = 0;
  for (const auto& r : records) failed += r.error.empty() ? 0 : 1;
  std::cerr << records.size() << " records written to " << out;
  if (failed) std::cerr << " (" << failed << " with errors)";
  std::cerr << "\n";
  return failed ? kExitPartial : kExitOk;
}

int cmd_list() {
  for (const auto& id : qdse::list_suite()) std::cout << qdse::to_string(id) << "\n";
  return kExitOk;
}

int cmd_describe(const std::string& config_path) {
  try {
    const auto cfg = qdse::dse::load_config(config_path);
    const auto cells = qdse::dse::build_devices(cfg);
    std::cout << "topology,density,seed,qubits,edges,actual_density,diameter,error\n";
    std::size_t i = 0;
    for (const auto& top : cfg.topologies) {
      for (const auto& d : cfg.densities) {
        for (std::uint64_t s : cfg.seeds) {
          const auto& cell = cells[i++];
          std::cout << top.label << "," << d.label() << "," << s << ",";
          if (cell.device) {
            const auto& g = cell.device->coupling();
            char dens[32];
            std::snprintf(dens, sizeof dens, "%.9g", g.num_qubits() >= 2 ? qdse::connectivity_density(g) : 1.0);
            std::cout << g.num_qubits() << "," << g.num_edges() << "," << dens << "," << g.distances().diameter()
                      << ",\n";
          } else {
            std::cout << ",,,," << cell.error << "\n";
          }
        }
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}

int cmd_summarize(const std::string& csv_path, const std::string& metric) {
  try {
    const auto records = qdse::dse::read_csv(csv_path);
    const auto table = qdse::dse::summarize_best_worst(records, metric);
    std::cout << "# metric " << table.metric << " (" << (table.higher_is_better ? "higher" : "lower")
              << " is better), " << table.groups << " groups";
    if (table.skipped_groups) std::cout << ", " << table.skipped_groups << " skipped";
    std::cout << "\nkind,combination,count\n";
    for (const auto& [label, count] : table.best) std::cout << "best," << label << "," << count << "\n";
    for (const auto& [label, count] : table.worst) std::cout << "worst," << label << "," << count << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Design-space exploration sweeps for quantum circuit compilation"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a sweep described by a config file");
  std::string config_path;
  std::string out = "results.csv";
  std::string json_out;
  std::optional<int> workers;
  std::optional<std::uint64_t> seed;
  bool timing = false;
  run->add_option("config", config_path, "Sweep config (JSON)")->required();
  run->add_option("--out", out, "CSV output path");
  run->add_option("--json", json_out, "Optional JSON output path");
  run->add_option("--workers", workers, "Worker threads (default: config value)")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "Override the global seed");
  run->add_flag("--timing", timing, "Record wall-clock time per point (output is then not reproducible)");

  auto* list = app.add_subcommand("list-benchmarks", "Print the default benchmark suite");

  auto* describe = app.add_subcommand("describe-device", "Print device sizes for every topology/density point");
  std::string describe_path;
  describe->add_option("config", describe_path, "Sweep config (JSON)")->required();

  auto* summarize = app.add_subcommand("summarize", "Best/worst combination frequencies from a results CSV");
  std::string csv_path;
  std::string metric = "cost_improvement";
  summarize->add_option("results", csv_path, "Results CSV")->required();
  summarize->add_option("--metric", metric, "Metric column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (*run) return cmd_run(config_path, out, json_out, workers, seed, timing);
  if (*list) return cmd_list();
  if (*describe) return cmd_describe(describe_path);
  if (*summarize) return cmd_summarize(csv_path, metric);
  return kExitConfig;
}
