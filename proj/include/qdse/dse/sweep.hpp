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

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qdse/decompose.hpp"
#include "qdse/dse/config.hpp"
#include "qdse/dse/results.hpp"
#include "qdse/metrics.hpp"
#include "qdse/noise.hpp"
#include "qdse/rng.hpp"
#include "qdse/topology.hpp"
#include "qdse/transpile.hpp"

namespace qdse::dse {

/// Index of one grid point along every axis, in canonical (axis-major) order:
/// benchmark, topology, density, layout, routing, level, setup, scheduling,
/// seed.
struct PointIndex {
  std::size_t benchmark, topology, density, layout, routing, level, setup, scheduling, seed;
};

inline PointIndex decode_point(const SweepConfig& cfg, std::size_t index) {
  PointIndex p{};
  auto take = [&](std::size_t& slot, std::size_t radix) {
    slot = index % radix;
    index /= radix;
  };
  take(p.seed, cfg.seeds.size());
  take(p.scheduling, cfg.schedulings.size());
  take(p.setup, cfg.setups.size());
  take(p.level, cfg.levels.size());
  take(p.routing, cfg.routings.size());
  take(p.layout, cfg.layouts.size());
  take(p.density, cfg.densities.size());
  take(p.topology, cfg.topologies.size());
  take(p.benchmark, cfg.benchmarks.size());
  return p;
}

/// Device for one (topology, density, seed) cell, or the reason it is
/// unavailable.
struct DeviceCell {
  std::shared_ptr<const DeviceSpec> device;
  std::string error;
};

/// Seed used to densify topology `t` for sweep seed `s`.
inline std::uint64_t densify_seed(std::uint64_t global_seed, std::uint64_t s, std::size_t t) {
  return mix_seed(mix_seed(global_seed, s), static_cast<std::uint64_t>(t));
}

/// Builds every device the sweep needs. Densified graphs with the same seed
/// are nested supersets across the density axis.
inline std::vector<DeviceCell> build_devices(const SweepConfig& cfg) {
  const std::size_t nd = cfg.densities.size();
  const std::size_t ns = cfg.seeds.size();
  std::vector<DeviceCell> cells(cfg.topologies.size() * nd * ns);
  for (std::size_t t = 0; t < cfg.topologies.size(); ++t) {
    const CouplingGraph base = build_topology(cfg.topologies[t], cfg.base_dir);
    const auto base_ptr = std::make_shared<const CouplingGraph>(base);
    const double base_density = base.num_qubits() >= 2 ? connectivity_density(base) : 1.0;
    for (std::size_t d = 0; d < nd; ++d) {
      for (std::size_t s = 0; s < ns; ++s) {
        DeviceCell& cell = cells[(t * nd + d) * ns + s];
        try {
          const auto& target = cfg.densities[d].target;
          std::shared_ptr<const CouplingGraph> graph = base_ptr;
          if (target) {
            if (*target < base_density - 1e-12) {
              throw std::invalid_argument("density " + cfg.densities[d].label() + " is below the base density");
            }
            graph = std::make_shared<const CouplingGraph>(
                densify(base, std::max(*target, base_density), densify_seed(cfg.global_seed, cfg.seeds[s], t)));
          }
          cell.device = std::make_shared<const DeviceSpec>(cfg.device.build(graph));
        } catch (const std::exception& e) {
          cell.error = e.what();
        }
      }
    }
  }
  return cells;
}

struct SweepOptions {
  int workers = 1;
  bool timing = false;  // wall_ms stays 0 unless set, keeping output deterministic
};

namespace sweep_detail {

inline std::optional<double>* model_slot(ResultRecord& r, NoiseModel m) {
  switch (m) {
    case NoiseModel::SharedQubit:
      return &r.f_shared_qubit;
    case NoiseModel::Simultaneous:
      return &r.f_simultaneous;
    case NoiseModel::Proximity:
      return &r.f_proximity;
    case NoiseModel::Thermal:
      return &r.f_thermal;
    case NoiseModel::Depolarizing:
      return &r.f_depolarizing;
  }
  return nullptr;
}

inline void append_error(ResultRecord& r, const std::string& what) {
  if (!r.error.empty()) r.error += "; ";
  r.error += what;
}

inline void evaluate_point(const SweepConfig& cfg, const std::vector<DeviceCell>& devices, std::size_t index,
                           ResultRecord& r) {
  const PointIndex p = decode_point(cfg, index);
  const BenchmarkEntry& bench = cfg.benchmarks[p.benchmark];
  r.benchmark = bench.label;
  r.topology = cfg.topologies[p.topology].label;
  r.density = cfg.densities[p.density].label();
  r.layout = std::string(to_string(cfg.layouts[p.layout]));
  r.routing = std::string(to_string(cfg.routings[p.routing]));
  r.opt_level = cfg.levels[p.level];
  r.setup = cfg.setups[p.setup];
  r.scheduling = std::string(to_string(cfg.schedulings[p.scheduling]));
  r.seed = cfg.seeds[p.seed];
  r.logical_qubits = bench.circuit.num_qubits();

  const DeviceCell& cell =
      devices[(p.topology * cfg.densities.size() + p.density) * cfg.seeds.size() + p.seed];
  if (!cell.device) {
    r.error = cell.error;
    return;
  }
  const DeviceSpec& dev = *cell.device;
  r.num_qubits = dev.num_qubits();
  r.num_edges = static_cast<std::int64_t>(dev.coupling().num_edges());
  r.actual_density = dev.num_qubits() >= 2 ? connectivity_density(dev.coupling()) : 1.0;

  PassConfig pc;
  pc.layout = cfg.layouts[p.layout];
  pc.routing = cfg.routings[p.routing];
  pc.opt_level = cfg.levels[p.level];
  pc.setup = cfg.setups[p.setup];
  pc.scheduling = cfg.schedulings[p.scheduling];
  pc.seed = mix_seed(cfg.global_seed, static_cast<std::uint64_t>(index));
  pc.sabre_trials = cfg.sabre_trials;
  pc.stochastic_trials = cfg.stochastic_trials;
  pc.sabre = cfg.sabre;

  const Circuit before = expand_multi_qubit(bench.circuit);
  const TranspileResult tr = transpile(bench.circuit, dev, pc);
  const Circuit& after = tr.routed.circuit;
  if (!satisfies_adjacency(after, dev.coupling())) throw std::logic_error("routed circuit violates adjacency");

  const GateCounts cb = gate_counts(before);
  const GateCounts ca = gate_counts(after);
  r.swaps_added = static_cast<std::int64_t>(tr.routed.swaps_added);
  r.gates_before = static_cast<std::int64_t>(gate_total(before));
  r.gates_after = static_cast<std::int64_t>(gate_total(after));
  r.depth_before = static_cast<std::int64_t>(depth(before));
  r.depth_after = static_cast<std::int64_t>(depth(after));
  r.n1q_before = static_cast<std::int64_t>(cb.one_qubit);
  r.n2q_before = static_cast<std::int64_t>(cb.two_qubit);
  r.n1q_after = static_cast<std::int64_t>(ca.one_qubit);
  r.n2q_after = static_cast<std::int64_t>(ca.two_qubit);
  r.base_fidelity = base_fidelity(after, dev);

  for (NoiseModel m : cfg.noise_models) {
    try {
      *model_slot(r, m) = evaluate_noise(m, after, tr.schedule, dev).total;
    } catch (const std::exception& e) {
      append_error(r, std::string(to_string(m)) + ": " + e.what());
    }
  }
  try {
    const DeviceSpec virt = virtual_all_to_all(dev, before.num_qubits());
    const Circuit logical = decompose(before, dev.native);
    r.f_before = evaluate_noise(cfg.fidelity_model, logical, schedule(logical, pc.scheduling), virt).total;
    r.f_after = evaluate_noise(cfg.fidelity_model, after, tr.schedule, dev).total;
    r.fidelity_decrease = fidelity_decrease(*r.f_before, *r.f_after);
  } catch (const std::exception& e) {
    append_error(r, std::string("fidelity_decrease: ") + e.what());
  }
  try {
    r.gate_overhead = gate_overhead(before, after);
    r.depth_overhead = depth_overhead(before, after);
    r.cost_improvement = cost_improvement(before, after, cfg.metrics);
  } catch (const std::exception& e) {
    append_error(r, e.what());
  }
}

}  // namespace sweep_detail

/// Runs every grid point. Records come back in canonical order; each point's
/// transpiler seed is mix_seed(global_seed, point index), so results do not
/// depend on the worker count.
inline std::vector<ResultRecord> run_sweep(const SweepConfig& cfg, const SweepOptions& opts = {}) {
  const std::vector<DeviceCell> devices = build_devices(cfg);
  const std::size_t total = cfg.num_points();
  std::vector<ResultRecord> records(total);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
      ResultRecord& r = records[i];
      const auto start = std::chrono::steady_clock::now();
      try {
        sweep_detail::evaluate_point(cfg, devices, i, r);
      } catch (const std::exception& e) {
        sweep_detail::append_error(r, e.what());
      }
      if (opts.timing) {
        r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(opts.workers, static_cast<int>(std::max<std::size_t>(total, 1))));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return records;
}

inline bool has_failures(const std::vector<ResultRecord>& records) {
  return std::any_of(records.begin(), records.end(), [](const ResultRecord& r) { return !r.error.empty(); });
}

}  // namespace qdse::dse
