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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qdse/circuit.hpp"
#include "qdse/decompose.hpp"
#include "qdse/device.hpp"
#include "qdse/layout.hpp"
#include "qdse/passes.hpp"
#include "qdse/rng.hpp"
#include "qdse/routing.hpp"

namespace qdse {

enum class LayoutMethod { Trivial, Dense, Sabre };
enum class RoutingMethod { Sabre, Stochastic };

inline std::string_view to_string(LayoutMethod m) {
  switch (m) {
    case LayoutMethod::Trivial:
      return "trivial";
    case LayoutMethod::Dense:
      return "dense";
    case LayoutMethod::Sabre:
      return "sabre";
  }
  return "?";
}

inline std::string_view to_string(RoutingMethod m) { return m == RoutingMethod::Sabre ? "sabre" : "stochastic"; }

inline std::string_view to_string(SchedulePolicy p) { return p == SchedulePolicy::ASAP ? "asap" : "alap"; }

inline std::optional<LayoutMethod> parse_layout_method(std::string_view s) {
  if (s == "trivial") return LayoutMethod::Trivial;
  if (s == "dense") return LayoutMethod::Dense;
  if (s == "sabre") return LayoutMethod::Sabre;
  return std::nullopt;
}

inline std::optional<RoutingMethod> parse_routing_method(std::string_view s) {
  if (s == "sabre") return RoutingMethod::Sabre;
  if (s == "stochastic") return RoutingMethod::Stochastic;
  return std::nullopt;
}

inline std::optional<SchedulePolicy> parse_schedule_policy(std::string_view s) {
  if (s == "asap") return SchedulePolicy::ASAP;
  if (s == "alap") return SchedulePolicy::ALAP;
  return std::nullopt;
}

struct PassConfig {
  LayoutMethod layout = LayoutMethod::Sabre;
  RoutingMethod routing = RoutingMethod::Sabre;
  int opt_level = 1;
  int setup = 0;
  SchedulePolicy scheduling = SchedulePolicy::ALAP;
  std::uint64_t seed = 0;
  int sabre_trials = 4;
  int stochastic_trials = 20;
  SabreParams sabre;

  void validate() const {
    if (opt_level < 0 || opt_level > kMaxOptimizationLevel) {
      throw std::invalid_argument("invalid optimization level " + std::to_string(opt_level));
    }
    if (setup < 0 || setup > kMaxSetup) throw std::invalid_argument("unknown setup id " + std::to_string(setup));
    if (sabre_trials < 1 || stochastic_trials < 1) throw std::invalid_argument("trial counts must be at least 1");
  }
};

struct TranspileResult {
  RoutedCircuit routed;
  Schedule schedule;
};

namespace transpile_detail {

inline Layout choose_layout(const Circuit& circ, const CouplingGraph& g, const PassConfig& cfg, std::uint64_t seed) {
  switch (cfg.layout) {
    case LayoutMethod::Trivial:
      return trivial_layout(circ, g);
    case LayoutMethod::Dense:
      return dense_layout(circ, g);
    case LayoutMethod::Sabre:
      return sabre_layout(circ, g, seed, cfg.sabre_trials, cfg.sabre);
  }
  throw std::logic_error("unreachable layout method");
}

inline RoutedCircuit place_and_route(const Circuit& circ, const CouplingGraph& g, const PassConfig& cfg,
                                     std::uint64_t seed) {
  const Layout init = choose_layout(circ, g, cfg, seed);
  if (cfg.routing == RoutingMethod::Sabre) return route_sabre(circ, init, g, seed, cfg.sabre);
  return route_stochastic(circ, init, g, seed, cfg.stochastic_trials);
}

inline RoutedCircuit lower_and_optimize(RoutedCircuit rc, const DeviceSpec& dev, const PassConfig& cfg) {
  rc.circuit = decompose(rc.circuit, dev.native);
  rc.circuit = optimize(rc.circuit, cfg.opt_level);
  rc.circuit = apply_setup(rc.circuit, cfg.setup);
  return rc;
}

inline constexpr std::uint64_t kAlternateSeedSalt = 0x51ed2701a3f4c9b5ULL;

}  // namespace transpile_detail

/// Full compilation pipeline: expand ccx, choose a layout, route, lower to
/// the device's native gates, optimise, run the extra setup and schedule.
/// At level 3 a second layout/routing attempt with a derived seed is made and
/// kept only if it is no worse in both gate count and depth and strictly
/// better in one.
inline TranspileResult transpile(const Circuit& circ, const DeviceSpec& dev, const PassConfig& cfg) {
  using namespace transpile_detail;
  cfg.validate();
  const CouplingGraph& g = dev.coupling();
  const Circuit logical = expand_multi_qubit(circ);

  RoutedCircuit best = lower_and_optimize(place_and_route(logical, g, cfg, cfg.seed), dev, cfg);
  if (cfg.opt_level == 3) {
    RoutedCircuit alt =
        lower_and_optimize(place_and_route(logical, g, cfg, mix_seed(cfg.seed, kAlternateSeedSalt)), dev, cfg);
    const std::size_t g0 = gate_total(best.circuit);
    const std::size_t g1 = gate_total(alt.circuit);
    const std::size_t d0 = depth(best.circuit);
    const std::size_t d1 = depth(alt.circuit);
    if (g1 <= g0 && d1 <= d0 && (g1 < g0 || d1 < d0)) best = std::move(alt);
  }
  TranspileResult out;
  out.schedule = schedule(best.circuit, cfg.scheduling);
  out.routed = std::move(best);
  return out;
}

}  // namespace qdse
