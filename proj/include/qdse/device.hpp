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

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdse/circuit.hpp"
#include "qdse/topology.hpp"

namespace qdse {

/// Amplification exponents and radius shared by the crosstalk models.
struct CrosstalkParams {
  double n = 1.0;  // shared-qubit / proximity exponent, and 1q-term exponent
  double k = 1.0;  // simultaneous-execution exponent
  double r_max = 2.0;
  double single_qubit_weight = 0.5;
};

/// Per-gate-kind optional value table.
using GateTable = std::array<std::optional<double>, kGateKindCount>;

inline constexpr double kDefaultF1q = 0.9982;
inline constexpr double kDefaultF2q = 0.9765;
inline constexpr double kDefaultT1 = 100.0;  // µs
inline constexpr double kDefaultT2 = 80.0;   // µs
inline constexpr double kDefaultDuration1q = 0.035;
inline constexpr double kDefaultDuration2q = 0.3;
inline constexpr double kDefaultDurationMeasure = 1.0;
inline constexpr double kDefaultDepol1q = 0.001;
inline constexpr double kDefaultDepol2q = 0.01;

/// Coupling graph plus native gates and the fidelity, timing and noise
/// parameter tables consumed by the estimators.
struct DeviceSpec {
  std::shared_ptr<const CouplingGraph> graph;
  GateSet native;
  double f1q = kDefaultF1q;
  double f2q = kDefaultF2q;
  GateTable gate_fidelity{};                 // per-gate-name override
  std::map<Edge, double> edge_fidelity;      // per-edge override for 2q gates
  std::vector<double> t1;                    // per qubit; empty -> default_t1
  std::vector<double> t2;
  double default_t1 = kDefaultT1;
  double default_t2 = kDefaultT2;
  GateTable duration{};  // µs
  GateTable depol{};
  CrosstalkParams xtalk;

  const CouplingGraph& coupling() const { return *graph; }
  int num_qubits() const { return graph->num_qubits(); }

  double t1_of(int q) const { return t1.empty() ? default_t1 : t1.at(q); }
  double t2_of(int q) const { return t2.empty() ? default_t2 : t2.at(q); }

  /// Raw fidelity of one gate. Measures and barriers contribute 1.
  double fidelity(const Gate& g) const {
    if (g.is_measure() || g.is_barrier()) return 1.0;
    if (g.qubits.size() == 2 && !edge_fidelity.empty()) {
      auto it = edge_fidelity.find(Edge(g.qubits[0], g.qubits[1]));
      if (it != edge_fidelity.end()) return it->second;
    }
    if (const auto& f = gate_fidelity[static_cast<std::size_t>(g.kind)]) return *f;
    return g.qubits.size() == 1 ? f1q : f2q;
  }

  double duration_of(GateKind k) const {
    const auto& d = duration[static_cast<std::size_t>(k)];
    if (!d) throw std::invalid_argument("unknown gate duration for '" + std::string(gate_name(k)) + "'");
    return *d;
  }

  double depol_of(GateKind k) const {
    const auto& p = depol[static_cast<std::size_t>(k)];
    if (!p) throw std::invalid_argument("missing depolarization probability for '" + std::string(gate_name(k)) + "'");
    return *p;
  }

  void validate() const {
    if (!graph) throw std::invalid_argument("device has no coupling graph");
    auto check_fid = [](double f, const std::string& what) {
      if (!(f > 0.0 && f <= 1.0)) throw std::invalid_argument(what + " must lie in (0, 1]");
    };
    check_fid(f1q, "f1q");
    check_fid(f2q, "f2q");
    for (const auto& f : gate_fidelity) {
      if (f) check_fid(*f, "gate fidelity");
    }
    for (const auto& [e, f] : edge_fidelity) check_fid(f, "edge fidelity");
    const int n = num_qubits();
    if (!t1.empty() && static_cast<int>(t1.size()) != n) throw std::invalid_argument("t1 table size mismatch");
    if (!t2.empty() && static_cast<int>(t2.size()) != n) throw std::invalid_argument("t2 table size mismatch");
    for (int q = 0; q < n; ++q) {
      if (!(t1_of(q) > 0.0) || !(t2_of(q) > 0.0)) throw std::invalid_argument("T1 and T2 must be positive");
      if (t2_of(q) > 2.0 * t1_of(q)) {
        throw std::invalid_argument("T2 exceeds 2*T1 on qubit " + std::to_string(q));
      }
    }
    for (const auto& d : duration) {
      if (d && !(*d > 0.0)) throw std::invalid_argument("gate durations must be positive");
    }
    for (const auto& p : depol) {
      if (p && !(*p >= 0.0 && *p < 1.0)) throw std::invalid_argument("depolarization must lie in [0, 1)");
    }
    if (!(xtalk.r_max > 0.0)) throw std::invalid_argument("r_max must be positive");
    if (xtalk.n < 0.0 || xtalk.k < 0.0 || xtalk.single_qubit_weight < 0.0) {
      throw std::invalid_argument("crosstalk exponents must be non-negative");
    }
  }
};

/// Device with default durations and depolarization filled in for every
/// native gate and for measure.
inline DeviceSpec make_device(std::shared_ptr<const CouplingGraph> graph, GateSet native = device_basis()) {
  DeviceSpec dev;
  dev.graph = std::move(graph);
  dev.native = native;
  for (GateKind k : native.kinds()) {
    const auto i = static_cast<std::size_t>(k);
    const bool two = gate_arity(k) == 2;
    dev.duration[i] = two ? kDefaultDuration2q : kDefaultDuration1q;
    dev.depol[i] = two ? kDefaultDepol2q : kDefaultDepol1q;
  }
  dev.duration[static_cast<std::size_t>(GateKind::Measure)] = kDefaultDurationMeasure;
  return dev;
}

inline DeviceSpec make_device(CouplingGraph graph, GateSet native = device_basis()) {
  return make_device(std::make_shared<const CouplingGraph>(std::move(graph)), native);
}

}  // namespace qdse
