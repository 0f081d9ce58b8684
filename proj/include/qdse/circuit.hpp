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
#include <array>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qdse {

using Qubit = int;
using Clbit = int;

enum class GateKind : std::uint8_t {
  Id,
  X,
  Y,
  Z,
  H,
  S,
  Sdg,
  T,
  Tdg,
  SX,
  RX,
  RY,
  RZ,
  CP,
  CX,
  CY,
  CZ,
  Swap,
  CCX,
  Measure,
  Barrier,
};

inline constexpr std::size_t kGateKindCount = 21;

namespace detail {

struct GateInfo {
  std::string_view name;
  int arity;  // -1: variable (barrier)
  int num_params;
};

inline constexpr std::array<GateInfo, kGateKindCount> kGateTable{{
    {"id", 1, 0},   {"x", 1, 0},    {"y", 1, 0},     {"z", 1, 0},
    {"h", 1, 0},    {"s", 1, 0},    {"sdg", 1, 0},   {"t", 1, 0},
    {"tdg", 1, 0},  {"sx", 1, 0},   {"rx", 1, 1},    {"ry", 1, 1},
    {"rz", 1, 1},   {"cp", 2, 1},   {"cx", 2, 0},    {"cy", 2, 0},
    {"cz", 2, 0},   {"swap", 2, 0}, {"ccx", 3, 0},   {"measure", 1, 0},
    {"barrier", -1, 0},
}};

inline constexpr const GateInfo& info(GateKind k) {
  return kGateTable[static_cast<std::size_t>(k)];
}

}  // namespace detail

inline constexpr std::string_view gate_name(GateKind k) { return detail::info(k).name; }
inline constexpr int gate_arity(GateKind k) { return detail::info(k).arity; }
inline constexpr int gate_param_count(GateKind k) { return detail::info(k).num_params; }

inline std::optional<GateKind> gate_kind_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kGateKindCount; ++i) {
    if (detail::kGateTable[i].name == name) return static_cast<GateKind>(i);
  }
  return std::nullopt;
}

/// A set of gate kinds, e.g. a device's native basis.
class GateSet {
 public:
  GateSet() = default;
  GateSet(std::initializer_list<GateKind> kinds) {
    for (GateKind k : kinds) insert(k);
  }

  void insert(GateKind k) { bits_.set(static_cast<std::size_t>(k)); }
  void erase(GateKind k) { bits_.reset(static_cast<std::size_t>(k)); }
  bool contains(GateKind k) const { return bits_.test(static_cast<std::size_t>(k)); }
  bool includes(const GateSet& other) const { return (bits_ & other.bits_) == other.bits_; }
  std::size_t size() const { return bits_.count(); }

  std::vector<GateKind> kinds() const {
    std::vector<GateKind> out;
    for (std::size_t i = 0; i < kGateKindCount; ++i) {
      if (bits_.test(i)) out.push_back(static_cast<GateKind>(i));
    }
    return out;
  }

  static GateSet all() {
    GateSet s;
    s.bits_.set();
    return s;
  }

  friend bool operator==(const GateSet&, const GateSet&) = default;

 private:
  std::bitset<kGateKindCount> bits_;
};

/// Native set of the device sweeps: id, rz, sx, x, cx, swap, cz.
inline GateSet device_basis() {
  using enum GateKind;
  return {Id, RZ, SX, X, CX, Swap, CZ};
}

/// Native set of the compilation sweeps: x, y, z, rx, ry, rz, cx, cy.
inline GateSet compile_basis() {
  using enum GateKind;
  return {X, Y, Z, RX, RY, RZ, CX, CY};
}

struct Gate {
  GateKind kind = GateKind::Id;
  std::vector<Qubit> qubits;
  std::vector<double> params;
  std::vector<Clbit> clbits;

  std::string_view name() const { return gate_name(kind); }
  std::size_t num_qubits() const { return qubits.size(); }
  bool is_barrier() const { return kind == GateKind::Barrier; }
  bool is_measure() const { return kind == GateKind::Measure; }
  bool is_two_qubit() const { return qubits.size() == 2 && kind != GateKind::Barrier; }
  bool is_single_qubit_op() const {
    return qubits.size() == 1 && kind != GateKind::Measure && kind != GateKind::Barrier;
  }
  bool acts_on(Qubit q) const {
    return std::find(qubits.begin(), qubits.end(), q) != qubits.end();
  }

  friend bool operator==(const Gate&, const Gate&) = default;
};

inline Gate make_gate(GateKind kind, std::vector<Qubit> qubits, std::vector<double> params = {}) {
  return Gate{kind, std::move(qubits), std::move(params), {}};
}

inline Gate make_measure(Qubit q, Clbit c) { return Gate{GateKind::Measure, {q}, {}, {c}}; }

/// Throws std::invalid_argument if the gate violates arity or operand rules.
inline void validate_gate(const Gate& g) {
  const int arity = gate_arity(g.kind);
  if (arity >= 0 && static_cast<int>(g.qubits.size()) != arity) {
    throw std::invalid_argument("gate '" + std::string(g.name()) + "' expects " +
                                std::to_string(arity) + " qubit operand(s)");
  }
  if (g.kind == GateKind::Barrier && g.qubits.empty()) {
    throw std::invalid_argument("barrier needs at least one qubit");
  }
  if (static_cast<int>(g.params.size()) != gate_param_count(g.kind)) {
    throw std::invalid_argument("gate '" + std::string(g.name()) + "' expects " +
                                std::to_string(gate_param_count(g.kind)) + " parameter(s)");
  }
  for (std::size_t i = 0; i < g.qubits.size(); ++i) {
    if (g.qubits[i] < 0) throw std::invalid_argument("negative qubit index");
    for (std::size_t j = i + 1; j < g.qubits.size(); ++j) {
      if (g.qubits[i] == g.qubits[j]) throw std::invalid_argument("duplicate qubit operand");
    }
  }
  if (g.kind == GateKind::Measure) {
    if (g.clbits.size() != 1) throw std::invalid_argument("measure needs exactly one clbit");
  } else if (!g.clbits.empty()) {
    throw std::invalid_argument("only measure may target classical bits");
  }
}

/// Ordered gate list over a single quantum and a single classical register.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int num_qubits, int num_clbits = 0)
      : num_qubits_(num_qubits), num_clbits_(num_clbits) {
    if (num_qubits < 0 || num_clbits < 0) throw std::invalid_argument("negative register size");
  }

  int num_qubits() const { return num_qubits_; }
  int num_clbits() const { return num_clbits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }
  const Gate& operator[](std::size_t i) const { return gates_[i]; }
  auto begin() const { return gates_.begin(); }
  auto end() const { return gates_.end(); }

  Circuit& append(Gate g) {
    validate_gate(g);
    for (Qubit q : g.qubits) {
      if (q >= num_qubits_) throw std::invalid_argument("qubit index out of range");
    }
    for (Clbit c : g.clbits) {
      if (c < 0 || c >= num_clbits_) throw std::invalid_argument("clbit index out of range");
    }
    gates_.push_back(std::move(g));
    return *this;
  }

  Circuit& add(GateKind kind, std::vector<Qubit> qubits, std::vector<double> params = {}) {
    return append(make_gate(kind, std::move(qubits), std::move(params)));
  }

  Circuit& measure(Qubit q, Clbit c) { return append(make_measure(q, c)); }

  /// Same registers, no gates.
  Circuit empty_copy() const { return Circuit(num_qubits_, num_clbits_); }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  int num_qubits_ = 0;
  int num_clbits_ = 0;
  std::vector<Gate> gates_;
};

/// Critical-path length. Barriers synchronize their qubits without adding
/// depth; measures count as ordinary depth-1 operations.
inline std::size_t depth(const Circuit& circ) {
  std::vector<std::size_t> level(static_cast<std::size_t>(circ.num_qubits()), 0);
  std::size_t best = 0;
  for (const Gate& g : circ) {
    std::size_t m = 0;
    for (Qubit q : g.qubits) m = std::max(m, level[q]);
    if (!g.is_barrier()) ++m;
    for (Qubit q : g.qubits) level[q] = m;
    best = std::max(best, m);
  }
  return best;
}

struct GateCounts {
  std::size_t one_qubit = 0;    // excludes measure and barrier
  std::size_t two_qubit = 0;
  std::size_t three_qubit = 0;  // ccx; must be decomposed before metrics
  std::size_t measures = 0;
  std::size_t barriers = 0;

  friend bool operator==(const GateCounts&, const GateCounts&) = default;
};

inline GateCounts gate_counts(const Circuit& circ) {
  GateCounts c;
  for (const Gate& g : circ) {
    if (g.is_barrier()) {
      ++c.barriers;
    } else if (g.is_measure()) {
      ++c.measures;
    } else if (g.qubits.size() == 1) {
      ++c.one_qubit;
    } else if (g.qubits.size() == 2) {
      ++c.two_qubit;
    } else {
      ++c.three_qubit;
    }
  }
  return c;
}

/// Number of gates excluding barriers.
inline std::size_t gate_total(const Circuit& circ) {
  return static_cast<std::size_t>(std::count_if(circ.begin(), circ.end(),
                                                [](const Gate& g) { return !g.is_barrier(); }));
}

enum class SchedulePolicy { ASAP, ALAP };

/// Layering of a circuit. Barriers are fences and belong to no layer.
struct Schedule {
  std::vector<std::vector<std::size_t>> layers;
  SchedulePolicy policy = SchedulePolicy::ASAP;

  std::size_t num_layers() const { return layers.size(); }
};

inline Schedule schedule(const Circuit& circ, SchedulePolicy policy) {
  const std::size_t n = circ.size();
  const std::size_t total = depth(circ);
  Schedule out;
  out.policy = policy;
  out.layers.resize(total);
  std::vector<std::size_t> level(static_cast<std::size_t>(circ.num_qubits()), 0);
  std::vector<std::size_t> slot(n, 0);

  auto visit = [&](std::size_t i) {
    const Gate& g = circ[i];
    std::size_t m = 0;
    for (Qubit q : g.qubits) m = std::max(m, level[q]);
    if (!g.is_barrier()) ++m;
    for (Qubit q : g.qubits) level[q] = m;
    slot[i] = m;
  };

  if (policy == SchedulePolicy::ASAP) {
    for (std::size_t i = 0; i < n; ++i) visit(i);
    for (std::size_t i = 0; i < n; ++i) {
      if (!circ[i].is_barrier()) out.layers[slot[i] - 1].push_back(i);
    }
  } else {
    for (std::size_t i = n; i-- > 0;) visit(i);
    for (std::size_t i = 0; i < n; ++i) {
      if (!circ[i].is_barrier()) out.layers[total - slot[i]].push_back(i);
    }
  }
  return out;
}

/// Reverse gate order. Used for backward passes of layout search.
inline Circuit reversed(const Circuit& circ) {
  Circuit out = circ.empty_copy();
  for (auto it = circ.gates().rbegin(); it != circ.gates().rend(); ++it) out.append(*it);
  return out;
}

}  // namespace qdse
