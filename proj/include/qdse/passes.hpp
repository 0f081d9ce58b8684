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

// Peephole optimisation passes, optimisation levels and the numbered pass
// manager setups. Every pass only deletes gates or folds one gate into
// another, so gate count and depth never grow.

#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdse/circuit.hpp"

namespace qdse {

namespace pass_detail {

using enum GateKind;

inline constexpr double kAngleTol = 1e-12;

/// Wraps into (-pi, pi]. A 2*pi shift of rx/ry/rz is a global phase and cp
/// is exactly 2*pi periodic.
inline double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(a, two_pi);
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

inline bool angle_is_zero(double a) { return std::abs(wrap_angle(a)) < kAngleTol; }

/// Pauli axis a gate acts along on one of its qubits. Gates with the same
/// axis on every shared qubit commute.
enum class Axis { Identity, Z, X, Y, Other };

inline Axis axis_on(const Gate& g, Qubit q) {
  switch (g.kind) {
    case Id:
      return Axis::Identity;
    case Z:
    case S:
    case Sdg:
    case T:
    case Tdg:
    case RZ:
    case CZ:
    case CP:
      return Axis::Z;
    case X:
    case SX:
    case RX:
      return Axis::X;
    case Y:
    case RY:
      return Axis::Y;
    case CX:
    case CCX:
      return q == g.qubits.back() ? Axis::X : Axis::Z;
    case CY:
      return q == g.qubits.back() ? Axis::Y : Axis::Z;
    default:
      return Axis::Other;
  }
}

inline bool commutes(const Gate& a, const Gate& b) {
  for (Qubit q : a.qubits) {
    if (!b.acts_on(q)) continue;
    const Axis x = axis_on(a, q);
    const Axis y = axis_on(b, q);
    if (x == Axis::Identity || y == Axis::Identity) continue;
    if (x != y || x == Axis::Other) return false;
  }
  return true;
}

inline bool is_rotation(GateKind k) { return k == RX || k == RY || k == RZ; }

inline bool is_clifford(const Gate& g) {
  switch (g.kind) {
    case Id:
    case X:
    case Y:
    case Z:
    case H:
    case S:
    case Sdg:
    case SX:
    case CX:
    case CY:
    case CZ:
    case Swap:
      return true;
    case RX:
    case RY:
    case RZ: {
      const double quarter = g.params[0] / (std::numbers::pi / 2);
      return std::abs(quarter - std::round(quarter)) < kAngleTol;
    }
    default:
      return false;
  }
}

inline bool symmetric(GateKind k) { return k == CZ || k == Swap || k == CP; }

inline bool same_operands(const Gate& a, const Gate& b) {
  if (a.qubits.size() != b.qubits.size()) return false;
  if (a.qubits == b.qubits) return true;
  return a.qubits.size() == 2 && symmetric(a.kind) && a.qubits[0] == b.qubits[1] && a.qubits[1] == b.qubits[0];
}

inline bool are_inverse(const Gate& a, const Gate& b) {
  if (!same_operands(a, b)) return false;
  switch (a.kind) {
    case Id:
    case X:
    case Y:
    case Z:
    case H:
    case CX:
    case CY:
    case CZ:
    case Swap:
      return b.kind == a.kind;
    case S:
      return b.kind == Sdg;
    case Sdg:
      return b.kind == S;
    case T:
      return b.kind == Tdg;
    case Tdg:
      return b.kind == T;
    case RX:
    case RY:
    case RZ:
    case CP:
      return b.kind == a.kind && angle_is_zero(a.params[0] + b.params[0]);
    default:
      return false;
  }
}

inline bool mergeable(const Gate& a, const Gate& b) {
  return a.kind == b.kind && (is_rotation(a.kind) || a.kind == CP) && same_operands(a, b);
}

inline bool is_diagonal(GateKind k) {
  return k == Z || k == S || k == Sdg || k == T || k == Tdg || k == RZ || k == CZ || k == CP;
}

/// Gate list with tombstones and per-qubit wire order.
struct Work {
  std::vector<Gate> gates;
  std::vector<char> dead;
  std::vector<std::vector<std::size_t>> wire;  // per qubit, gate indices
  std::vector<std::vector<std::size_t>> slot;  // per gate, position on wire of each operand

  explicit Work(const Circuit& circ) : gates(circ.gates()), dead(circ.size(), 0) {
    wire.assign(static_cast<std::size_t>(circ.num_qubits()), {});
    slot.resize(gates.size());
    for (std::size_t i = 0; i < gates.size(); ++i) {
      for (Qubit q : gates[i].qubits) {
        slot[i].push_back(wire[q].size());
        wire[q].push_back(i);
      }
    }
  }

  std::size_t position(std::size_t gi, Qubit q) const {
    const auto& qs = gates[gi].qubits;
    for (std::size_t k = 0; k < qs.size(); ++k) {
      if (qs[k] == q) return slot[gi][k];
    }
    return static_cast<std::size_t>(-1);
  }

  Circuit build(const Circuit& like) const {
    Circuit out = like.empty_copy();
    for (std::size_t i = 0; i < gates.size(); ++i) {
      if (!dead[i]) out.append(gates[i]);
    }
    return out;
  }
};

inline constexpr std::size_t kNone = static_cast<std::size_t>(-1);

}  // namespace pass_detail

/// Merges runs of same-axis rotations on one qubit (rz(a) rz(b) -> rz(a+b)),
/// and drops identities and zero-angle rotations.
inline Circuit fuse_single_qubit(const Circuit& circ) {
  using namespace pass_detail;
  Work w(circ);
  std::vector<std::vector<std::size_t>> top(static_cast<std::size_t>(circ.num_qubits()));
  for (std::size_t i = 0; i < w.gates.size(); ++i) {
    Gate& g = w.gates[i];
    if (g.kind == Id) {
      w.dead[i] = 1;
      continue;
    }
    if (is_rotation(g.kind)) {
      auto& stack = top[g.qubits[0]];
      if (!stack.empty() && w.gates[stack.back()].kind == g.kind) {
        Gate& prev = w.gates[stack.back()];
        prev.params[0] = wrap_angle(prev.params[0] + g.params[0]);
        w.dead[i] = 1;
        if (angle_is_zero(prev.params[0])) {
          w.dead[stack.back()] = 1;
          stack.pop_back();
        }
        continue;
      }
      if (angle_is_zero(g.params[0])) {
        w.dead[i] = 1;
        continue;
      }
    }
    for (Qubit q : g.qubits) top[q].push_back(i);
  }
  return w.build(circ);
}

/// Cancels inverse pairs that are adjacent on all of their wires. With
/// `cx_only`, only cx pairs are considered.
inline Circuit cancel_adjacent_inverses(const Circuit& circ, bool cx_only = false) {
  using namespace pass_detail;
  Work w(circ);
  std::vector<std::vector<std::size_t>> top(static_cast<std::size_t>(circ.num_qubits()));
  for (std::size_t i = 0; i < w.gates.size(); ++i) {
    const Gate& g = w.gates[i];
    bool cancelled = false;
    if (!g.is_barrier() && !g.is_measure() && (!cx_only || g.kind == CX)) {
      const auto& first = top[g.qubits[0]];
      if (!first.empty()) {
        const std::size_t j = first.back();
        bool aligned = w.gates[j].qubits.size() == g.qubits.size();
        for (Qubit q : g.qubits) aligned = aligned && !top[q].empty() && top[q].back() == j;
        if (aligned && are_inverse(w.gates[j], g)) {
          w.dead[i] = 1;
          w.dead[j] = 1;
          for (Qubit q : g.qubits) top[q].pop_back();
          cancelled = true;
        }
      }
    }
    if (!cancelled) {
      for (Qubit q : g.qubits) top[q].push_back(i);
    }
  }
  return w.build(circ);
}

enum class CommutationScope { Clifford, Full };

/// Cancels inverse pairs separated only by gates that commute with them.
/// In full scope, same-axis rotations are also merged across commuting
/// gates; in Clifford scope the pair and everything between must be Clifford.
inline Circuit commutative_cancellation(const Circuit& circ, CommutationScope scope = CommutationScope::Full) {
  using namespace pass_detail;
  const bool clifford_only = scope == CommutationScope::Clifford;
  Work w(circ);
  for (std::size_t i = 0; i < w.gates.size(); ++i) {
    if (w.dead[i]) continue;
    const Gate& gi = w.gates[i];
    if (gi.is_barrier() || gi.is_measure() || gi.qubits.size() > 2) continue;
    if (clifford_only && !is_clifford(gi)) continue;
    const Qubit q0 = gi.qubits[0];
    const auto& lane = w.wire[q0];
    for (std::size_t p = w.position(i, q0) + 1; p < lane.size(); ++p) {
      const std::size_t j = lane[p];
      if (w.dead[j]) continue;
      const Gate& gj = w.gates[j];
      const bool inverse = are_inverse(gi, gj);
      const bool merge = !clifford_only && !inverse && mergeable(gi, gj);
      if (inverse || merge) {
        bool clear = true;
        for (Qubit q : gi.qubits) {
          if (q == q0) continue;
          const std::size_t from = w.position(i, q);
          const std::size_t to = w.position(j, q);
          for (std::size_t r = from + 1; clear && r < to; ++r) {
            const std::size_t k = w.wire[q][r];
            if (w.dead[k]) continue;
            clear = commutes(gi, w.gates[k]) && (!clifford_only || is_clifford(w.gates[k]));
          }
        }
        if (clear) {
          w.dead[i] = 1;
          if (inverse) {
            w.dead[j] = 1;
          } else {
            Gate& target = w.gates[j];
            target.params[0] = wrap_angle(target.params[0] + gi.params[0]);
            if (angle_is_zero(target.params[0])) w.dead[j] = 1;
          }
        }
        break;
      }
      if (!commutes(gi, gj) || (clifford_only && !is_clifford(gj))) break;
    }
  }
  return w.build(circ);
}

/// Drops diagonal gates whose every qubit is measured next.
inline Circuit remove_diagonal_before_measure(const Circuit& circ) {
  using namespace pass_detail;
  Work w(circ);
  for (std::size_t i = w.gates.size(); i-- > 0;) {
    const Gate& g = w.gates[i];
    if (!is_diagonal(g.kind)) continue;
    bool all_measured = true;
    for (Qubit q : g.qubits) {
      const auto& lane = w.wire[q];
      std::size_t next = kNone;
      for (std::size_t p = w.position(i, q) + 1; p < lane.size(); ++p) {
        if (!w.dead[lane[p]]) {
          next = lane[p];
          break;
        }
      }
      all_measured = all_measured && next != kNone && w.gates[next].is_measure();
    }
    if (all_measured) w.dead[i] = 1;
  }
  return w.build(circ);
}

/// Deletes gates that provably act trivially because qubits are still in
/// |0>: diagonal gates on |0> qubits, controlled gates with a |0> control,
/// and swaps of two |0> qubits.
inline Circuit zero_state_simplification(const Circuit& circ) {
  using namespace pass_detail;
  Work w(circ);
  std::vector<char> zero(static_cast<std::size_t>(circ.num_qubits()), 1);
  for (std::size_t i = 0; i < w.gates.size(); ++i) {
    const Gate& g = w.gates[i];
    bool trivial = false;
    switch (g.kind) {
      case Barrier:
      case Measure:
        continue;
      case Id:
      case Z:
      case S:
      case Sdg:
      case T:
      case Tdg:
      case RZ:
        trivial = zero[g.qubits[0]];
        break;
      case CZ:
      case CP:
        trivial = zero[g.qubits[0]] || zero[g.qubits[1]];
        break;
      case CX:
      case CY:
        trivial = zero[g.qubits[0]];
        break;
      case CCX:
        trivial = zero[g.qubits[0]] || zero[g.qubits[1]];
        break;
      case Swap:
        trivial = zero[g.qubits[0]] && zero[g.qubits[1]];
        if (!trivial) std::swap(zero[g.qubits[0]], zero[g.qubits[1]]);
        break;
      default:
        break;
    }
    if (trivial) {
      w.dead[i] = 1;
    } else if (g.kind != Swap && !is_diagonal(g.kind)) {
      for (Qubit q : g.qubits) zero[q] = 0;
    }
  }
  return w.build(circ);
}

namespace pass_detail {

/// Repeats `body` until the gate count stops falling or `cap` rounds.
template <typename Body>
Circuit fixpoint(Circuit circ, Body body, int cap) {
  for (int round = 0; round < cap; ++round) {
    const std::size_t before = circ.size();
    circ = body(std::move(circ));
    if (circ.size() >= before) break;
  }
  return circ;
}

inline Circuit level1_round(Circuit c) { return cancel_adjacent_inverses(fuse_single_qubit(c)); }

inline Circuit level2_round(Circuit c) {
  c = commutative_cancellation(c, CommutationScope::Full);
  c = remove_diagonal_before_measure(c);
  return fixpoint(std::move(c), level1_round, 1000);
}

inline Circuit setup1_round(Circuit c) {
  return commutative_cancellation(fuse_single_qubit(c), CommutationScope::Clifford);
}

inline Circuit setup3_round(Circuit c) { return remove_diagonal_before_measure(setup1_round(std::move(c))); }

}  // namespace pass_detail

inline constexpr int kMaxOptimizationLevel = 3;
inline constexpr int kMaxSetup = 5;

/// Level 0: none. Level 1: fusion and adjacent inverse cancellation.
/// Level 2: level 1 plus commutative cancellation and diagonal-before-measure
/// removal, iterated up to 10 rounds. Level 3: level 2 plus zero-state
/// simplification (the transpiler adds a second routing trial).
inline Circuit optimize(const Circuit& circ, int level) {
  using namespace pass_detail;
  if (level < 0 || level > kMaxOptimizationLevel) {
    throw std::invalid_argument("invalid optimization level " + std::to_string(level));
  }
  if (level == 0) return circ;
  Circuit c = fixpoint(circ, level1_round, 1000);
  if (level == 1) return c;
  c = fixpoint(std::move(c), level2_round, 10);
  if (level == 2) return c;
  return fixpoint(
      std::move(c), [](Circuit x) { return level2_round(zero_state_simplification(x)); }, 10);
}

/// Additional pass-manager setups 1-5 (0 = none). Setups 1-4 run to a
/// fixpoint and are idempotent.
inline Circuit apply_setup(const Circuit& circ, int setup) {
  using namespace pass_detail;
  constexpr int cap = 100000;
  switch (setup) {
    case 0:
      return circ;
    case 1:
      return fixpoint(circ, setup1_round, cap);
    case 2:
      return fixpoint(
          circ, [](Circuit c) { return cancel_adjacent_inverses(fuse_single_qubit(c), true); }, cap);
    case 3:
      return fixpoint(circ, setup3_round, cap);
    case 4:
      return fixpoint(
          circ, [](Circuit c) { return commutative_cancellation(fuse_single_qubit(c), CommutationScope::Full); }, cap);
    case 5:
      return fixpoint(
          circ,
          [](Circuit c) {
            c = setup3_round(std::move(c));
            c = zero_state_simplification(c);
            return commutative_cancellation(c, CommutationScope::Full);
          },
          cap);
    default:
      throw std::invalid_argument("unknown setup id " + std::to_string(setup));
  }
}

}  // namespace qdse
