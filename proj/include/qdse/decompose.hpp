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

#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdse/circuit.hpp"

namespace qdse {

namespace decompose_detail {

using enum GateKind;
using std::numbers::pi;

inline Gate g1(GateKind k, Qubit q, std::vector<double> params = {}) { return make_gate(k, {q}, std::move(params)); }
inline Gate g2(GateKind k, Qubit a, Qubit b) { return make_gate(k, {a, b}); }

/// One rewrite step for a gate outside the target set. Results may still
/// need lowering; the caller recurses. Rewrites are exact up to global phase.
inline std::vector<Gate> rewrite(const Gate& g, const GateSet& native) {
  const Qubit q = g.qubits.empty() ? 0 : g.qubits[0];
  switch (g.kind) {
    case Id:
      return {};
    case X:
      if (native.contains(SX)) return {g1(SX, q), g1(SX, q)};
      return {g1(RX, q, {pi})};
    case Y:
      if (native.contains(RY)) return {g1(RY, q, {pi})};
      return {g1(RZ, q, {pi}), g1(X, q)};
    case Z:
      return {g1(RZ, q, {pi})};
    case H:
      return {g1(RZ, q, {pi / 2}), g1(SX, q), g1(RZ, q, {pi / 2})};
    case S:
      return {g1(RZ, q, {pi / 2})};
    case Sdg:
      return {g1(RZ, q, {-pi / 2})};
    case T:
      return {g1(RZ, q, {pi / 4})};
    case Tdg:
      return {g1(RZ, q, {-pi / 4})};
    case SX:
      if (!native.contains(RX)) break;
      return {g1(RX, q, {pi / 2})};
    case RX: {
      if (!native.contains(SX)) break;
      const double theta = g.params[0];
      return {g1(RZ, q, {pi / 2}), g1(SX, q), g1(RZ, q, {theta + pi}), g1(SX, q), g1(RZ, q, {pi / 2})};
    }
    case RY:
      return {g1(RZ, q, {-pi / 2}), g1(RX, q, {g.params[0]}), g1(RZ, q, {pi / 2})};
    case RZ:
      break;
    case CP: {
      const Qubit c = g.qubits[0];
      const Qubit t = g.qubits[1];
      const double lam = g.params[0];
      return {g1(RZ, c, {lam / 2}), g2(CX, c, t), g1(RZ, t, {-lam / 2}), g2(CX, c, t), g1(RZ, t, {lam / 2})};
    }
    case CX:
      if (!native.contains(CZ)) break;
      return {g1(H, g.qubits[1]), g2(CZ, g.qubits[0], g.qubits[1]), g1(H, g.qubits[1])};
    case CY:
      return {g1(Sdg, g.qubits[1]), g2(CX, g.qubits[0], g.qubits[1]), g1(S, g.qubits[1])};
    case CZ:
      return {g1(H, g.qubits[1]), g2(CX, g.qubits[0], g.qubits[1]), g1(H, g.qubits[1])};
    case Swap: {
      const Qubit a = g.qubits[0];
      const Qubit b = g.qubits[1];
      return {g2(CX, a, b), g2(CX, b, a), g2(CX, a, b)};
    }
    case CCX: {
      const Qubit a = g.qubits[0];
      const Qubit b = g.qubits[1];
      const Qubit c = g.qubits[2];
      return {g1(H, c),    g2(CX, b, c), g1(Tdg, c), g2(CX, a, c), g1(T, c),    g2(CX, b, c), g1(Tdg, c),
              g2(CX, a, c), g1(T, b),    g1(T, c),    g1(H, c),    g2(CX, a, b), g1(T, a),    g1(Tdg, b),
              g2(CX, a, b)};
    }
    case Measure:
    case Barrier:
      return {g};
  }
  throw std::invalid_argument("no rewrite path for '" + std::string(g.name()) + "' into the target basis");
}

inline void lower(const Gate& g, const GateSet& native, std::vector<Gate>& out, int level) {
  if (g.is_measure() || g.is_barrier() || native.contains(g.kind)) {
    out.push_back(g);
    return;
  }
  if (level > 8) {
    throw std::invalid_argument("no rewrite path for '" + std::string(g.name()) + "' into the target basis");
  }
  for (const Gate& part : rewrite(g, native)) lower(part, native, out, level + 1);
}

}  // namespace decompose_detail

/// Rewrites every gate outside `native` with a fixed rule table until only
/// native gates (plus measure and barrier) remain. Native gates pass through
/// unchanged, so an already-native circuit is returned as is.
inline Circuit decompose(const Circuit& circ, const GateSet& native) {
  std::vector<Gate> gates;
  for (const Gate& g : circ) decompose_detail::lower(g, native, gates, 0);
  Circuit out = circ.empty_copy();
  for (Gate& g : gates) out.append(std::move(g));
  return out;
}

/// Expands gates on more than two qubits (ccx), leaving everything else.
inline Circuit expand_multi_qubit(const Circuit& circ) {
  GateSet all = GateSet::all();
  all.erase(GateKind::CCX);
  return decompose(circ, all);
}

}  // namespace qdse
