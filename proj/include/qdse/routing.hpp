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
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdse/circuit.hpp"
#include "qdse/rng.hpp"
#include "qdse/topology.hpp"

namespace qdse {

/// Injective map from logical to physical qubits.
class Layout {
 public:
  Layout() = default;
  explicit Layout(std::vector<int> logical_to_physical) : map_(std::move(logical_to_physical)) {}

  static Layout identity(int n) {
    std::vector<int> m(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) m[i] = i;
    return Layout(std::move(m));
  }

  int size() const { return static_cast<int>(map_.size()); }
  int operator[](int logical) const { return map_[logical]; }
  const std::vector<int>& map() const { return map_; }

  /// physical -> logical, -1 for unoccupied physical qubits.
  std::vector<int> inverse(int num_physical) const {
    std::vector<int> inv(static_cast<std::size_t>(num_physical), -1);
    for (int l = 0; l < size(); ++l) inv[map_[l]] = l;
    return inv;
  }

  void validate(int num_logical, int num_physical) const {
    if (size() != num_logical) throw std::invalid_argument("layout does not cover the circuit qubits");
    std::vector<bool> used(static_cast<std::size_t>(num_physical), false);
    for (int p : map_) {
      if (p < 0 || p >= num_physical) throw std::invalid_argument("layout maps outside the device");
      if (used[p]) throw std::invalid_argument("layout is not injective");
      used[p] = true;
    }
  }

  friend bool operator==(const Layout&, const Layout&) = default;

 private:
  std::vector<int> map_;
};

/// Physical circuit produced by routing.
struct RoutedCircuit {
  Circuit circuit;
  Layout initial_layout;
  Layout final_layout;
  std::size_t swaps_added = 0;

  friend bool operator==(const RoutedCircuit&, const RoutedCircuit&) = default;
};

/// True if every two-qubit gate acts on a device edge.
inline bool satisfies_adjacency(const Circuit& circ, const CouplingGraph& g) {
  for (const Gate& gate : circ) {
    if (gate.is_two_qubit() && !g.adjacent(gate.qubits[0], gate.qubits[1])) return false;
    if (gate.qubits.size() > 2 && !gate.is_barrier()) return false;
  }
  return true;
}

struct SabreParams {
  std::size_t extended_set_size = 20;
  double extended_set_weight = 0.5;
  double decay_factor = 1.001;
  int decay_reset_interval = 5;
};

namespace routing_detail {

inline void check_inputs(const Circuit& circ, const Layout& init, const CouplingGraph& g) {
  if (circ.num_qubits() > g.num_qubits()) throw std::invalid_argument("circuit has more qubits than the device");
  init.validate(circ.num_qubits(), g.num_qubits());
  for (const Gate& gate : circ) {
    if (gate.qubits.size() > 2 && !gate.is_barrier()) {
      throw std::invalid_argument("routing requires gates on at most two qubits; decompose '" +
                                  std::string(gate.name()) + "' first");
    }
  }
}

/// Mutable logical/physical assignment during routing.
struct Placement {
  std::vector<int> l2p;
  std::vector<int> p2l;

  Placement(const Layout& init, int num_physical) : l2p(init.map()), p2l(init.inverse(num_physical)) {}

  void swap_physical(int a, int b) {
    const int la = p2l[a];
    const int lb = p2l[b];
    p2l[a] = lb;
    p2l[b] = la;
    if (la >= 0) l2p[la] = b;
    if (lb >= 0) l2p[lb] = a;
  }
};

inline Gate to_physical(const Gate& g, const std::vector<int>& l2p) {
  Gate out = g;
  for (Qubit& q : out.qubits) q = l2p[q];
  return out;
}

/// Moves logical qubit a along a shortest path until it neighbours b.
inline std::size_t walk_together(Placement& place, int a, int b, const CouplingGraph& g, Circuit& out) {
  std::size_t swaps = 0;
  while (!g.adjacent(place.l2p[a], place.l2p[b])) {
    const int pa = place.l2p[a];
    const int pb = place.l2p[b];
    const int d = g.distance(pa, pb);
    int step = -1;
    for (int w : g.neighbors(pa)) {
      if (g.distance(w, pb) == d - 1) {
        step = w;
        break;
      }
    }
    out.add(GateKind::Swap, {pa, step});
    place.swap_physical(pa, step);
    ++swaps;
  }
  return swaps;
}

}  // namespace routing_detail

/// SABRE swap routing with look-ahead.
///
/// The front layer holds unresolved gates whose predecessors have executed.
/// While no front gate can execute, the swap on an edge touching a front
/// gate that minimises
///   max(decay) * (mean front distance + w * mean extended-set distance)
/// is inserted. Ties go to the swap that can finish earliest given the
/// qubits' current depth in the output, then to the lowest edge index. Decay grows by
/// `decay_factor` on swapped qubits and resets every `decay_reset_interval`
/// swaps or when a gate executes. If no gate executes for a long stretch the
/// closest front gate is walked together along a shortest path.
///
/// The heuristic is deterministic; `seed` is accepted for interface
/// symmetry with the stochastic router.
inline RoutedCircuit route_sabre(const Circuit& circ, const Layout& init, const CouplingGraph& g,
                                 std::uint64_t seed = 0, const SabreParams& params = {}) {
  (void)seed;
  routing_detail::check_inputs(circ, init, g);
  const std::size_t n = circ.size();
  const int num_phys = g.num_qubits();

  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<int> pending(n, 0);
  {
    std::vector<long long> last(static_cast<std::size_t>(circ.num_qubits()), -1);
    for (std::size_t i = 0; i < n; ++i) {
      for (Qubit q : circ[i].qubits) {
        if (last[q] >= 0) {
          auto& s = succ[static_cast<std::size_t>(last[q])];
          if (s.empty() || s.back() != i) {
            s.push_back(i);
            ++pending[i];
          }
        }
        last[q] = static_cast<long long>(i);
      }
    }
  }

  routing_detail::Placement place(init, num_phys);
  RoutedCircuit result;
  result.initial_layout = init;
  result.circuit = Circuit(num_phys, circ.num_clbits());

  std::vector<std::size_t> front;
  for (std::size_t i = 0; i < n; ++i) {
    if (pending[i] == 0) front.push_back(i);
  }

  std::vector<double> decay(static_cast<std::size_t>(num_phys), 1.0);
  std::vector<std::uint32_t> visit_stamp(n, 0);
  std::uint32_t stamp = 0;
  int swaps_since_reset = 0;
  std::size_t swaps_since_progress = 0;
  const std::size_t release_after = 3 * static_cast<std::size_t>(g.distances().diameter()) + 10;

  auto executable = [&](std::size_t gi) {
    const Gate& gate = circ[gi];
    return !gate.is_two_qubit() || g.adjacent(place.l2p[gate.qubits[0]], place.l2p[gate.qubits[1]]);
  };

  std::vector<std::pair<int, int>> front_pairs;
  std::vector<std::pair<int, int>> ext_pairs;
  std::vector<std::size_t> bfs;
  std::vector<std::pair<int, int>> candidates;
  // Earliest free layer of each physical qubit in the output so far.
  std::vector<std::size_t> ready(static_cast<std::size_t>(num_phys), 0);
  std::size_t scanned = 0;

  while (!front.empty()) {
    bool any = false;
    for (bool progressed = true; progressed;) {
      progressed = false;
      std::vector<std::size_t> next_front;
      for (std::size_t gi : front) {
        if (executable(gi)) {
          result.circuit.append(routing_detail::to_physical(circ[gi], place.l2p));
          for (std::size_t s : succ[gi]) {
            if (--pending[s] == 0) next_front.push_back(s);
          }
          progressed = true;
        } else {
          next_front.push_back(gi);
        }
      }
      std::sort(next_front.begin(), next_front.end());
      front = std::move(next_front);
      any = any || progressed;
    }
    if (front.empty()) break;
    if (any) {
      std::fill(decay.begin(), decay.end(), 1.0);
      swaps_since_reset = 0;
      swaps_since_progress = 0;
    }

    if (swaps_since_progress >= release_after) {
      std::size_t best = front[0];
      int best_d = std::numeric_limits<int>::max();
      for (std::size_t gi : front) {
        const Gate& gate = circ[gi];
        const int d = g.distance(place.l2p[gate.qubits[0]], place.l2p[gate.qubits[1]]);
        if (d < best_d) {
          best_d = d;
          best = gi;
        }
      }
      result.swaps_added +=
          routing_detail::walk_together(place, circ[best].qubits[0], circ[best].qubits[1], g, result.circuit);
      swaps_since_progress = 0;
      continue;
    }

    // Front and extended-set logical pairs.
    front_pairs.clear();
    ext_pairs.clear();
    for (std::size_t gi : front) front_pairs.push_back({circ[gi].qubits[0], circ[gi].qubits[1]});
    ++stamp;
    bfs.clear();
    for (std::size_t gi : front) {
      for (std::size_t s : succ[gi]) {
        if (visit_stamp[s] != stamp) {
          visit_stamp[s] = stamp;
          bfs.push_back(s);
        }
      }
    }
    for (std::size_t head = 0; head < bfs.size() && ext_pairs.size() < params.extended_set_size; ++head) {
      const Gate& gate = circ[bfs[head]];
      if (gate.is_two_qubit()) ext_pairs.push_back({gate.qubits[0], gate.qubits[1]});
      for (std::size_t s : succ[bfs[head]]) {
        if (visit_stamp[s] != stamp) {
          visit_stamp[s] = stamp;
          bfs.push_back(s);
        }
      }
    }

    candidates.clear();
    for (const auto& [a, b] : front_pairs) {
      for (int p : {place.l2p[a], place.l2p[b]}) {
        for (int w : g.neighbors(p)) candidates.push_back({std::min(p, w), std::max(p, w)});
      }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (; scanned < result.circuit.size(); ++scanned) {
      const Gate& gate = result.circuit[scanned];
      std::size_t t = 0;
      for (Qubit q : gate.qubits) t = std::max(t, ready[q]);
      if (!gate.is_barrier()) ++t;
      for (Qubit q : gate.qubits) ready[q] = t;
    }

    double best_score = std::numeric_limits<double>::infinity();
    std::size_t best_finish = std::numeric_limits<std::size_t>::max();
    std::pair<int, int> best_swap = candidates.front();
    for (const auto& [s1, s2] : candidates) {
      auto moved = [&](int p) { return p == s1 ? s2 : (p == s2 ? s1 : p); };
      double front_sum = 0.0;
      for (const auto& [a, b] : front_pairs) front_sum += g.distance(moved(place.l2p[a]), moved(place.l2p[b]));
      double ext_sum = 0.0;
      for (const auto& [a, b] : ext_pairs) ext_sum += g.distance(moved(place.l2p[a]), moved(place.l2p[b]));
      const double h = front_sum / static_cast<double>(front_pairs.size()) +
                       params.extended_set_weight * ext_sum /
                           static_cast<double>(std::max<std::size_t>(ext_pairs.size(), 1));
      const double score = std::max(decay[s1], decay[s2]) * h;
      const std::size_t finish = std::max(ready[s1], ready[s2]) + 1;
      const double tol = 1e-9 * std::max(1.0, best_score);
      if (score < best_score - tol || (score <= best_score + tol && finish < best_finish)) {
        best_score = std::min(score, best_score);
        best_finish = finish;
        best_swap = {s1, s2};
      }
    }

    result.circuit.add(GateKind::Swap, {best_swap.first, best_swap.second});
    place.swap_physical(best_swap.first, best_swap.second);
    ++result.swaps_added;
    ++swaps_since_progress;
    decay[best_swap.first] *= params.decay_factor;
    decay[best_swap.second] *= params.decay_factor;
    if (++swaps_since_reset >= params.decay_reset_interval) {
      std::fill(decay.begin(), decay.end(), 1.0);
      swaps_since_reset = 0;
    }
  }

  result.final_layout = Layout(place.l2p);
  return result;
}

namespace routing_detail {

inline RoutedCircuit stochastic_trial(const Circuit& circ, const Layout& init, const CouplingGraph& g,
                                      std::uint64_t seed) {
  Rng rng(seed);
  Placement place(init, g.num_qubits());
  RoutedCircuit result;
  result.initial_layout = init;
  result.circuit = Circuit(g.num_qubits(), circ.num_clbits());
  const std::size_t give_up = 4 * static_cast<std::size_t>(g.distances().diameter()) + 16;
  std::vector<Edge> candidates;
  std::vector<double> weights;

  for (const Gate& gate : circ) {
    if (gate.is_two_qubit()) {
      const int a = gate.qubits[0];
      const int b = gate.qubits[1];
      std::size_t spent = 0;
      while (!g.adjacent(place.l2p[a], place.l2p[b])) {
        if (spent >= give_up) {
          result.swaps_added += walk_together(place, a, b, g, result.circuit);
          break;
        }
        const int pa = place.l2p[a];
        const int pb = place.l2p[b];
        const int before = g.distance(pa, pb);
        candidates.clear();
        for (int w : g.neighbors(pa)) candidates.emplace_back(pa, w);
        for (int w : g.neighbors(pb)) candidates.emplace_back(pb, w);
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        weights.clear();
        double total = 0.0;
        for (const Edge& e : candidates) {
          auto moved = [&](int p) { return p == e.u ? e.v : (p == e.v ? e.u : p); };
          const int after = g.distance(moved(pa), moved(pb));
          const double w = std::exp(-static_cast<double>(after - before));
          weights.push_back(w);
          total += w;
        }
        double pick = rng.uniform() * total;
        std::size_t chosen = candidates.size() - 1;
        for (std::size_t i = 0; i < weights.size(); ++i) {
          if (pick < weights[i]) {
            chosen = i;
            break;
          }
          pick -= weights[i];
        }
        const Edge e = candidates[chosen];
        result.circuit.add(GateKind::Swap, {e.u, e.v});
        place.swap_physical(e.u, e.v);
        ++result.swaps_added;
        ++spent;
      }
    }
    result.circuit.append(to_physical(gate, place.l2p));
  }
  result.final_layout = Layout(place.l2p);
  return result;
}

}  // namespace routing_detail

/// Randomised swap routing: gates are resolved in program order, and for a
/// non-adjacent two-qubit gate swaps touching its endpoints are sampled with
/// weight exp(-change in endpoint distance). Trial t uses seed + t; the trial
/// with fewest swaps wins, then lowest depth, then lowest index.
inline RoutedCircuit route_stochastic(const Circuit& circ, const Layout& init, const CouplingGraph& g,
                                      std::uint64_t seed, int trials = 20) {
  if (trials < 1) throw std::invalid_argument("stochastic routing needs at least one trial");
  routing_detail::check_inputs(circ, init, g);
  RoutedCircuit best;
  std::size_t best_depth = 0;
  for (int t = 0; t < trials; ++t) {
    RoutedCircuit rc = routing_detail::stochastic_trial(circ, init, g, seed + static_cast<std::uint64_t>(t));
    const std::size_t d = depth(rc.circuit);
    if (t == 0 || rc.swaps_added < best.swaps_added || (rc.swaps_added == best.swaps_added && d < best_depth)) {
      best = std::move(rc);
      best_depth = d;
    }
  }
  return best;
}

}  // namespace qdse
