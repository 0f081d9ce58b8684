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
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qdse/circuit.hpp"
#include "qdse/rng.hpp"
#include "qdse/routing.hpp"
#include "qdse/topology.hpp"

namespace qdse {

namespace layout_detail {

inline void check_fits(const Circuit& circ, const CouplingGraph& g) {
  if (circ.num_qubits() > g.num_qubits()) throw std::invalid_argument("circuit has more qubits than the device");
}

}  // namespace layout_detail

inline Layout trivial_layout(const Circuit& circ, const CouplingGraph& g) {
  layout_detail::check_fits(circ, g);
  return Layout::identity(circ.num_qubits());
}

/// Greedy dense-subgraph layout.
///
/// Grows a k-qubit region from the lowest-index maximum-degree qubit, each
/// time adding the frontier qubit with the most neighbours already inside
/// (ties: lower index). Logical qubits sorted by two-qubit interaction count
/// are then paired with region qubits sorted by internal degree.
inline Layout dense_layout(const Circuit& circ, const CouplingGraph& g) {
  layout_detail::check_fits(circ, g);
  const int k = circ.num_qubits();
  const int n = g.num_qubits();
  if (k == 0) return Layout{};

  std::vector<char> chosen(static_cast<std::size_t>(n), 0);
  std::vector<int> inside(static_cast<std::size_t>(n), 0);  // neighbours inside the region
  std::vector<int> region;
  int seed = 0;
  for (int q = 1; q < n; ++q) {
    if (g.degree(q) > g.degree(seed)) seed = q;
  }
  auto take = [&](int q) {
    chosen[q] = 1;
    region.push_back(q);
    for (int w : g.neighbors(q)) ++inside[w];
  };
  take(seed);
  while (static_cast<int>(region.size()) < k) {
    int best = -1;
    for (int q = 0; q < n; ++q) {
      if (chosen[q] || inside[q] == 0) continue;
      if (best < 0 || inside[q] > inside[best]) best = q;
    }
    take(best);
  }

  std::vector<int> interactions(static_cast<std::size_t>(k), 0);
  for (const Gate& gate : circ) {
    if (gate.is_two_qubit()) {
      ++interactions[gate.qubits[0]];
      ++interactions[gate.qubits[1]];
    }
  }
  std::vector<int> logical(static_cast<std::size_t>(k));
  std::iota(logical.begin(), logical.end(), 0);
  std::stable_sort(logical.begin(), logical.end(),
                   [&](int a, int b) { return interactions[a] > interactions[b]; });
  std::sort(region.begin(), region.end());
  std::stable_sort(region.begin(), region.end(), [&](int a, int b) { return inside[a] > inside[b]; });

  std::vector<int> map(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) map[logical[i]] = region[i];
  return Layout(std::move(map));
}

/// Circuit containing only the two-qubit gates, in order.
inline Circuit interaction_skeleton(const Circuit& circ) {
  Circuit out(circ.num_qubits());
  for (const Gate& gate : circ) {
    if (gate.is_two_qubit()) out.append(Gate{gate.kind, gate.qubits, gate.params, {}});
  }
  return out;
}

inline Layout random_layout(int num_logical, int num_physical, std::uint64_t seed) {
  std::vector<int> phys(static_cast<std::size_t>(num_physical));
  std::iota(phys.begin(), phys.end(), 0);
  Rng rng(seed);
  rng.shuffle(std::span<int>(phys));
  phys.resize(static_cast<std::size_t>(num_logical));
  return Layout(std::move(phys));
}

/// SABRE bidirectional layout search.
///
/// Each trial starts from a seeded random layout, routes forward, routes the
/// reversed circuit from the resulting final layout, and keeps that final
/// layout as its candidate. The candidate whose forward routing inserts the
/// fewest swaps wins (ties: lower trial index).
inline Layout sabre_layout(const Circuit& circ, const CouplingGraph& g, std::uint64_t seed, int trials = 4,
                           const SabreParams& params = {}) {
  layout_detail::check_fits(circ, g);
  if (trials < 1) throw std::invalid_argument("sabre layout needs at least one trial");
  const Circuit forward = interaction_skeleton(circ);
  const Circuit backward = reversed(forward);
  Layout best;
  std::size_t best_swaps = 0;
  for (int t = 0; t < trials; ++t) {
    const Layout start = random_layout(circ.num_qubits(), g.num_qubits(), mix_seed(seed, static_cast<std::uint64_t>(t)));
    const Layout after_forward = route_sabre(forward, start, g, seed, params).final_layout;
    const Layout candidate = route_sabre(backward, after_forward, g, seed, params).final_layout;
    const std::size_t swaps = route_sabre(forward, candidate, g, seed, params).swaps_added;
    if (t == 0 || swaps < best_swaps) {
      best = candidate;
      best_swaps = swaps;
    }
  }
  return best;
}

}  // namespace qdse
