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

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "qdse/circuit.hpp"

namespace qdse {

struct MetricParams {
  double f1q = 0.9982;
  double f2q = 0.9765;
  double k = 0.995;  // fidelity retained per unit of depth

  void validate() const {
    for (double v : {f1q, f2q, k}) {
      if (!(v > 0.0 && v < 1.0)) throw std::invalid_argument("metric parameters must lie in (0, 1)");
    }
  }
};

namespace metrics_detail {

inline double relative_change(double before, double after, const char* what) {
  if (before <= 0.0) throw std::invalid_argument(std::string("zero baseline ") + what);
  return (after - before) / before;
}

}  // namespace metrics_detail

/// (G_after - G_before) / G_before, barriers excluded.
inline double gate_overhead(const Circuit& before, const Circuit& after) {
  return metrics_detail::relative_change(static_cast<double>(gate_total(before)),
                                         static_cast<double>(gate_total(after)), "gate count");
}

inline double depth_overhead(const Circuit& before, const Circuit& after) {
  return metrics_detail::relative_change(static_cast<double>(depth(before)), static_cast<double>(depth(after)),
                                         "depth");
}

inline double fidelity_decrease(double f_before, double f_after) {
  if (!(f_before > 0.0) || !(f_after > 0.0)) throw std::invalid_argument("fidelities must be positive");
  return (f_before - f_after) / f_before;
}

/// -D ln K - N1q ln f1q - N2q ln f2q (natural log).
inline double circuit_cost(std::size_t depth_value, std::size_t n1q, std::size_t n2q, const MetricParams& p = {}) {
  return -static_cast<double>(depth_value) * std::log(p.k) - static_cast<double>(n1q) * std::log(p.f1q) -
         static_cast<double>(n2q) * std::log(p.f2q);
}

inline double circuit_cost(const Circuit& circ, const MetricParams& p = {}) {
  const GateCounts c = gate_counts(circ);
  if (c.three_qubit > 0) throw std::invalid_argument("decompose multi-qubit gates before computing cost");
  return circuit_cost(depth(circ), c.one_qubit, c.two_qubit, p);
}

/// C_in / C_out. Values above 1 mean the compiled circuit is cheaper.
inline double cost_improvement(const Circuit& before, const Circuit& after, const MetricParams& p = {}) {
  if (before.empty()) throw std::invalid_argument("cost improvement needs a non-empty input circuit");
  const double c_out = circuit_cost(after, p);
  if (c_out == 0.0) throw std::invalid_argument("cost improvement undefined for an empty output circuit");
  return circuit_cost(before, p) / c_out;
}

/// (d_grid - d_heavy_hex) / d_heavy_hex.
inline double relative_depth(std::size_t d_sycamore, std::size_t d_heavyhex) {
  if (d_heavyhex == 0) throw std::invalid_argument("zero baseline depth");
  return (static_cast<double>(d_sycamore) - static_cast<double>(d_heavyhex)) / static_cast<double>(d_heavyhex);
}

}  // namespace qdse
