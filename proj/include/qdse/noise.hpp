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

// Analytic fidelity estimators for routed circuits. Products are accumulated
// as sums of logarithms; reported fidelities are floored at 1e-300.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qdse/circuit.hpp"
#include "qdse/device.hpp"
#include "qdse/routing.hpp"
#include "qdse/topology.hpp"

namespace qdse {

enum class NoiseModel { SharedQubit, Simultaneous, Proximity, Thermal, Depolarizing };

inline constexpr std::array<NoiseModel, 5> kAllNoiseModels{NoiseModel::SharedQubit, NoiseModel::Simultaneous,
                                                           NoiseModel::Proximity, NoiseModel::Thermal,
                                                           NoiseModel::Depolarizing};

inline std::string_view to_string(NoiseModel m) {
  switch (m) {
    case NoiseModel::SharedQubit:
      return "shared_qubit";
    case NoiseModel::Simultaneous:
      return "simultaneous";
    case NoiseModel::Proximity:
      return "proximity";
    case NoiseModel::Thermal:
      return "thermal";
    case NoiseModel::Depolarizing:
      return "depolarizing";
  }
  return "?";
}

inline std::optional<NoiseModel> parse_noise_model(std::string_view s) {
  for (NoiseModel m : kAllNoiseModels) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

inline constexpr double kFidelityFloor = 1e-300;

struct NoiseReport {
  NoiseModel model = NoiseModel::Depolarizing;
  double base_fidelity = 1.0;
  double penalty = 1.0;
  double total = 1.0;
  double log_total = 0.0;  // natural log, unclamped
  std::size_t event_count = 0;
};

inline double harmonic_mean(double x, double y) { return 2.0 * x * y / (x + y); }

namespace noise_detail {

inline double clamp_fidelity(double log_f) { return std::clamp(std::exp(log_f), kFidelityFloor, 1.0); }

inline NoiseReport make_report(NoiseModel m, double log_base, double log_penalty, double log_total,
                               std::size_t events) {
  NoiseReport r;
  r.model = m;
  r.base_fidelity = clamp_fidelity(log_base);
  r.penalty = clamp_fidelity(log_penalty);
  r.log_total = log_total;
  r.total = clamp_fidelity(log_total);
  r.event_count = events;
  return r;
}

inline void check_native(const Circuit& circ, const DeviceSpec& dev) {
  if (circ.num_qubits() > dev.num_qubits()) throw std::invalid_argument("circuit does not fit the device");
  for (const Gate& g : circ) {
    if (!g.is_measure() && !g.is_barrier() && !dev.native.contains(g.kind)) {
      throw std::invalid_argument("non-native gate '" + std::string(g.name()) + "' in fidelity estimate");
    }
  }
}

inline double log_base(const Circuit& circ, const DeviceSpec& dev) {
  double s = 0.0;
  for (const Gate& g : circ) s += std::log(dev.fidelity(g));
  return s;
}

/// Device qubits adjacent to `g` that it does not itself act on.
inline std::vector<int> open_neighborhood(const Gate& g, const CouplingGraph& cg) {
  std::vector<int> out;
  for (Qubit q : g.qubits) {
    for (int w : cg.neighbors(q)) {
      if (!g.acts_on(w)) out.push_back(w);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<std::size_t> two_qubit_gates(const Circuit& circ, const std::vector<std::size_t>& subset) {
  std::vector<std::size_t> out;
  for (std::size_t i : subset) {
    if (circ[i].is_two_qubit()) out.push_back(i);
  }
  return out;
}

}  // namespace noise_detail

/// Product of raw gate fidelities; measures and barriers contribute 1.
inline double base_fidelity(const Circuit& circ, const DeviceSpec& dev) {
  noise_detail::check_native(circ, dev);
  return noise_detail::clamp_fidelity(noise_detail::log_base(circ, dev));
}

/// Shared-qubit crosstalk. Every unordered pair of two-qubit gates that share
/// a qubit or touch device-adjacent qubits contributes H(Fa, Fb)^n, in any
/// layer. Each one-qubit gate on a qubit adjacent to the pair (and not part of
/// it) contributes a further H^(n*w).
inline NoiseReport fid_shared_qubit(const Circuit& circ, const DeviceSpec& dev) {
  using namespace noise_detail;
  check_native(circ, dev);
  const CouplingGraph& cg = dev.coupling();
  if (!satisfies_adjacency(circ, cg)) throw std::invalid_argument("circuit is not routed for this device");
  const int n = dev.num_qubits();
  const double amp = dev.xtalk.n;
  const double w = dev.xtalk.single_qubit_weight;

  std::vector<double> ones(static_cast<std::size_t>(n), 0.0);  // one-qubit gate count per qubit
  struct Two {
    int a, b;
    double f;
    std::vector<int> hood;
  };
  std::vector<Two> twos;
  for (const Gate& g : circ) {
    if (g.is_single_qubit_op()) ones[g.qubits[0]] += 1.0;
    if (g.is_two_qubit()) twos.push_back({g.qubits[0], g.qubits[1], dev.fidelity(g), open_neighborhood(g, cg)});
  }

  // touching[q] lists the two-qubit gates acting on q.
  std::vector<std::vector<std::size_t>> touching(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < twos.size(); ++i) {
    touching[twos[i].a].push_back(i);
    touching[twos[i].b].push_back(i);
  }

  std::vector<std::size_t> mark(twos.size(), static_cast<std::size_t>(-1));
  std::vector<std::size_t> stamp(static_cast<std::size_t>(n), 0);
  std::size_t stamp_id = 0;
  double log_pen = 0.0;
  std::size_t events = 0;
  for (std::size_t i = 0; i < twos.size(); ++i) {
    const Two& x = twos[i];
    std::vector<std::size_t> partners;
    auto collect = [&](int q) {
      for (std::size_t j : touching[q]) {
        if (j > i && mark[j] != i) {
          mark[j] = i;
          partners.push_back(j);
        }
      }
    };
    collect(x.a);
    collect(x.b);
    for (int q : x.hood) collect(q);
    std::sort(partners.begin(), partners.end());
    for (std::size_t j : partners) {
      const Two& y = twos[j];
      const double log_h = std::log(harmonic_mean(x.f, y.f));
      ++stamp_id;
      stamp[x.a] = stamp[x.b] = stamp[y.a] = stamp[y.b] = stamp_id;
      double nearby = 0.0;
      for (const auto* hood : {&x.hood, &y.hood}) {
        for (int q : *hood) {
          if (stamp[q] != stamp_id) {
            stamp[q] = stamp_id;
            nearby += ones[q];
          }
        }
      }
      log_pen += amp * log_h * (1.0 + w * nearby);
      events += 1 + static_cast<std::size_t>(nearby);
    }
  }
  const double lb = log_base(circ, dev);
  return make_report(NoiseModel::SharedQubit, lb, log_pen, lb + log_pen, events);
}

/// Simultaneous-execution crosstalk. Every pair of two-qubit gates in the same
/// layer contributes H(Fa, Fb)^k regardless of distance; each one-qubit gate
/// of the layer sitting next to a penalised gate contributes F^(n*w) once.
inline NoiseReport fid_simultaneous(const Circuit& circ, const Schedule& sched, const DeviceSpec& dev) {
  using namespace noise_detail;
  check_native(circ, dev);
  const CouplingGraph& cg = dev.coupling();
  std::size_t placed = 0;
  for (const auto& layer : sched.layers) placed += layer.size();
  if (placed != circ.size() - gate_counts(circ).barriers) {
    throw std::invalid_argument("schedule does not match circuit");
  }
  const double exp_n1 = dev.xtalk.n * dev.xtalk.single_qubit_weight;
  double log_pen = 0.0;
  std::size_t events = 0;
  std::vector<char> hot(static_cast<std::size_t>(dev.num_qubits()), 0);
  for (const auto& layer : sched.layers) {
    const auto twos = two_qubit_gates(circ, layer);
    if (twos.size() < 2) continue;
    for (std::size_t i = 0; i < twos.size(); ++i) {
      for (std::size_t j = i + 1; j < twos.size(); ++j) {
        log_pen += dev.xtalk.k * std::log(harmonic_mean(dev.fidelity(circ[twos[i]]), dev.fidelity(circ[twos[j]])));
        ++events;
      }
    }
    std::fill(hot.begin(), hot.end(), 0);
    for (std::size_t gi : twos) {
      for (Qubit q : circ[gi].qubits) {
        for (int w : cg.neighbors(q)) hot[w] = 1;
      }
    }
    for (std::size_t gi : layer) {
      const Gate& g = circ[gi];
      if (g.is_single_qubit_op() && hot[g.qubits[0]]) {
        log_pen += exp_n1 * std::log(dev.fidelity(g));
        ++events;
      }
    }
  }
  const double lb = log_base(circ, dev);
  return make_report(NoiseModel::Simultaneous, lb, log_pen, lb + log_pen, events);
}

/// Proximity crosstalk on ASAP layers. Pairs of co-layered two-qubit gates
/// whose closest endpoints lie within r_max (Euclidean) contribute H^n; each
/// one-qubit gate of the layer within r_max of a penalised gate contributes
/// F^(n*w) once.
inline NoiseReport fid_proximity(const Circuit& circ, const DeviceSpec& dev) {
  using namespace noise_detail;
  check_native(circ, dev);
  const CouplingGraph& cg = dev.coupling();
  if (!cg.has_coords()) throw std::invalid_argument("proximity model needs qubit coordinates");
  const double r_max = dev.xtalk.r_max;
  const double eps = 1e-9;
  auto min_dist = [&](const Gate& a, const Gate& b) {
    double best = std::numeric_limits<double>::infinity();
    for (Qubit p : a.qubits) {
      for (Qubit q : b.qubits) best = std::min(best, euclidean(cg.coord(p), cg.coord(q)));
    }
    return best;
  };
  const Schedule sched = schedule(circ, SchedulePolicy::ASAP);
  const double exp_n1 = dev.xtalk.n * dev.xtalk.single_qubit_weight;
  double log_pen = 0.0;
  std::size_t events = 0;
  for (const auto& layer : sched.layers) {
    const auto twos = two_qubit_gates(circ, layer);
    if (twos.size() < 2) continue;
    std::vector<char> penalised(twos.size(), 0);
    for (std::size_t i = 0; i < twos.size(); ++i) {
      for (std::size_t j = i + 1; j < twos.size(); ++j) {
        const Gate& a = circ[twos[i]];
        const Gate& b = circ[twos[j]];
        if (min_dist(a, b) > r_max + eps) continue;
        log_pen += dev.xtalk.n * std::log(harmonic_mean(dev.fidelity(a), dev.fidelity(b)));
        penalised[i] = penalised[j] = 1;
        ++events;
      }
    }
    for (std::size_t gi : layer) {
      const Gate& g = circ[gi];
      if (!g.is_single_qubit_op()) continue;
      for (std::size_t i = 0; i < twos.size(); ++i) {
        if (penalised[i] && min_dist(g, circ[twos[i]]) <= r_max + eps) {
          log_pen += exp_n1 * std::log(dev.fidelity(g));
          ++events;
          break;
        }
      }
    }
  }
  const double lb = log_base(circ, dev);
  return make_report(NoiseModel::Proximity, lb, log_pen, lb + log_pen, events);
}

/// Thermal relaxation. Each layer adds its longest gate duration to every
/// qubit active in it; qubit q then decays as exp(-t/T1) * exp(-t/Tphi) with
/// 1/Tphi = 1/T2 - 1/(2 T1). Gate errors are not included, so penalty and
/// total coincide and base_fidelity is informational.
inline NoiseReport fid_thermal(const Circuit& circ, const Schedule& sched, const DeviceSpec& dev) {
  using namespace noise_detail;
  if (circ.num_qubits() > dev.num_qubits()) throw std::invalid_argument("circuit does not fit the device");
  const int n = circ.num_qubits();
  std::vector<double> busy(static_cast<std::size_t>(n), 0.0);
  for (const auto& layer : sched.layers) {
    double longest = 0.0;
    for (std::size_t gi : layer) longest = std::max(longest, dev.duration_of(circ[gi].kind));
    for (std::size_t gi : layer) {
      for (Qubit q : circ[gi].qubits) busy[q] += longest;
    }
  }
  double log_f = 0.0;
  for (int q = 0; q < n; ++q) {
    const double t1 = dev.t1_of(q);
    const double t2 = dev.t2_of(q);
    if (t2 > 2.0 * t1) throw std::invalid_argument("T2 exceeds 2*T1 on qubit " + std::to_string(q));
    const double inv_tphi = 1.0 / t2 - 1.0 / (2.0 * t1);
    log_f -= busy[q] / t1 + busy[q] * inv_tphi;
  }
  double lb = 0.0;
  for (const Gate& g : circ) lb += std::log(dev.fidelity(g));
  return make_report(NoiseModel::Thermal, lb, log_f, log_f, static_cast<std::size_t>(sched.num_layers()));
}

/// Depolarisation: every gate contributes F(gate) * (1 - p(gate)).
/// Measures and barriers are skipped.
inline NoiseReport fid_depolarizing(const Circuit& circ, const DeviceSpec& dev) {
  using namespace noise_detail;
  check_native(circ, dev);
  double log_pen = 0.0;
  std::size_t events = 0;
  for (const Gate& g : circ) {
    if (g.is_measure() || g.is_barrier()) continue;
    log_pen += std::log1p(-dev.depol_of(g.kind));
    ++events;
  }
  const double lb = log_base(circ, dev);
  return make_report(NoiseModel::Depolarizing, lb, log_pen, lb + log_pen, events);
}

/// Runs one model. `sched` is used by the schedule-dependent models.
inline NoiseReport evaluate_noise(NoiseModel m, const Circuit& circ, const Schedule& sched, const DeviceSpec& dev) {
  switch (m) {
    case NoiseModel::SharedQubit:
      return fid_shared_qubit(circ, dev);
    case NoiseModel::Simultaneous:
      return fid_simultaneous(circ, sched, dev);
    case NoiseModel::Proximity:
      return fid_proximity(circ, dev);
    case NoiseModel::Thermal:
      return fid_thermal(circ, sched, dev);
    case NoiseModel::Depolarizing:
      return fid_depolarizing(circ, dev);
  }
  throw std::logic_error("unreachable noise model");
}

/// Copy of `dev` with an all-to-all coupling graph on `num_qubits` qubits laid
/// out on a unit-spaced square grid. Used to score logical circuits.
inline DeviceSpec virtual_all_to_all(const DeviceSpec& dev, int num_qubits) {
  const int side = std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(num_qubits)))));
  std::vector<Point> coords;
  for (int q = 0; q < num_qubits; ++q) coords.push_back({static_cast<double>(q % side), static_cast<double>(q / side)});
  DeviceSpec out = dev;
  out.graph = std::make_shared<const CouplingGraph>(complete_graph(num_qubits, std::move(coords)));
  out.edge_fidelity.clear();
  if (!out.t1.empty()) out.t1.resize(static_cast<std::size_t>(num_qubits), dev.default_t1);
  if (!out.t2.empty()) out.t2.resize(static_cast<std::size_t>(num_qubits), dev.default_t2);
  return out;
}

}  // namespace qdse
