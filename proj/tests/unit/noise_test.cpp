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

#include <gtest/gtest.h>

#include <cmath>

#include "qdse/bench.hpp"
#include "qdse/noise.hpp"
#include "qdse/transpile.hpp"

using namespace qdse;
using enum GateKind;

namespace {

constexpr double kF2 = 0.9765;
constexpr double kF1 = 0.9982;

DeviceSpec line(int n) { return make_device(path_graph(n)); }

NoiseReport simultaneous(const Circuit& c, const DeviceSpec& dev) {
  return fid_simultaneous(c, schedule(c, SchedulePolicy::ASAP), dev);
}

NoiseReport thermal(const Circuit& c, const DeviceSpec& dev) {
  return fid_thermal(c, schedule(c, SchedulePolicy::ASAP), dev);
}

}  // namespace

TEST(noise, harmonic_mean) {
  EXPECT_NEAR(harmonic_mean(0.98, 0.96), 0.969897, 1e-6);
  EXPECT_DOUBLE_EQ(harmonic_mean(0.9, 0.9), 0.9);
  for (double x : {0.1, 0.5, 0.99}) {
    for (double y : {0.2, 0.7, 1.0}) {
      EXPECT_GE(harmonic_mean(x, y), std::min(x, y) - 1e-15);
      EXPECT_LE(harmonic_mean(x, y), std::max(x, y) + 1e-15);
    }
  }
}

TEST(noise, base_fidelity) {
  const DeviceSpec dev = line(3);
  EXPECT_DOUBLE_EQ(base_fidelity(Circuit(3), dev), 1.0);
  Circuit one(3);
  one.add(CX, {0, 1});
  EXPECT_NEAR(base_fidelity(one, dev), kF2, 1e-15);
  Circuit c(3, 1);
  c.add(CX, {0, 1}).add(CX, {1, 2}).add(RZ, {0}, {0.1}).add(Barrier, {0, 1, 2}).measure(2, 0);
  EXPECT_NEAR(base_fidelity(c, dev), kF2 * kF2 * kF1, 1e-15);
  EXPECT_NEAR(base_fidelity(c, dev), 0.9518359, 1e-7);
  Circuit bad(3);
  bad.add(H, {0});
  EXPECT_THROW(base_fidelity(bad, dev), std::invalid_argument);
}

TEST(noise, shared_qubit) {
  const DeviceSpec dev = line(6);
  Circuit single(6);
  single.add(CX, {0, 1});
  const NoiseReport r1 = fid_shared_qubit(single, dev);
  EXPECT_DOUBLE_EQ(r1.penalty, 1.0);
  EXPECT_NEAR(r1.total, kF2, 1e-15);

  Circuit far(6);
  far.add(CX, {0, 1}).add(CX, {4, 5});
  EXPECT_DOUBLE_EQ(fid_shared_qubit(far, dev).penalty, 1.0);

  Circuit chain(6);
  chain.add(CX, {0, 1}).add(CX, {1, 2});
  const NoiseReport r2 = fid_shared_qubit(chain, dev);
  EXPECT_NEAR(r2.penalty, kF2, 1e-12);
  EXPECT_NEAR(r2.total, kF2 * kF2 * kF2, 1e-12);
  EXPECT_EQ(r2.event_count, 1u);

  // Neighbouring (not sharing) pair: 0-1 and 2-3 are joined by the 1-2 edge.
  Circuit neighbours(6);
  neighbours.add(CX, {0, 1}).add(CX, {2, 3});
  EXPECT_NEAR(fid_shared_qubit(neighbours, dev).penalty, kF2, 1e-12);
}

TEST(noise, shared_qubit_single_qubit_term) {
  const DeviceSpec dev = line(6);
  Circuit c(6);
  c.add(CX, {0, 1}).add(CX, {1, 2}).add(SX, {3});
  // Qubit 3 neighbours the pair; the term is H^(n*w) with H = f2q.
  EXPECT_NEAR(fid_shared_qubit(c, dev).penalty, kF2 * std::pow(kF2, 0.5), 1e-12);
  Circuit self(6);
  self.add(CX, {0, 1}).add(CX, {1, 2}).add(SX, {1});
  EXPECT_NEAR(fid_shared_qubit(self, dev).penalty, kF2, 1e-12);
}

TEST(noise, shared_qubit_ignores_layers) {
  const DeviceSpec dev = line(4);
  Circuit a(4);
  a.add(CX, {0, 1}).add(CX, {1, 2});
  Circuit b(4);
  b.add(CX, {0, 1}).add(X, {0}).add(X, {0}).add(CX, {1, 2});
  EXPECT_NEAR(fid_shared_qubit(b, dev).penalty, fid_shared_qubit(a, dev).penalty, 1e-15);
}

TEST(noise, shared_qubit_requires_routed_circuit) {
  Circuit c(3);
  c.add(CX, {0, 2});
  EXPECT_THROW(fid_shared_qubit(c, line(3)), std::invalid_argument);
}

TEST(noise, simultaneous) {
  const DeviceSpec dev = line(6);
  Circuit serial(6);
  serial.add(CX, {0, 1}).add(CX, {1, 2}).add(CX, {2, 3});
  EXPECT_DOUBLE_EQ(simultaneous(serial, dev).penalty, 1.0);

  Circuit parallel(6);
  parallel.add(CX, {0, 1}).add(CX, {4, 5});
  const NoiseReport r = simultaneous(parallel, dev);
  EXPECT_NEAR(r.penalty, kF2, 1e-12);
  EXPECT_EQ(r.event_count, 1u);

  Circuit lone(6);
  lone.add(CX, {0, 1}).add(RZ, {2}, {0.3});
  EXPECT_DOUBLE_EQ(simultaneous(lone, dev).penalty, 1.0);

  Circuit with_one(6);
  with_one.add(CX, {0, 1}).add(CX, {4, 5}).add(RZ, {2}, {0.3});
  EXPECT_NEAR(simultaneous(with_one, dev).penalty, kF2 * std::pow(kF1, 0.5), 1e-12);
}

TEST(noise, simultaneous_rejects_foreign_schedule) {
  Circuit c(3);
  c.add(CX, {0, 1}).add(CX, {1, 2});
  Circuit other(3);
  other.add(X, {0});
  EXPECT_THROW(fid_simultaneous(c, schedule(other, SchedulePolicy::ASAP), line(3)), std::invalid_argument);
}

TEST(noise, proximity) {
  const DeviceSpec grid = make_device(sycamore_grid(4, 4));
  Circuit near(16);
  near.add(CX, {0, 1}).add(CX, {4, 5});
  EXPECT_NEAR(fid_proximity(near, grid).penalty, kF2, 1e-12);

  const DeviceSpec path = line(8);
  Circuit far(8);
  far.add(CX, {0, 1}).add(CX, {4, 5});
  EXPECT_DOUBLE_EQ(fid_proximity(far, path).penalty, 1.0);
  Circuit edge(8);
  edge.add(CX, {0, 1}).add(CX, {3, 4});
  EXPECT_NEAR(fid_proximity(edge, path).penalty, kF2, 1e-12);

  const DeviceSpec bare = make_device(CouplingGraph(2, {Edge(0, 1)}));
  EXPECT_THROW(fid_proximity(Circuit(2), bare), std::invalid_argument);
}

TEST(noise, proximity_unchanged_by_densify) {
  const CouplingGraph base = sycamore_grid(4, 4);
  Circuit c(16);
  c.add(CX, {0, 1}).add(CX, {4, 5}).add(SX, {2}).add(CX, {10, 11}).add(CX, {1, 2});
  const DeviceSpec a = make_device(base);
  const DeviceSpec b = make_device(densify(base, 0.6, 3));
  EXPECT_DOUBLE_EQ(fid_proximity(c, a).penalty, fid_proximity(c, b).penalty);
}

TEST(noise, thermal) {
  const DeviceSpec dev = line(2);
  EXPECT_DOUBLE_EQ(thermal(Circuit(2), dev).total, 1.0);
  Circuit m(1, 1);
  m.measure(0, 0);
  const NoiseReport r = thermal(m, dev);
  EXPECT_NEAR(r.total, std::exp(-0.0175), 1e-12);
  EXPECT_NEAR(r.total, 0.982652, 1e-6);
  EXPECT_DOUBLE_EQ(r.penalty, r.total);

  DeviceSpec limit = dev;
  limit.default_t2 = 2.0 * limit.default_t1;
  EXPECT_NEAR(thermal(m, limit).total, std::exp(-1.0 / 100.0), 1e-15);
  DeviceSpec bad = dev;
  bad.default_t2 = 250.0;
  EXPECT_THROW(thermal(m, bad), std::invalid_argument);
}

TEST(noise, thermal_layers_charge_longest_gate) {
  const DeviceSpec dev = line(2);
  Circuit c(2);
  c.add(CX, {0, 1}).add(SX, {0});
  // Layer 1: cx on both qubits (0.3). Layer 2: sx on qubit 0 only (0.035).
  const double rate = 1.0 / 100.0 + (1.0 / 80.0 - 1.0 / 200.0);
  EXPECT_NEAR(thermal(c, dev).total, std::exp(-rate * (0.3 + 0.035 + 0.3)), 1e-12);
  Circuit par(2);
  par.add(SX, {0}).add(X, {1});
  EXPECT_NEAR(thermal(par, dev).total, std::exp(-rate * 2 * 0.035), 1e-12);
}

TEST(noise, depolarizing) {
  DeviceSpec dev = line(2);
  Circuit ten(1);
  for (int i = 0; i < 10; ++i) ten.add(X, {0});
  DeviceSpec ideal = dev;
  ideal.f1q = 1.0;
  ideal.depol[static_cast<std::size_t>(X)] = 0.01;
  EXPECT_NEAR(fid_depolarizing(ten, ideal).total, std::pow(0.99, 10), 1e-12);
  EXPECT_NEAR(fid_depolarizing(ten, ideal).total, 0.9043821, 1e-7);

  Circuit one(2);
  one.add(CX, {0, 1});
  EXPECT_NEAR(fid_depolarizing(one, dev).total, 0.966735, 1e-9);

  DeviceSpec noiseless = dev;
  for (auto& p : noiseless.depol) {
    if (p) p = 0.0;
  }
  EXPECT_DOUBLE_EQ(fid_depolarizing(one, noiseless).total, fid_depolarizing(one, noiseless).base_fidelity);

  DeviceSpec missing = dev;
  missing.depol[static_cast<std::size_t>(CX)].reset();
  EXPECT_THROW(fid_depolarizing(one, missing), std::invalid_argument);
}

TEST(noise, floor_and_log) {
  const DeviceSpec dev = line(2);
  Circuit deep(2);
  for (int i = 0; i < 40000; ++i) deep.add(CX, {0, 1});
  const NoiseReport r = fid_depolarizing(deep, dev);
  EXPECT_EQ(r.total, kFidelityFloor);
  EXPECT_NEAR(r.log_total, 40000 * (std::log(kF2) + std::log(0.99)), 1e-6);
}

TEST(noise, totals_are_bounded_on_transpiled_suite) {
  DeviceSpec dev = make_device(heavy_hex(2, 2));
  for (const char* name : {"ghz:8", "qft:8", "qaoa:8:1:1", "grover:4", "random:8:1", "surface_code:3"}) {
    PassConfig cfg;
    cfg.seed = 3;
    const TranspileResult t = transpile(generate(name), dev, cfg);
    for (NoiseModel m : kAllNoiseModels) {
      const NoiseReport r = evaluate_noise(m, t.routed.circuit, t.schedule, dev);
      EXPECT_GT(r.total, 0.0) << name << " " << to_string(m);
      EXPECT_LE(r.total, 1.0);
      EXPECT_LE(r.penalty, 1.0);
      if (m != NoiseModel::Thermal) {
        EXPECT_LE(r.total, r.base_fidelity + 1e-15);
      }
    }
  }
}

TEST(noise, exponents_are_monotone) {
  const DeviceSpec base = make_device(heavy_hex(1, 2));
  PassConfig cfg;
  cfg.seed = 1;
  const TranspileResult t = transpile(generate("qft:8"), base, cfg);
  double prev[3] = {1.0, 1.0, 1.0};
  for (double amp : {0.5, 1.0, 2.0, 4.0}) {
    DeviceSpec dev = base;
    dev.xtalk.n = amp;
    dev.xtalk.k = amp;
    const double cur[3] = {fid_shared_qubit(t.routed.circuit, dev).total,
                           fid_simultaneous(t.routed.circuit, t.schedule, dev).total,
                           fid_proximity(t.routed.circuit, dev).total};
    for (int i = 0; i < 3; ++i) {
      EXPECT_LE(cur[i], prev[i] + 1e-15) << i << " " << amp;
      prev[i] = cur[i];
    }
  }
}

TEST(noise, model_names) {
  for (NoiseModel m : kAllNoiseModels) EXPECT_EQ(parse_noise_model(to_string(m)), m);
  EXPECT_FALSE(parse_noise_model("readout"));
}

TEST(noise, virtual_all_to_all) {
  const DeviceSpec dev = make_device(path_graph(3));
  const DeviceSpec v = virtual_all_to_all(dev, 5);
  EXPECT_EQ(v.num_qubits(), 5);
  EXPECT_EQ(v.coupling().num_edges(), 10u);
  EXPECT_TRUE(v.coupling().has_coords());
  EXPECT_DOUBLE_EQ(euclidean(v.coupling().coord(0), v.coupling().coord(4)), std::sqrt(2.0));
}
