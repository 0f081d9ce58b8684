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
#include "qdse/decompose.hpp"
#include "qdse/metrics.hpp"

using namespace qdse;
using enum GateKind;

namespace {

Circuit ones(int n) {
  Circuit c(1);
  for (int i = 0; i < n; ++i) c.add(X, {0});
  return c;
}

Circuit stacked(int depth_value) {
  Circuit c(2);
  for (int i = 0; i < depth_value; ++i) c.add(CX, {0, 1});
  return c;
}

}  // namespace

TEST(metrics, gate_overhead) {
  EXPECT_DOUBLE_EQ(gate_overhead(ones(100), ones(150)), 0.5);
  EXPECT_DOUBLE_EQ(gate_overhead(ones(10), ones(10)), 0.0);
  EXPECT_DOUBLE_EQ(gate_overhead(ones(10), ones(7)), -0.3);
  EXPECT_THROW(gate_overhead(Circuit(1), ones(3)), std::invalid_argument);
  Circuit with_barrier = ones(2);
  with_barrier.add(Barrier, {0});
  EXPECT_DOUBLE_EQ(gate_overhead(ones(2), with_barrier), 0.0);
}

TEST(metrics, depth_overhead) {
  EXPECT_DOUBLE_EQ(depth_overhead(stacked(3), stacked(3)), 0.0);
  EXPECT_DOUBLE_EQ(depth_overhead(stacked(4), stacked(6)), 0.5);
  EXPECT_THROW(depth_overhead(Circuit(2), stacked(1)), std::invalid_argument);
}

TEST(metrics, fidelity_decrease) {
  EXPECT_DOUBLE_EQ(fidelity_decrease(0.8, 0.8), 0.0);
  EXPECT_NEAR(fidelity_decrease(1.0, 0.9), 0.1, 1e-15);
  const double f = 0.9765;
  EXPECT_NEAR(fidelity_decrease(f, f * f * f), 1.0 - f * f, 1e-15);
  EXPECT_NEAR(fidelity_decrease(f, f * f * f), 0.0464477, 1e-7);
  EXPECT_THROW(fidelity_decrease(0.0, 0.5), std::invalid_argument);
  EXPECT_THROW(fidelity_decrease(0.5, -0.1), std::invalid_argument);
}

TEST(metrics, circuit_cost) {
  const double c_in = circuit_cost(10, 5, 2);
  EXPECT_NEAR(c_in, -10 * std::log(0.995) - 5 * std::log(0.9982) - 2 * std::log(0.9765), 1e-15);
  EXPECT_NEAR(c_in, 0.1066946, 1e-7);
  EXPECT_DOUBLE_EQ(circuit_cost(0, 0, 0), 0.0);
  Circuit t(3);
  t.add(CCX, {0, 1, 2});
  EXPECT_THROW(circuit_cost(t), std::invalid_argument);
}

TEST(metrics, cost_improvement) {
  const Circuit c = decompose(expand_multi_qubit(generate("qft:5")), device_basis());
  EXPECT_DOUBLE_EQ(cost_improvement(c, c), 1.0);
  Circuit before(2);
  before.add(X, {0}).add(CX, {0, 1}).add(CX, {0, 1}).add(X, {1});
  Circuit after(2);
  after.add(X, {0}).add(CX, {0, 1}).add(X, {1});
  EXPECT_GT(cost_improvement(before, after), 1.0);
  EXPECT_THROW(cost_improvement(Circuit(2), after), std::invalid_argument);
  EXPECT_THROW(cost_improvement(before, Circuit(2)), std::invalid_argument);
}

TEST(metrics, cost_improvement_is_scale_and_base_invariant) {
  const Circuit a = decompose(generate("ghz:6"), device_basis());
  const Circuit b = decompose(generate("qft:4"), device_basis());
  const double c1 = cost_improvement(a, b);
  const GateCounts ka = gate_counts(a);
  const GateCounts kb = gate_counts(b);
  const double doubled = circuit_cost(2 * depth(a), 2 * ka.one_qubit, 2 * ka.two_qubit) /
                         circuit_cost(2 * depth(b), 2 * kb.one_qubit, 2 * kb.two_qubit);
  EXPECT_NEAR(doubled, c1, 1e-12);

  const MetricParams p;
  auto cost_base = [&](const GateCounts& k, std::size_t d, double base) {
    return -(d * std::log(p.k) + k.one_qubit * std::log(p.f1q) + k.two_qubit * std::log(p.f2q)) / std::log(base);
  };
  EXPECT_NEAR(cost_base(ka, depth(a), 2.0) / cost_base(kb, depth(b), 2.0), c1, 1e-12);
  EXPECT_NEAR(cost_base(ka, depth(a), 10.0) / cost_base(kb, depth(b), 10.0), c1, 1e-12);
}

TEST(metrics, relative_depth) {
  EXPECT_DOUBLE_EQ(relative_depth(100, 100), 0.0);
  EXPECT_DOUBLE_EQ(relative_depth(120, 100), 0.2);
  EXPECT_DOUBLE_EQ(relative_depth(80, 100), -0.2);
  EXPECT_THROW(relative_depth(5, 0), std::invalid_argument);
}

TEST(metrics, params_validate) {
  EXPECT_NO_THROW(MetricParams{}.validate());
  EXPECT_THROW((MetricParams{1.0, 0.9, 0.9}.validate()), std::invalid_argument);
  EXPECT_THROW((MetricParams{0.9, 0.9, 0.0}.validate()), std::invalid_argument);
}
