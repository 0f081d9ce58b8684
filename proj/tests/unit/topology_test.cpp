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

#include <algorithm>
#include <queue>
#include <set>

#include "qdse/device.hpp"
#include "qdse/topology.hpp"

using namespace qdse;

namespace {

bool is_connected(const CouplingGraph& g) {
  std::vector<bool> seen(static_cast<std::size_t>(g.num_qubits()), false);
  std::queue<int> todo;
  todo.push(0);
  seen[0] = true;
  int count = 1;
  while (!todo.empty()) {
    const int q = todo.front();
    todo.pop();
    for (int nb : g.neighbors(q)) {
      if (!seen[nb]) {
        seen[nb] = true;
        ++count;
        todo.push(nb);
      }
    }
  }
  return count == g.num_qubits();
}

std::set<Edge> edge_set(const CouplingGraph& g) { return {g.edges().begin(), g.edges().end()}; }

}  // namespace

TEST(topology, graph_rejects_bad_edges) {
  EXPECT_THROW(CouplingGraph(0, {}), std::invalid_argument);
  EXPECT_THROW(CouplingGraph(2, {Edge(0, 0)}), std::invalid_argument);
  EXPECT_THROW(CouplingGraph(2, {Edge(0, 2)}), std::invalid_argument);
  EXPECT_THROW(CouplingGraph(2, {Edge(0, 1), Edge(1, 0)}), std::invalid_argument);
  EXPECT_THROW(CouplingGraph(2, {Edge(0, 1)}, {Point{0, 0}, Point{0, 0}}), std::invalid_argument);
}

TEST(topology, distances_on_path) {
  const CouplingGraph g = path_graph(5);
  EXPECT_EQ(g.distance(0, 4), 4);
  EXPECT_EQ(g.distance(3, 1), 2);
  EXPECT_EQ(g.distances().diameter(), 4);
  EXPECT_TRUE(g.adjacent(2, 3));
  EXPECT_FALSE(g.adjacent(1, 3));
  EXPECT_EQ(g.degree(0), 1);
  EXPECT_EQ(g.degree(2), 2);
}

TEST(topology, rejects_disconnected_graph) {
  EXPECT_THROW(CouplingGraph(3, {Edge(0, 1)}), std::invalid_argument);
}

TEST(topology, density) {
  EXPECT_NEAR(connectivity_density(path_graph(128)), 127.0 / 8128.0, 1e-15);
  EXPECT_DOUBLE_EQ(connectivity_density(sycamore_grid(6, 6)), 60.0 / 630.0);
  EXPECT_DOUBLE_EQ(connectivity_density(complete_graph(7)), 1.0);
  EXPECT_THROW(connectivity_density(path_graph(1)), std::invalid_argument);
}

TEST(topology, grid_shape) {
  const CouplingGraph g = sycamore_grid(12, 12);
  EXPECT_EQ(g.num_qubits(), 144);
  EXPECT_EQ(g.num_edges(), 264u);
  EXPECT_EQ(g.distances().diameter(), 22);
  EXPECT_TRUE(g.has_coords());
  EXPECT_DOUBLE_EQ(euclidean(g.coord(0), g.coord(13)), std::sqrt(2.0));
}

TEST(topology, heavy_hex_single_cell_is_a_twelve_cycle) {
  const CouplingGraph g = heavy_hex(1, 1);
  EXPECT_EQ(g.num_qubits(), 12);
  EXPECT_EQ(g.num_edges(), 12u);
  for (int q = 0; q < 12; ++q) EXPECT_EQ(g.degree(q), 2);
  EXPECT_TRUE(is_connected(g));
  EXPECT_EQ(g.distances().diameter(), 6);
}

TEST(topology, heavy_hex_sizes) {
  EXPECT_EQ(heavy_hex(2, 1).num_qubits(), 21);
  EXPECT_EQ(heavy_hex_size(2, 1), 21);
  for (int r = 1; r <= 6; ++r) {
    for (int c = 1; c <= 6; ++c) {
      const CouplingGraph g = heavy_hex(r, c);
      ASSERT_EQ(g.num_qubits(), heavy_hex_size(r, c)) << r << "x" << c;
      EXPECT_TRUE(is_connected(g));
      int max_degree = 0;
      for (int q = 0; q < g.num_qubits(); ++q) max_degree = std::max(max_degree, g.degree(q));
      EXPECT_LE(max_degree, 3);
    }
  }
  EXPECT_EQ(heavy_hex(6, 4).num_qubits(), 159);
}

TEST(topology, heavy_hex_has_unit_spaced_neighbours) {
  const CouplingGraph g = heavy_hex(3, 3);
  for (const Edge& e : g.edges()) EXPECT_NEAR(euclidean(g.coord(e.u), g.coord(e.v)), 0.5, 1e-9);
}

TEST(topology, crop_keeps_graph_connected) {
  for (int target : {143, 128, 64, 20}) {
    const CouplingGraph g = heavy_hex(6, 4, target);
    EXPECT_EQ(g.num_qubits(), target);
    EXPECT_TRUE(is_connected(g)) << target;
    EXPECT_TRUE(g.has_coords());
  }
  EXPECT_THROW(crop(path_graph(4), 5), std::invalid_argument);
  EXPECT_THROW(crop(path_graph(4), 0), std::invalid_argument);
}

TEST(topology, crop_is_deterministic) {
  EXPECT_EQ(edge_set(heavy_hex(6, 4, 128)), edge_set(heavy_hex(6, 4, 128)));
}

TEST(topology, densify_hits_edge_target) {
  const CouplingGraph base = sycamore_grid(6, 6);
  const CouplingGraph d = densify(base, 0.3, 7);
  EXPECT_EQ(d.num_edges(), 189u);
  EXPECT_GE(connectivity_density(d), 0.3);
  const auto base_edges = edge_set(base);
  const auto dense_edges = edge_set(d);
  EXPECT_TRUE(std::includes(dense_edges.begin(), dense_edges.end(), base_edges.begin(), base_edges.end()));
}

TEST(topology, densify_is_monotone_for_fixed_seed) {
  const CouplingGraph base = heavy_hex(2, 2);
  std::set<Edge> prev = edge_set(base);
  for (double t : {0.1, 0.2, 0.3, 0.5, 0.8, 1.0}) {
    const auto cur = edge_set(densify(base, t, 42));
    EXPECT_TRUE(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end())) << t;
    prev = cur;
  }
  EXPECT_EQ(prev.size(), max_edges(base.num_qubits()));
}

TEST(topology, densify_seed_changes_edges) {
  const CouplingGraph base = sycamore_grid(4, 4);
  EXPECT_EQ(edge_set(densify(base, 0.5, 1)), edge_set(densify(base, 0.5, 1)));
  EXPECT_NE(edge_set(densify(base, 0.5, 1)), edge_set(densify(base, 0.5, 2)));
}

TEST(topology, densify_rejects_lower_target) {
  EXPECT_THROW(densify(sycamore_grid(3, 3), 0.05, 0), std::invalid_argument);
  EXPECT_THROW(densify(sycamore_grid(3, 3), 1.5, 0), std::invalid_argument);
  EXPECT_EQ(densify(sycamore_grid(3, 3), 12.0 / 36.0, 0).num_edges(), 12u);
}

TEST(topology, edge_list_round_trip) {
  const CouplingGraph g = heavy_hex(1, 2);
  const CouplingGraph back = parse_edge_list(to_edge_list(g));
  EXPECT_EQ(back.num_qubits(), g.num_qubits());
  EXPECT_EQ(edge_set(back), edge_set(g));
  const CouplingGraph c = parse_edge_list("# comment\n3\n0 1  # first\n\n1 2\n");
  EXPECT_EQ(c.num_edges(), 2u);
  EXPECT_THROW(parse_edge_list(""), std::invalid_argument);
  EXPECT_THROW(parse_edge_list("3\n0 3\n"), std::invalid_argument);
  EXPECT_THROW(parse_edge_list("3\n0 x\n"), std::invalid_argument);
  EXPECT_THROW(parse_edge_list("3\n0 1 2\n"), std::invalid_argument);
  EXPECT_THROW(parse_edge_list("3\n1 1\n"), std::invalid_argument);
}

TEST(device, defaults_and_overrides) {
  DeviceSpec dev = make_device(path_graph(3));
  EXPECT_DOUBLE_EQ(dev.fidelity(make_gate(GateKind::SX, {0})), 0.9982);
  EXPECT_DOUBLE_EQ(dev.fidelity(make_gate(GateKind::CX, {0, 1})), 0.9765);
  dev.edge_fidelity[Edge(1, 2)] = 0.95;
  EXPECT_DOUBLE_EQ(dev.fidelity(make_gate(GateKind::CX, {2, 1})), 0.95);
  EXPECT_DOUBLE_EQ(dev.fidelity(make_gate(GateKind::CX, {0, 1})), 0.9765);
  EXPECT_DOUBLE_EQ(dev.duration_of(GateKind::CX), 0.3);
  EXPECT_DOUBLE_EQ(dev.duration_of(GateKind::Measure), 1.0);
  EXPECT_DOUBLE_EQ(dev.t1_of(2), 100.0);
  EXPECT_NO_THROW(dev.validate());
  dev.f2q = 1.5;
  EXPECT_THROW(dev.validate(), std::invalid_argument);
}
