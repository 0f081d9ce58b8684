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
#include <fstream>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdse/rng.hpp"

namespace qdse {

/// Undirected edge, stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(std::min(a, b)), v(std::max(a, b)) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double euclidean(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// All-pairs hop distances, row-major N x N.
class DistanceTable {
 public:
  DistanceTable() = default;
  DistanceTable(int n, std::vector<int> d) : n_(n), d_(std::move(d)) {}

  int operator()(int a, int b) const { return d_[static_cast<std::size_t>(a) * n_ + b]; }
  int size() const { return n_; }
  int diameter() const { return d_.empty() ? 0 : *std::max_element(d_.begin(), d_.end()); }

 private:
  int n_ = 0;
  std::vector<int> d_;
};

/// BFS from every node. Throws if the graph is disconnected.
inline DistanceTable compute_distances(const std::vector<std::vector<int>>& adjacency) {
  const int n = static_cast<int>(adjacency.size());
  std::vector<int> d(static_cast<std::size_t>(n) * n, -1);
  std::vector<int> queue(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    int* row = d.data() + static_cast<std::size_t>(s) * n;
    std::size_t head = 0;
    std::size_t tail = 0;
    row[s] = 0;
    queue[tail++] = s;
    while (head < tail) {
      const int u = queue[head++];
      for (int w : adjacency[u]) {
        if (row[w] < 0) {
          row[w] = row[u] + 1;
          queue[tail++] = w;
        }
      }
    }
    if (static_cast<int>(tail) != n) throw std::invalid_argument("coupling graph is disconnected");
  }
  return DistanceTable(n, std::move(d));
}

/// Physical qubit connectivity with optional planar coordinates.
///
/// Invariants: no self-loops, no duplicate edges, connected, unique coords.
/// Immutable after construction; hop distances are computed eagerly so the
/// graph can be shared across sweep workers.
class CouplingGraph {
 public:
  CouplingGraph(int num_qubits, std::vector<Edge> edges, std::vector<Point> coords = {})
      : n_(num_qubits), edges_(std::move(edges)), coords_(std::move(coords)) {
    if (n_ < 1) throw std::invalid_argument("coupling graph needs at least one qubit");
    std::sort(edges_.begin(), edges_.end());
    adjacency_.assign(static_cast<std::size_t>(n_), {});
    adjacent_.assign(static_cast<std::size_t>(n_) * n_, 0);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const Edge& e = edges_[i];
      if (e.u == e.v) throw std::invalid_argument("self-loop on qubit " + std::to_string(e.u));
      if (e.u < 0 || e.v >= n_) throw std::invalid_argument("edge endpoint out of range");
      if (i > 0 && edges_[i - 1] == e) {
        throw std::invalid_argument("duplicate edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
      }
      adjacency_[e.u].push_back(e.v);
      adjacency_[e.v].push_back(e.u);
      adjacent_[index(e.u, e.v)] = 1;
      adjacent_[index(e.v, e.u)] = 1;
    }
    for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
    if (!coords_.empty()) {
      if (static_cast<int>(coords_.size()) != n_) throw std::invalid_argument("coordinate count mismatch");
      std::set<std::pair<double, double>> seen;
      for (const Point& p : coords_) {
        if (!seen.insert({p.x, p.y}).second) throw std::invalid_argument("duplicate qubit coordinates");
      }
    }
    distances_ = compute_distances(adjacency_);
  }

  int num_qubits() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int q) const { return adjacency_[q]; }
  int degree(int q) const { return static_cast<int>(adjacency_[q].size()); }
  bool adjacent(int a, int b) const { return adjacent_[index(a, b)] != 0; }
  bool has_coords() const { return !coords_.empty(); }
  const std::vector<Point>& coords() const { return coords_; }
  const Point& coord(int q) const { return coords_[q]; }
  const DistanceTable& distances() const { return distances_; }
  int distance(int a, int b) const { return distances_(a, b); }

  /// Position of an edge in the sorted edge list, or -1.
  int edge_index(int a, int b) const {
    const Edge e(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    return (it != edges_.end() && *it == e) ? static_cast<int>(it - edges_.begin()) : -1;
  }

 private:
  std::size_t index(int a, int b) const { return static_cast<std::size_t>(a) * n_ + b; }

  int n_;
  std::vector<Edge> edges_;
  std::vector<Point> coords_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::uint8_t> adjacent_;
  DistanceTable distances_;
};

inline DistanceTable distances(const CouplingGraph& g) { return g.distances(); }

inline std::uint64_t max_edges(int n) {
  return static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1) / 2;
}

/// N_C / (N(N-1)/2).
inline double connectivity_density(const CouplingGraph& g) {
  if (g.num_qubits() < 2) throw std::invalid_argument("connectivity density needs at least two qubits");
  return static_cast<double>(g.num_edges()) / static_cast<double>(max_edges(g.num_qubits()));
}

namespace topology_detail {

inline bool connected_without(const std::vector<std::set<int>>& adj, const std::vector<bool>& alive, int removed) {
  int start = -1;
  int total = 0;
  for (int i = 0; i < static_cast<int>(adj.size()); ++i) {
    if (alive[i] && i != removed) {
      ++total;
      if (start < 0) start = i;
    }
  }
  if (total == 0) return true;
  std::vector<bool> seen(adj.size(), false);
  std::vector<int> stack{start};
  seen[start] = true;
  int reached = 0;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    ++reached;
    for (int w : adj[u]) {
      if (alive[w] && w != removed && !seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return reached == total;
}

}  // namespace topology_detail

/// Drops highest-index qubits one at a time, skipping removals that would
/// disconnect the graph, until `target` qubits remain. Survivors keep their
/// relative order.
inline CouplingGraph crop(const CouplingGraph& g, int target) {
  if (target < 1) throw std::invalid_argument("crop target must be at least 1");
  if (target > g.num_qubits()) throw std::invalid_argument("crop target exceeds qubit count");
  const int n = g.num_qubits();
  std::vector<std::set<int>> adj(static_cast<std::size_t>(n));
  for (const Edge& e : g.edges()) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  std::vector<bool> alive(static_cast<std::size_t>(n), true);
  int remaining = n;
  while (remaining > target) {
    bool removed = false;
    for (int q = n - 1; q >= 0; --q) {
      if (alive[q] && topology_detail::connected_without(adj, alive, q)) {
        alive[q] = false;
        --remaining;
        removed = true;
        break;
      }
    }
    if (!removed) throw std::invalid_argument("crop target unreachable without disconnecting the graph");
  }
  std::vector<int> remap(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int q = 0; q < n; ++q) {
    if (alive[q]) remap[q] = next++;
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (alive[e.u] && alive[e.v]) edges.emplace_back(remap[e.u], remap[e.v]);
  }
  std::vector<Point> coords;
  if (g.has_coords()) {
    for (int q = 0; q < n; ++q) {
      if (alive[q]) coords.push_back(g.coord(q));
    }
  }
  return CouplingGraph(target, std::move(edges), std::move(coords));
}

/// Number of qubits of an uncropped heavy-hex lattice.
inline int heavy_hex_size(int rows, int cols) { return 5 * rows * cols + 4 * rows + 4 * cols - 1; }

/// Honeycomb of rows x cols hexagonal cells with one extra qubit on every
/// lattice edge. Vertex qubits have degree <= 3 and edge qubits degree 2.
/// Coordinates use unit hexagon edge length; qubits are indexed in reading
/// order (by y, then x) so that cropping trims the top of the lattice.
inline CouplingGraph heavy_hex(int rows, int cols, std::optional<int> crop_to = std::nullopt) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("heavy_hex needs rows, cols >= 1");
  // Brick-wall embedding of the honeycomb: columns i in [0, cols], heights
  // j in [0, 2 rows + 1], minus two dangling corners.
  const int height = 2 * rows + 2;
  std::map<std::pair<int, int>, Point> verts;
  for (int i = 0; i <= cols; ++i) {
    for (int j = 0; j < height; ++j) {
      const double x = 0.5 + i + i / 2 + (j % 2) * ((i % 2) - 0.5);
      const double y = std::sqrt(3.0) / 2.0 * j;
      verts[{i, j}] = Point{x, y};
    }
  }
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> lattice_edges;
  for (int i = 0; i <= cols; ++i) {
    for (int j = 0; j + 1 < height; ++j) lattice_edges.push_back({{i, j}, {i, j + 1}});
  }
  for (int i = 0; i < cols; ++i) {
    for (int j = 0; j < height; ++j) {
      if (i % 2 == j % 2) lattice_edges.push_back({{i, j}, {i + 1, j}});
    }
  }
  const std::pair<int, int> corner_a{0, height - 1};
  const std::pair<int, int> corner_b{cols, (height - 1) * (cols % 2)};
  verts.erase(corner_a);
  verts.erase(corner_b);
  std::erase_if(lattice_edges, [&](const auto& e) {
    return e.first == corner_a || e.second == corner_a || e.first == corner_b || e.second == corner_b;
  });

  // Subdivide: one qubit per lattice vertex and one per lattice edge.
  std::vector<Point> points;
  std::map<std::pair<int, int>, int> vert_id;
  for (const auto& [key, p] : verts) {
    vert_id[key] = static_cast<int>(points.size());
    points.push_back(p);
  }
  std::vector<std::pair<int, int>> sub_edges;
  for (const auto& [a, b] : lattice_edges) {
    const int ia = vert_id.at(a);
    const int ib = vert_id.at(b);
    const int mid = static_cast<int>(points.size());
    points.push_back(Point{(points[ia].x + points[ib].x) / 2.0, (points[ia].y + points[ib].y) / 2.0});
    sub_edges.push_back({ia, mid});
    sub_edges.push_back({mid, ib});
  }

  // Reading order; coordinates are rounded for a stable sort key.
  const int n = static_cast<int>(points.size());
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[i] = i;
  auto key = [&](int i) {
    return std::pair<long long, long long>{std::llround(points[i].y * 1e6), std::llround(points[i].x * 1e6)};
  };
  std::sort(order.begin(), order.end(), [&](int a, int b) { return key(a) < key(b); });
  std::vector<int> rank(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) rank[order[i]] = i;

  std::vector<Point> coords(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) coords[rank[i]] = points[i];
  std::vector<Edge> edges;
  edges.reserve(sub_edges.size());
  for (const auto& [a, b] : sub_edges) edges.emplace_back(rank[a], rank[b]);

  CouplingGraph g(n, std::move(edges), std::move(coords));
  if (crop_to) return crop(g, *crop_to);
  return g;
}

/// n x m grid with nearest-neighbour couplings; qubit r*m + c sits at (c, r).
inline CouplingGraph sycamore_grid(int rows, int cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("sycamore_grid needs rows, cols >= 1");
  std::vector<Edge> edges;
  std::vector<Point> coords;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int q = r * cols + c;
      coords.push_back(Point{static_cast<double>(c), static_cast<double>(r)});
      if (c + 1 < cols) edges.emplace_back(q, q + 1);
      if (r + 1 < rows) edges.emplace_back(q, q + cols);
    }
  }
  return CouplingGraph(rows * cols, std::move(edges), std::move(coords));
}

inline CouplingGraph complete_graph(int n, std::vector<Point> coords = {}) {
  std::vector<Edge> edges;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) edges.emplace_back(a, b);
  }
  return CouplingGraph(n, std::move(edges), std::move(coords));
}

inline CouplingGraph path_graph(int n) {
  std::vector<Edge> edges;
  std::vector<Point> coords;
  for (int a = 0; a < n; ++a) {
    coords.push_back(Point{static_cast<double>(a), 0.0});
    if (a + 1 < n) edges.emplace_back(a, a + 1);
  }
  return CouplingGraph(n, std::move(edges), std::move(coords));
}

/// Number of edges densify() targets for a given density.
inline std::uint64_t densify_edge_target(int n, double target) {
  const double exact = target * static_cast<double>(max_edges(n));
  // Guard against representation error such as 0.3 * 630 = 188.99999...
  return static_cast<std::uint64_t>(std::ceil(exact - 1e-9));
}

/// Adds uniformly random absent edges until density >= target.
///
/// The absent edges are shuffled once per seed and taken as a prefix, so
/// for a fixed seed a larger target always yields a superset of edges.
inline CouplingGraph densify(const CouplingGraph& g, double target, std::uint64_t seed) {
  if (target > 1.0) throw std::invalid_argument("target density exceeds 1");
  const int n = g.num_qubits();
  const double current = connectivity_density(g);
  const std::uint64_t want = densify_edge_target(n, target);
  if (target < current && want < g.num_edges()) {
    throw std::invalid_argument("target density is below the current density");
  }
  if (want <= g.num_edges()) return g;
  std::vector<Edge> absent;
  absent.reserve(max_edges(n) - g.num_edges());
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (!g.adjacent(a, b)) absent.emplace_back(a, b);
    }
  }
  Rng rng(seed);
  rng.shuffle(std::span<Edge>(absent));
  std::vector<Edge> edges = g.edges();
  const std::size_t extra = static_cast<std::size_t>(want - g.num_edges());
  edges.insert(edges.end(), absent.begin(), absent.begin() + static_cast<std::ptrdiff_t>(extra));
  return CouplingGraph(n, std::move(edges), g.coords());
}

/// Edge-list text: a line with N, then one "u v" pair per line.
inline std::string to_edge_list(const CouplingGraph& g) {
  std::string out = std::to_string(g.num_qubits()) + "\n";
  for (const Edge& e : g.edges()) out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  return out;
}

inline CouplingGraph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = -1;
  std::vector<Edge> edges;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<long long> nums;
    long long v = 0;
    while (ls >> v) nums.push_back(v);
    if (!ls.eof()) throw std::invalid_argument("edge list line " + std::to_string(lineno) + ": not an integer");
    if (nums.empty()) continue;
    if (n < 0) {
      if (nums.size() != 1 || nums[0] < 1) {
        throw std::invalid_argument("edge list line " + std::to_string(lineno) + ": expected qubit count");
      }
      n = static_cast<int>(nums[0]);
      continue;
    }
    if (nums.size() != 2 || nums[0] < 0 || nums[1] < 0 || nums[0] >= n || nums[1] >= n) {
      throw std::invalid_argument("edge list line " + std::to_string(lineno) + ": expected 'u v' with 0 <= u, v < N");
    }
    edges.emplace_back(static_cast<int>(nums[0]), static_cast<int>(nums[1]));
  }
  if (n < 0) throw std::invalid_argument("edge list is empty");
  return CouplingGraph(n, std::move(edges));
}

inline CouplingGraph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_edge_list(ss.str());
}

}  // namespace qdse
