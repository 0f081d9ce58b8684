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

// Built-in benchmark circuit generators.

#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <numbers>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qdse/circuit.hpp"
#include "qdse/rng.hpp"

namespace qdse {

enum class Family {
  Ghz,
  Qft,
  Qaoa,
  Grover,
  QuantumVolume,
  Random,
  Adder,
  RepetitionCode,
  ShorCode,
  SteaneCode,
  SurfaceCode,
};

inline constexpr std::array<std::pair<Family, std::string_view>, 11> kFamilyNames{{
    {Family::Ghz, "ghz"},
    {Family::Qft, "qft"},
    {Family::Qaoa, "qaoa"},
    {Family::Grover, "grover"},
    {Family::QuantumVolume, "quantum_volume"},
    {Family::Random, "random"},
    {Family::Adder, "adder"},
    {Family::RepetitionCode, "repetition_code"},
    {Family::ShorCode, "shor_code"},
    {Family::SteaneCode, "steane_code"},
    {Family::SurfaceCode, "surface_code"},
}};

inline std::string_view to_string(Family f) {
  for (const auto& [fam, name] : kFamilyNames) {
    if (fam == f) return name;
  }
  return "?";
}

inline std::optional<Family> parse_family(std::string_view s) {
  for (const auto& [fam, name] : kFamilyNames) {
    if (name == s) return fam;
  }
  return std::nullopt;
}

inline bool is_seeded(Family f) { return f == Family::Qaoa || f == Family::QuantumVolume || f == Family::Random; }

/// Benchmark identifier, written `family:size[:seed[:layers]]`.
///
/// size is the qubit count, except for adder (operand bits; 2*size+1
/// qubits), repetition_code and surface_code (code distance), and the fixed
/// shor_code (9) and steane_code (7), where it is the number of data qubits.
/// For random circuits `layers` is the layer count (default: size).
struct BenchmarkId {
  Family family = Family::Ghz;
  int size = 0;
  std::optional<std::uint64_t> seed;
  std::optional<int> layers;

  friend bool operator==(const BenchmarkId&, const BenchmarkId&) = default;
};

inline std::string to_string(const BenchmarkId& id) {
  std::string s = std::string(to_string(id.family)) + ":" + std::to_string(id.size);
  if (id.seed) s += ":" + std::to_string(*id.seed);
  if (id.layers) {
    if (!id.seed) s += ":";
    s += ":" + std::to_string(*id.layers);
  }
  return s;
}

namespace bench_detail {

template <typename T>
T parse_number(std::string_view s, const char* what) {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw std::invalid_argument(std::string("invalid benchmark ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

inline int default_size(Family f) {
  switch (f) {
    case Family::ShorCode:
      return 9;
    case Family::SteaneCode:
      return 7;
    case Family::SurfaceCode:
      return 3;
    default:
      return 0;
  }
}

}  // namespace bench_detail

/// Throws std::invalid_argument for unsupported (family, size) combinations
/// and missing seeds.
inline void validate(const BenchmarkId& id) {
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("unsupported benchmark " + to_string(id) + ": " + why);
  };
  switch (id.family) {
    case Family::Ghz:
      if (id.size < 2) fail("ghz needs at least 2 qubits");
      break;
    case Family::Qft:
      if (id.size < 1) fail("qft needs at least 1 qubit");
      break;
    case Family::Qaoa:
      if (id.size < 4 || id.size % 2 != 0) fail("3-regular instances need an even size of at least 4");
      if (id.layers && *id.layers < 1) fail("layers must be positive");
      break;
    case Family::Grover:
      if (id.size < 3) fail("grover needs at least 3 qubits");
      break;
    case Family::QuantumVolume:
      if (id.size < 2) fail("quantum volume needs at least 2 qubits");
      break;
    case Family::Random:
      if (id.size < 1) fail("random needs at least 1 qubit");
      if (id.layers && *id.layers < 1) fail("layers must be positive");
      break;
    case Family::Adder:
      if (id.size < 1) fail("adder needs at least 1 bit");
      break;
    case Family::RepetitionCode:
      if (id.size < 2) fail("distance must be at least 2");
      break;
    case Family::ShorCode:
      if (id.size != 9) fail("the Shor code has 9 data qubits");
      break;
    case Family::SteaneCode:
      if (id.size != 7) fail("the Steane code has 7 data qubits");
      break;
    case Family::SurfaceCode:
      if (id.size != 3) fail("only distance 3 is available");
      break;
  }
  if (is_seeded(id.family) && !id.seed) fail("seed required");
  if (id.layers && id.family != Family::Qaoa && id.family != Family::Random) fail("layers not applicable");
}

inline BenchmarkId parse_benchmark_id(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    parts.push_back(text.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() > 4) throw std::invalid_argument("too many fields in benchmark id '" + std::string(text) + "'");
  const auto fam = parse_family(parts[0]);
  if (!fam) throw std::invalid_argument("unknown benchmark family '" + std::string(parts[0]) + "'");
  BenchmarkId id;
  id.family = *fam;
  id.size = parts.size() > 1 ? bench_detail::parse_number<int>(parts[1], "size") : bench_detail::default_size(*fam);
  if (parts.size() > 2 && !parts[2].empty()) id.seed = bench_detail::parse_number<std::uint64_t>(parts[2], "seed");
  if (parts.size() > 3) id.layers = bench_detail::parse_number<int>(parts[3], "layers");
  validate(id);
  return id;
}

namespace bench_detail {

using enum GateKind;
using std::numbers::pi;

inline Circuit ghz(int n) {
  Circuit c(n);
  c.add(H, {0});
  for (int i = 0; i + 1 < n; ++i) c.add(CX, {i, i + 1});
  return c;
}

inline Circuit qft(int n) {
  Circuit c(n);
  for (int j = 0; j < n; ++j) {
    c.add(H, {j});
    for (int k = j + 1; k < n; ++k) c.add(CP, {k, j}, {pi / static_cast<double>(1ULL << (k - j))});
  }
  for (int i = 0; i < n / 2; ++i) c.add(Swap, {i, n - 1 - i});
  return c;
}

/// Random 3-regular simple graph by the configuration model with restarts.
inline std::vector<std::pair<int, int>> random_cubic_graph(int n, Rng& rng) {
  std::vector<int> stubs;
  for (int v = 0; v < n; ++v) stubs.insert(stubs.end(), 3, v);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    rng.shuffle(std::span<int>(stubs));
    std::set<std::pair<int, int>> edges;
    bool ok = true;
    for (std::size_t i = 0; ok && i < stubs.size(); i += 2) {
      const int a = std::min(stubs[i], stubs[i + 1]);
      const int b = std::max(stubs[i], stubs[i + 1]);
      ok = a != b && edges.insert({a, b}).second;
    }
    if (ok) return {edges.begin(), edges.end()};
  }
  throw std::runtime_error("failed to sample a 3-regular graph");
}

inline Circuit qaoa(int n, int layers, std::uint64_t seed) {
  Rng rng(seed);
  const auto edges = random_cubic_graph(n, rng);
  Circuit c(n);
  for (int q = 0; q < n; ++q) c.add(H, {q});
  for (int l = 0; l < layers; ++l) {
    const double gamma = rng.uniform(0.0, pi);
    const double beta = rng.uniform(0.0, pi);
    for (const auto& [u, v] : edges) {
      c.add(CX, {u, v});
      c.add(RZ, {v}, {2.0 * gamma});
      c.add(CX, {u, v});
    }
    for (int q = 0; q < n; ++q) c.add(RX, {q}, {2.0 * beta});
  }
  return c;
}

/// X on `target` controlled by all of `controls`, using ccx V-chain with
/// clean ancillas that are returned to |0>.
inline void multi_controlled_x(Circuit& c, const std::vector<int>& controls, int target,
                               const std::vector<int>& ancillas) {
  const std::size_t k = controls.size();
  if (k == 1) {
    c.add(CX, {controls[0], target});
    return;
  }
  if (k == 2) {
    c.add(CCX, {controls[0], controls[1], target});
    return;
  }
  std::vector<std::array<int, 3>> chain;
  chain.push_back({controls[0], controls[1], ancillas[0]});
  for (std::size_t i = 2; i + 1 < k; ++i) chain.push_back({controls[i], ancillas[i - 2], ancillas[i - 1]});
  for (const auto& t : chain) c.add(CCX, {t[0], t[1], t[2]});
  c.add(CCX, {controls[k - 1], ancillas[k - 3], target});
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) c.add(CCX, {(*it)[0], (*it)[1], (*it)[2]});
}

inline void multi_controlled_z(Circuit& c, const std::vector<int>& qubits, const std::vector<int>& ancillas) {
  const int target = qubits.back();
  c.add(H, {target});
  multi_controlled_x(c, std::vector<int>(qubits.begin(), qubits.end() - 1), target, ancillas);
  c.add(H, {target});
}

/// One Grover iteration marking the all-ones string. The data register has
/// (n + 3) / 2 qubits; the rest are V-chain ancillas.
inline Circuit grover(int n) {
  const int m = (n + 3) / 2;
  std::vector<int> data(static_cast<std::size_t>(m));
  std::vector<int> anc;
  for (int i = 0; i < m; ++i) data[i] = i;
  for (int i = m; i < n; ++i) anc.push_back(i);
  Circuit c(n);
  for (int q : data) c.add(H, {q});
  multi_controlled_z(c, data, anc);
  for (int q : data) c.add(H, {q});
  for (int q : data) c.add(X, {q});
  multi_controlled_z(c, data, anc);
  for (int q : data) c.add(X, {q});
  for (int q : data) c.add(H, {q});
  return c;
}

inline void random_su2(Circuit& c, int q, Rng& rng) {
  c.add(RZ, {q}, {rng.uniform(-pi, pi)});
  c.add(RY, {q}, {rng.uniform(0.0, pi)});
  c.add(RZ, {q}, {rng.uniform(-pi, pi)});
}

/// n layers; each pairs a random permutation of the qubits into generic
/// two-qubit blocks built from three cx and single-qubit rotations.
inline Circuit quantum_volume(int n, std::uint64_t seed) {
  Rng rng(seed);
  Circuit c(n);
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int layer = 0; layer < n; ++layer) {
    for (int i = 0; i < n; ++i) perm[i] = i;
    rng.shuffle(std::span<int>(perm));
    for (int i = 0; i + 1 < n; i += 2) {
      const int a = perm[i];
      const int b = perm[i + 1];
      random_su2(c, a, rng);
      random_su2(c, b, rng);
      c.add(CX, {a, b});
      c.add(RY, {a}, {rng.uniform(-pi, pi)});
      c.add(RZ, {b}, {rng.uniform(-pi, pi)});
      c.add(CX, {b, a});
      c.add(RY, {a}, {rng.uniform(-pi, pi)});
      c.add(CX, {a, b});
      random_su2(c, a, rng);
      random_su2(c, b, rng);
    }
  }
  return c;
}

/// `layers` rounds; each round visits the qubits in random order and places
/// gates drawn uniformly from the unitary alphabet on the free qubits.
inline Circuit random_circuit(int n, int layers, std::uint64_t seed) {
  static constexpr std::array<GateKind, 18> kinds{X, Y, Z,  H,  S,  Sdg, T,    Tdg, SX,
                                                  RX, RY, RZ, CP, CX, CY,  CZ, Swap, CCX};
  Rng rng(seed);
  Circuit c(n);
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int l = 0; l < layers; ++l) {
    for (int i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(std::span<int>(order));
    std::size_t next = 0;
    while (next < order.size()) {
      const std::size_t free = order.size() - next;
      GateKind k;
      do {
        k = kinds[rng.below(kinds.size())];
      } while (static_cast<std::size_t>(gate_arity(k)) > free);
      std::vector<int> qs(order.begin() + static_cast<std::ptrdiff_t>(next),
                          order.begin() + static_cast<std::ptrdiff_t>(next + gate_arity(k)));
      next += static_cast<std::size_t>(gate_arity(k));
      std::vector<double> params;
      for (int p = 0; p < gate_param_count(k); ++p) params.push_back(rng.uniform(-pi, pi));
      c.add(k, std::move(qs), std::move(params));
    }
  }
  return c;
}

/// Ripple-carry adder computing b <- a + b mod 2^k with inputs a = 1 and
/// b = 2^k - 1. Qubit 0 is the carry-in, a_i = 1 + 2i, b_i = 2 + 2i.
inline Circuit adder(int k) {
  Circuit c(2 * k + 1);
  auto a = [](int i) { return 1 + 2 * i; };
  auto b = [](int i) { return 2 + 2 * i; };
  c.add(X, {a(0)});
  for (int i = 0; i < k; ++i) c.add(X, {b(i)});
  auto maj = [&](int x, int y, int z) {
    c.add(CX, {z, y});
    c.add(CX, {z, x});
    c.add(CCX, {x, y, z});
  };
  auto uma = [&](int x, int y, int z) {
    c.add(CCX, {x, y, z});
    c.add(CX, {z, x});
    c.add(CX, {x, y});
  };
  maj(0, b(0), a(0));
  for (int i = 1; i < k; ++i) maj(a(i - 1), b(i), a(i));
  for (int i = k - 1; i >= 1; --i) uma(a(i - 1), b(i), a(i));
  uma(0, b(0), a(0));
  return c;
}

inline Circuit repetition_code(int d) {
  Circuit c(d);
  for (int i = 1; i < d; ++i) c.add(CX, {0, i});
  return c;
}

/// Appends one syndrome round. Z checks use data->ancilla cx, X checks an
/// h-conjugated ancilla->data fan-out. Each ancilla is measured into the
/// clbit with the same offset.
inline void measure_stabilizers(Circuit& c, int first_ancilla, const std::vector<std::vector<int>>& z_checks,
                                const std::vector<std::vector<int>>& x_checks) {
  int anc = first_ancilla;
  for (const auto& s : z_checks) {
    for (int q : s) c.add(CX, {q, anc});
    ++anc;
  }
  for (const auto& s : x_checks) {
    c.add(H, {anc});
    for (int q : s) c.add(CX, {anc, q});
    c.add(H, {anc});
    ++anc;
  }
  for (int a = first_ancilla; a < anc; ++a) c.measure(a, a - first_ancilla);
}

inline Circuit shor_code() {
  Circuit c(17, 8);
  c.add(CX, {0, 3});
  c.add(CX, {0, 6});
  for (int q : {0, 3, 6}) c.add(H, {q});
  for (int q : {0, 3, 6}) {
    c.add(CX, {q, q + 1});
    c.add(CX, {q, q + 2});
  }
  measure_stabilizers(c, 9, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {6, 7}, {7, 8}},
                      {{0, 1, 2, 3, 4, 5}, {3, 4, 5, 6, 7, 8}});
  return c;
}

inline Circuit steane_code() {
  Circuit c(13, 6);
  for (int q : {0, 1, 3}) c.add(H, {q});
  for (int t : {2, 4, 6}) c.add(CX, {0, t});
  for (int t : {2, 5, 6}) c.add(CX, {1, t});
  for (int t : {4, 5, 6}) c.add(CX, {3, t});
  const std::vector<std::vector<int>> checks{{0, 2, 4, 6}, {1, 2, 5, 6}, {3, 4, 5, 6}};
  measure_stabilizers(c, 7, checks, checks);
  return c;
}

/// Distance-3 rotated surface code: data qubit (r, c) is 3r + c, ancillas
/// 9-12 measure Z checks and 13-16 X checks.
inline Circuit surface_code() {
  Circuit c(17, 8);
  const std::vector<std::vector<int>> z_checks{{1, 2, 4, 5}, {3, 4, 6, 7}, {0, 3}, {5, 8}};
  const std::vector<std::vector<int>> x_checks{{0, 1, 3, 4}, {4, 5, 7, 8}, {1, 2}, {6, 7}};
  measure_stabilizers(c, 9, z_checks, x_checks);
  return c;
}

}  // namespace bench_detail

inline Circuit generate(const BenchmarkId& id) {
  using namespace bench_detail;
  validate(id);
  switch (id.family) {
    case Family::Ghz:
      return ghz(id.size);
    case Family::Qft:
      return qft(id.size);
    case Family::Qaoa:
      return qaoa(id.size, id.layers.value_or(1), *id.seed);
    case Family::Grover:
      return grover(id.size);
    case Family::QuantumVolume:
      return quantum_volume(id.size, *id.seed);
    case Family::Random:
      return random_circuit(id.size, id.layers.value_or(id.size), *id.seed);
    case Family::Adder:
      return adder(id.size);
    case Family::RepetitionCode:
      return repetition_code(id.size);
    case Family::ShorCode:
      return shor_code();
    case Family::SteaneCode:
      return steane_code();
    case Family::SurfaceCode:
      return surface_code();
  }
  throw std::logic_error("unreachable benchmark family");
}

inline Circuit generate(std::string_view id) { return generate(parse_benchmark_id(id)); }

/// Default sweep suite (18 entries).
inline std::vector<BenchmarkId> list_suite() {
  std::vector<BenchmarkId> out;
  for (const char* s :
       {"ghz:3", "ghz:8", "ghz:16", "qft:4", "qft:8", "qft:16", "qaoa:8:1:1", "qaoa:16:1:2", "grover:4", "grover:8",
        "quantum_volume:8:1", "random:8:1", "random:16:1", "adder:4", "repetition_code:3", "shor_code:9",
        "steane_code:7", "surface_code:3"}) {
    out.push_back(parse_benchmark_id(s));
  }
  return out;
}

}  // namespace qdse
