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
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "qdse/dse/results.hpp"

namespace qdse::dse {

/// Counts of how often each `routing|level|layout` combination was the best
/// or worst within a group. Tied combinations share one credit.
struct FrequencyTable {
  std::string metric;
  bool higher_is_better = true;
  std::map<std::string, double> best;
  std::map<std::string, double> worst;
  std::size_t groups = 0;          // groups that contributed
  std::size_t skipped_groups = 0;  // groups with fewer than two combinations
};

/// Metrics where a smaller value is the better outcome.
inline bool lower_is_better(std::string_view metric) {
  static constexpr std::string_view lower[] = {"swaps_added", "gates_after", "depth_after",  "n1q_after",
                                               "n2q_after",   "gate_overhead", "depth_overhead",
                                               "fidelity_decrease", "wall_ms"};
  return std::find(std::begin(lower), std::end(lower), metric) != std::end(lower);
}

inline std::string combination_label(const ResultRecord& r) {
  return r.routing + "|" + std::to_string(r.opt_level) + "|" + r.layout;
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Groups records by (benchmark, topology, density, setup, scheduling),
/// takes the median over seeds of `metric` for each combination, and credits
/// the best and worst combination of each group. Records with errors or an
/// empty metric are ignored.
inline FrequencyTable summarize_best_worst(const std::vector<ResultRecord>& records, std::string_view metric) {
  const Column* col = find_column(metric);
  if (!col || std::holds_alternative<std::string ResultRecord::*>(col->member) || metric == "seed" ||
      metric == "opt_level" || metric == "setup") {
    throw std::invalid_argument("unknown metric '" + std::string(metric) + "'");
  }
  FrequencyTable table;
  table.metric = std::string(metric);
  table.higher_is_better = !lower_is_better(metric);

  using GroupKey = std::tuple<std::string, std::string, std::string, std::int64_t, std::string>;
  std::map<GroupKey, std::map<std::string, std::vector<double>>> groups;
  for (const ResultRecord& r : records) {
    if (!r.error.empty()) continue;
    const auto v = numeric_value(r, *col);
    if (!v) continue;
    groups[{r.benchmark, r.topology, r.density, r.setup, r.scheduling}][combination_label(r)].push_back(*v);
  }
  for (const auto& [key, combos] : groups) {
    if (combos.size() < 2) {
      ++table.skipped_groups;
      continue;
    }
    ++table.groups;
    std::vector<std::pair<std::string, double>> med;
    for (const auto& [label, values] : combos) med.emplace_back(label, median(values));
    double hi = med.front().second;
    double lo = hi;
    for (const auto& [label, m] : med) {
      hi = std::max(hi, m);
      lo = std::min(lo, m);
    }
    auto credit = [&](std::map<std::string, double>& into, double target) {
      const double tol = 1e-12 * std::max(1.0, std::abs(target));
      std::vector<std::string> tied;
      for (const auto& [label, m] : med) {
        if (std::abs(m - target) <= tol) tied.push_back(label);
      }
      for (const auto& label : tied) into[label] += 1.0 / static_cast<double>(tied.size());
    };
    credit(table.best, table.higher_is_better ? hi : lo);
    credit(table.worst, table.higher_is_better ? lo : hi);
  }
  return table;
}

}  // namespace qdse::dse
