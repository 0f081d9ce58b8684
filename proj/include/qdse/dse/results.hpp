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

// Sweep result records and their CSV / JSON encodings.

#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace qdse::dse {

struct ResultRecord {
  // axes
  std::string benchmark;
  std::string topology;
  std::string density;
  std::string layout;
  std::string routing;
  std::int64_t opt_level = 0;
  std::int64_t setup = 0;
  std::string scheduling;
  std::uint64_t seed = 0;
  // device
  std::int64_t num_qubits = 0;
  std::int64_t num_edges = 0;
  double actual_density = 0.0;
  // compilation
  std::optional<std::int64_t> logical_qubits;
  std::optional<std::int64_t> swaps_added;
  std::optional<std::int64_t> gates_before;
  std::optional<std::int64_t> gates_after;
  std::optional<std::int64_t> depth_before;
  std::optional<std::int64_t> depth_after;
  std::optional<std::int64_t> n1q_before;
  std::optional<std::int64_t> n2q_before;
  std::optional<std::int64_t> n1q_after;
  std::optional<std::int64_t> n2q_after;
  // noise
  std::optional<double> base_fidelity;
  std::optional<double> f_shared_qubit;
  std::optional<double> f_simultaneous;
  std::optional<double> f_proximity;
  std::optional<double> f_thermal;
  std::optional<double> f_depolarizing;
  std::optional<double> f_before;
  std::optional<double> f_after;
  // metrics
  std::optional<double> gate_overhead;
  std::optional<double> depth_overhead;
  std::optional<double> fidelity_decrease;
  std::optional<double> cost_improvement;
  double wall_ms = 0.0;
  std::string error;

  friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

using Member = std::variant<std::string ResultRecord::*, std::int64_t ResultRecord::*, std::uint64_t ResultRecord::*,
                            double ResultRecord::*, std::optional<std::int64_t> ResultRecord::*,
                            std::optional<double> ResultRecord::*>;

struct Column {
  std::string_view name;
  Member member;
};

/// Canonical column order shared by CSV and JSON.
inline const std::vector<Column>& columns() {
  using R = ResultRecord;
  static const std::vector<Column> cols{
      {"benchmark", &R::benchmark},
      {"topology", &R::topology},
      {"density", &R::density},
      {"layout", &R::layout},
      {"routing", &R::routing},
      {"opt_level", &R::opt_level},
      {"setup", &R::setup},
      {"scheduling", &R::scheduling},
      {"seed", &R::seed},
      {"num_qubits", &R::num_qubits},
      {"num_edges", &R::num_edges},
      {"actual_density", &R::actual_density},
      {"logical_qubits", &R::logical_qubits},
      {"swaps_added", &R::swaps_added},
      {"gates_before", &R::gates_before},
      {"gates_after", &R::gates_after},
      {"depth_before", &R::depth_before},
      {"depth_after", &R::depth_after},
      {"n1q_before", &R::n1q_before},
      {"n2q_before", &R::n2q_before},
      {"n1q_after", &R::n1q_after},
      {"n2q_after", &R::n2q_after},
      {"base_fidelity", &R::base_fidelity},
      {"f_shared_qubit", &R::f_shared_qubit},
      {"f_simultaneous", &R::f_simultaneous},
      {"f_proximity", &R::f_proximity},
      {"f_thermal", &R::f_thermal},
      {"f_depolarizing", &R::f_depolarizing},
      {"f_before", &R::f_before},
      {"f_after", &R::f_after},
      {"gate_overhead", &R::gate_overhead},
      {"depth_overhead", &R::depth_overhead},
      {"fidelity_decrease", &R::fidelity_decrease},
      {"cost_improvement", &R::cost_improvement},
      {"wall_ms", &R::wall_ms},
      {"error", &R::error},
  };
  return cols;
}

inline const Column* find_column(std::string_view name) {
  for (const Column& c : columns()) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

/// Numeric value of a column, or nullopt if empty or non-numeric.
inline std::optional<double> numeric_value(const ResultRecord& r, const Column& col) {
  return std::visit(
      [&](auto member) -> std::optional<double> {
        using T = std::remove_cvref_t<decltype(r.*member)>;
        const auto& v = r.*member;
        if constexpr (std::is_same_v<T, std::string>) {
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, std::optional<std::int64_t>> || std::is_same_v<T, std::optional<double>>) {
          if (!v) return std::nullopt;
          return static_cast<double>(*v);
        } else {
          return static_cast<double>(v);
        }
      },
      col.member);
}

namespace results_detail {

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string cell(const ResultRecord& r, const Column& col) {
  return std::visit(
      [&](auto member) -> std::string {
        using T = std::remove_cvref_t<decltype(r.*member)>;
        const auto& v = r.*member;
        if constexpr (std::is_same_v<T, std::string>) {
          return csv_quote(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_real(v);
        } else if constexpr (std::is_same_v<T, std::optional<double>>) {
          return v ? format_real(*v) : std::string();
        } else if constexpr (std::is_same_v<T, std::optional<std::int64_t>>) {
          return v ? std::to_string(*v) : std::string();
        } else {
          return std::to_string(v);
        }
      },
      col.member);
}

template <typename T>
T parse_num(const std::string& s, std::string_view column) {
  T v{};
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) {
    throw std::invalid_argument("bad value '" + s + "' in column " + std::string(column));
  }
  return v;
}

inline void set_cell(ResultRecord& r, const Column& col, const std::string& s) {
  std::visit(
      [&](auto member) {
        using T = std::remove_cvref_t<decltype(r.*member)>;
        auto& v = r.*member;
        if constexpr (std::is_same_v<T, std::string>) {
          v = s;
        } else if constexpr (std::is_same_v<T, std::optional<double>>) {
          v = s.empty() ? std::nullopt : std::optional<double>(parse_num<double>(s, col.name));
        } else if constexpr (std::is_same_v<T, std::optional<std::int64_t>>) {
          v = s.empty() ? std::nullopt : std::optional<std::int64_t>(parse_num<std::int64_t>(s, col.name));
        } else {
          v = parse_num<T>(s, col.name);
        }
      },
      col.member);
}

/// Splits CSV text into rows of unquoted fields.
inline std::vector<std::vector<std::string>> split_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    any = true;
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quote in CSV");
  if (any) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace results_detail

inline std::string to_csv(const std::vector<ResultRecord>& records) {
  if (records.empty()) throw std::invalid_argument("nothing to emit");
  std::string out;
  const auto& cols = columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ',';
    out += cols[i].name;
  }
  out += '\n';
  for (const ResultRecord& r : records) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) out += ',';
      out += results_detail::cell(r, cols[i]);
    }
    out += '\n';
  }
  return out;
}

inline std::vector<ResultRecord> parse_csv(std::string_view text) {
  const auto rows = results_detail::split_csv(text);
  if (rows.empty()) throw std::invalid_argument("empty CSV");
  std::vector<const Column*> header;
  for (const std::string& name : rows[0]) {
    const Column* c = find_column(name);
    if (!c) throw std::invalid_argument("unknown CSV column '" + name + "'");
    header.push_back(c);
  }
  std::vector<ResultRecord> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != header.size()) {
      throw std::invalid_argument("CSV row " + std::to_string(i + 1) + " has the wrong number of fields");
    }
    ResultRecord r;
    for (std::size_t j = 0; j < header.size(); ++j) results_detail::set_cell(r, *header[j], rows[i][j]);
    out.push_back(std::move(r));
  }
  return out;
}

inline nlohmann::json to_json(const std::vector<ResultRecord>& records) {
  if (records.empty()) throw std::invalid_argument("nothing to emit");
  nlohmann::json arr = nlohmann::json::array();
  for (const ResultRecord& r : records) {
    nlohmann::json obj = nlohmann::json::object();
    for (const Column& col : columns()) {
      std::visit(
          [&](auto member) {
            using T = std::remove_cvref_t<decltype(r.*member)>;
            const auto& v = r.*member;
            if constexpr (std::is_same_v<T, std::optional<double>> || std::is_same_v<T, std::optional<std::int64_t>>) {
              obj[std::string(col.name)] = v ? nlohmann::json(*v) : nlohmann::json(nullptr);
            } else {
              obj[std::string(col.name)] = v;
            }
          },
          col.member);
    }
    arr.push_back(std::move(obj));
  }
  return arr;
}

inline std::vector<ResultRecord> from_json(const nlohmann::json& arr) {
  if (!arr.is_array()) throw std::invalid_argument("expected a JSON array of records");
  std::vector<ResultRecord> out;
  for (const auto& obj : arr) {
    ResultRecord r;
    for (const Column& col : columns()) {
      const auto it = obj.find(std::string(col.name));
      if (it == obj.end()) throw std::invalid_argument("record is missing '" + std::string(col.name) + "'");
      std::visit(
          [&](auto member) {
            using T = std::remove_cvref_t<decltype(r.*member)>;
            auto& v = r.*member;
            if constexpr (std::is_same_v<T, std::optional<double>>) {
              v = it->is_null() ? std::nullopt : std::optional<double>(it->template get<double>());
            } else if constexpr (std::is_same_v<T, std::optional<std::int64_t>>) {
              v = it->is_null() ? std::nullopt : std::optional<std::int64_t>(it->template get<std::int64_t>());
            } else {
              v = it->template get<T>();
            }
          },
          col.member);
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline void write_csv(const std::vector<ResultRecord>& records, const std::string& path) {
  results_detail::write_file(path, to_csv(records));
}

inline void write_json(const std::vector<ResultRecord>& records, const std::string& path) {
  results_detail::write_file(path, to_json(records).dump(1) + "\n");
}

inline std::vector<ResultRecord> read_csv(const std::string& path) {
  return parse_csv(results_detail::read_file(path));
}

inline std::vector<ResultRecord> read_json(const std::string& path) {
  return from_json(nlohmann::json::parse(results_detail::read_file(path)));
}

}  // namespace qdse::dse
