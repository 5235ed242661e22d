// Copyright 2026 The Authors.
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

#ifndef SUBDET_IO_HPP_
#define SUBDET_IO_HPP_

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "subdet/detineq.hpp"
#include "subdet/errors.hpp"
#include "subdet/linalg.hpp"
#include "subdet/submodular.hpp"
#include "subdet/verify.hpp"

namespace subdet {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Matrix files
// ---------------------------------------------------------------------------

/// CSV matrix: n rows of n comma-separated decimals. Symmetry and positive
/// definiteness are validated on load.
inline SymPDMatrix load_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    bool blank = true;
    for (char ch : line)
      if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
    if (blank) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        while (used < cell.size() &&
               std::isspace(static_cast<unsigned char>(cell[used])))
          ++used;
        if (used != cell.size()) throw std::invalid_argument(cell);
        row.push_back(v);
      } catch (const std::exception&) {
        throw ParseError(path + ":" + std::to_string(lineno) +
                         ": not a number: '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected " +
                       std::to_string(rows.front().size()) + " values, got " +
                       std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw ParseError(path + ": empty matrix");
  if (rows.front().size() != static_cast<std::size_t>(n))
    throw ParseError(path + ": matrix is " + std::to_string(n) + " x " +
                     std::to_string(rows.front().size()) + ", expected square");
  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : rows)
    entries.insert(entries.end(), row.begin(), row.end());
  return SymPDMatrix(n, std::move(entries));
}

/// Matrix from a parsed JSON object {"n": int, "rows": [[...], ...]}.
inline SymPDMatrix matrix_from_json(const json& j) {
  if (!j.contains("rows") || !j["rows"].is_array())
    throw ParseError("matrix JSON needs a \"rows\" array");
  const auto& rows = j["rows"];
  const int n = static_cast<int>(rows.size());
  if (j.contains("n") && j["n"].get<int>() != n)
    throw ParseError("\"n\" = " + j["n"].dump() + " does not match " +
                     std::to_string(n) + " rows");
  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n)
      throw ParseError("row " + std::to_string(i + 1) + " does not have " +
                       std::to_string(n) + " entries");
    for (const auto& v : rows[i]) {
      if (!v.is_number()) throw ParseError("matrix entries must be numbers");
      entries.push_back(v.get<double>());
    }
  }
  return SymPDMatrix(n, std::move(entries));
}

inline json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline SymPDMatrix load_matrix_json(const std::string& path) {
  return matrix_from_json(parse_json_file(path));
}

/// Loads a matrix by extension: .json uses the JSON schema, anything else is
/// treated as CSV.
inline SymPDMatrix load_matrix(const std::string& path) {
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
    return load_matrix_json(path);
  return load_matrix_csv(path);
}

// ---------------------------------------------------------------------------
// Instance files
// ---------------------------------------------------------------------------

namespace detail {

template <typename T>
std::vector<T> number_list(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_array())
    throw ParseError("instance JSON needs a \"" + key + "\" array");
  std::vector<T> out;
  for (const auto& v : j[key]) {
    if (!v.is_number()) throw ParseError("\"" + key + "\" must hold numbers");
    out.push_back(v.get<T>());
  }
  return out;
}

}  // namespace detail

/// Builds a set-function instance from its JSON config. The "kind" field
/// selects the constructor; remaining fields are kind-specific.
inline SetFunction instance_from_json(const json& j) {
  if (!j.contains("kind") || !j["kind"].is_string())
    throw ParseError("instance JSON needs a \"kind\" string");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "gaussian") return gaussian_entropy_fn(matrix_from_json(j));
  if (kind == "discrete_entropy")
    return discrete_entropy_fn(detail::number_list<int>(j, "alphabet_sizes"),
                               detail::number_list<double>(j, "pmf"));
  if (kind == "graph_cut") {
    if (!j.contains("vertices") || !j["vertices"].is_number_integer())
      throw ParseError("graph_cut needs an integer \"vertices\"");
    if (!j.contains("edges") || !j["edges"].is_array())
      throw ParseError("graph_cut needs an \"edges\" array");
    std::vector<std::tuple<int, int, double>> edges;
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 3)
        throw ParseError("each edge must be [u, v, weight]");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>(), e[2].get<double>());
    }
    return graph_cut_fn(j["vertices"].get<int>(), edges);
  }
  if (kind == "set_cover") {
    if (!j.contains("subsets") || !j["subsets"].is_array())
      throw ParseError("set_cover needs a \"subsets\" array");
    std::vector<std::vector<int>> subsets;
    for (const auto& s : j["subsets"]) {
      std::vector<int> sub;
      for (const auto& u : s) sub.push_back(u.get<int>());
      subsets.push_back(std::move(sub));
    }
    return set_cover_fn(detail::number_list<double>(j, "universe_weights"),
                        subsets);
  }
  if (kind == "matroid") {
    const std::string variant =
        j.contains("variant") ? j["variant"].get<std::string>() : "uniform";
    if (variant == "uniform") {
      if (!j.contains("ground") || !j.contains("rank"))
        throw ParseError("uniform matroid needs \"ground\" and \"rank\"");
      return matroid_rank_fn(j["ground"].get<int>(), j["rank"].get<int>());
    }
    if (variant == "partition") {
      if (!j.contains("blocks") || !j["blocks"].is_array())
        throw ParseError("partition matroid needs a \"blocks\" array");
      int ground = 0;
      for (const auto& b : j["blocks"])
        ground += static_cast<int>(b.size());
      std::vector<IndexSet> blocks;
      for (const auto& b : j["blocks"]) {
        std::vector<int> idx;
        for (const auto& v : b) idx.push_back(v.get<int>());
        blocks.emplace_back(std::move(idx), ground);
      }
      return matroid_rank_fn(Partition(std::move(blocks)),
                             detail::number_list<int>(j, "capacities"));
    }
    throw ParseError("unknown matroid variant: " + variant);
  }
  if (kind == "facility") {
    if (!j.contains("similarity") || !j["similarity"].is_array())
      throw ParseError("facility needs a \"similarity\" matrix");
    std::vector<std::vector<double>> sim;
    for (const auto& row : j["similarity"]) {
      std::vector<double> r;
      for (const auto& v : row) r.push_back(v.get<double>());
      sim.push_back(std::move(r));
    }
    return facility_location_fn(sim);
  }
  if (kind == "modular")
    return modular_fn(detail::number_list<double>(j, "weights"));
  throw ParseError("unknown instance kind: " + kind);
}

inline SetFunction load_instance(const std::string& path) {
  return instance_from_json(parse_json_file(path));
}

// ---------------------------------------------------------------------------
// CLI parameter literals
// ---------------------------------------------------------------------------

/// Partition literal: pipe-separated blocks of comma-separated 1-based
/// indices, e.g. "1,3|2,4".
inline Partition parse_partition(const std::string& text, int ground_n) {
  std::vector<IndexSet> blocks;
  std::stringstream ss(text);
  std::string block;
  while (std::getline(ss, block, '|')) {
    std::vector<int> idx;
    std::stringstream bs(block);
    std::string cell;
    while (std::getline(bs, cell, ',')) {
      try {
        std::size_t used = 0;
        const int v = std::stoi(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        idx.push_back(v);
      } catch (const std::exception&) {
        throw ParseError("partition literal: not an index: '" + cell + "'");
      }
    }
    blocks.emplace_back(std::move(idx), ground_n);
  }
  return Partition(std::move(blocks));
}

/// Grid literal: semicolon-separated name=comma-list assignments,
/// e.g. "k=1,2;p=3" or "h=3;p=3;l=0;k=2".
inline std::map<std::string, std::vector<int>> parse_grid(
    const std::string& text) {
  std::map<std::string, std::vector<int>> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ParseError("grid literal: expected name=values in '" + item + "'");
    const std::string name = item.substr(0, eq);
    std::vector<int> values;
    std::stringstream vs(item.substr(eq + 1));
    std::string cell;
    while (std::getline(vs, cell, ',')) {
      try {
        std::size_t used = 0;
        const int v = std::stoi(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        values.push_back(v);
      } catch (const std::exception&) {
        throw ParseError("grid literal: not an integer: '" + cell + "'");
      }
    }
    if (values.empty())
      throw ParseError("grid literal: no values for '" + name + "'");
    out[name] = std::move(values);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Report serialization
// ---------------------------------------------------------------------------

inline json to_json(const BoundParams& p) {
  json j = json::object();
  if (p.k) j["k"] = *p.k;
  if (p.p) j["p"] = *p.p;
  if (p.l) j["l"] = *p.l;
  if (p.h) j["h"] = *p.h;
  if (p.partition) j["partition"] = *p.partition;
  return j;
}

inline json to_json(const EqualityDiagnostic& d) {
  return json{{"condition", d.condition_name},
              {"holds", d.holds},
              {"max_violation", d.max_violation},
              {"witness", d.witness}};
}

inline json to_json(const BoundReport& rep) {
  json bounds = json::array();
  for (const BoundEntry& e : rep.entries)
    bounds.push_back(json{{"name", e.name},
                          {"params", to_json(e.params)},
                          {"log_bound", e.log_bound},
                          {"bound", e.bound},
                          {"slack_log", e.slack_log},
                          {"equality", e.equality}});
  json checks = json::array();
  for (const OrderingCheck& c : rep.ordering_checks)
    checks.push_back(json{{"description", c.description},
                          {"lhs_log", c.lhs_log},
                          {"rhs_log", c.rhs_log},
                          {"holds", c.holds},
                          {"strict", c.strict}});
  json diags = json::array();
  for (const EqualityDiagnostic& d : rep.diagnostics) diags.push_back(to_json(d));
  json j{{"matrix", rep.matrix_label},
         {"log_det", rep.log_det},
         {"bounds", bounds},
         {"ordering_checks", checks},
         {"diagnostics", diags}};
  if (!rep.permutation.empty()) j["permutation"] = rep.permutation;
  return j;
}

namespace detail {

inline std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

inline std::string param_text(const BoundParams& p) {
  std::string s;
  auto add = [&](const char* name, const std::optional<int>& v) {
    if (!v) return;
    if (!s.empty()) s += ",";
    s += std::string(name) + "=" + std::to_string(*v);
  };
  add("k", p.k);
  add("p", p.p);
  add("l", p.l);
  add("h", p.h);
  if (p.partition) {
    if (!s.empty()) s += ",";
    s += "P=" + *p.partition;
  }
  return s;
}

}  // namespace detail

/// Aligned plain-text rendering of a bound report. Display values are
/// exponentials of the log-domain internals, rounded only here.
inline std::string to_text(const BoundReport& rep) {
  std::ostringstream out;
  out << "matrix " << rep.matrix_label << ": log_det = "
      << detail::fixed4(rep.log_det) << ", det = "
      << detail::fixed4(std::exp(rep.log_det)) << "\n";
  std::size_t name_w = 4, param_w = 6;
  for (const BoundEntry& e : rep.entries) {
    name_w = std::max(name_w, e.name.size());
    param_w = std::max(param_w, detail::param_text(e.params).size());
  }
  char line[256];
  std::snprintf(line, sizeof(line), "%-*s  %-*s  %14s  %14s  %12s  %s",
                static_cast<int>(name_w), "name", static_cast<int>(param_w),
                "params", "bound", "log_bound", "slack_log", "equality");
  out << line << "\n";
  for (const BoundEntry& e : rep.entries) {
    std::snprintf(line, sizeof(line), "%-*s  %-*s  %14s  %14s  %12s  %s",
                  static_cast<int>(name_w), e.name.c_str(),
                  static_cast<int>(param_w), detail::param_text(e.params).c_str(),
                  detail::fixed4(e.bound).c_str(),
                  detail::fixed4(e.log_bound).c_str(),
                  detail::fixed4(e.slack_log).c_str(),
                  e.equality ? "yes" : "no");
    out << line << "\n";
  }
  if (!rep.ordering_checks.empty()) {
    out << "ordering checks:\n";
    for (const OrderingCheck& c : rep.ordering_checks)
      out << "  [" << (c.holds ? "ok" : "VIOLATED") << "] " << c.description
          << " (" << detail::fixed4(c.lhs_log) << " vs "
          << detail::fixed4(c.rhs_log) << (c.strict ? ", strict" : "") << ")\n";
  }
  if (!rep.diagnostics.empty()) {
    out << "equality diagnostics:\n";
    for (const EqualityDiagnostic& d : rep.diagnostics) {
      out << "  [" << (d.holds ? "holds" : "fails") << "] " << d.condition_name;
      if (!d.holds)
        out << " (max violation " << detail::fixed4(d.max_violation) << " at "
            << d.witness << ")";
      out << "\n";
    }
  }
  return out.str();
}

inline json to_json(const SuiteResult& r) {
  json failures = json::array();
  for (const SuiteFailure& f : r.failures)
    failures.push_back(json{{"spec", f.spec},
                            {"params", f.params},
                            {"slack", f.slack},
                            {"witness", f.witness}});
  return json{{"trials", r.trials},
              {"checks", r.checks},
              {"passed", r.passed()},
              {"max_negative_slack", r.max_negative_slack},
              {"failures", failures}};
}

}  // namespace subdet

#endif  // SUBDET_IO_HPP_
