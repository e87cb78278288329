// Copyright 2026 The gamelab Authors. All rights reserved.
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

// Normal-form payoff tables for the evolutionary tools, with the text file
// format and heuristic-payoff-table (HPT) expansion.

#ifndef GAMELAB_EGT_PAYOFF_TABLE_HPP_
#define GAMELAB_EGT_PAYOFF_TABLE_HPP_

#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gamelab/error.hpp"
#include "gamelab/policy.hpp"

namespace gamelab {

// One payoff tensor per population, row-major. A single population holds a
// symmetric game as a k x k matrix (row strategy against column strategy);
// P populations hold k1 x ... x kP tensors.
struct PayoffTable {
  std::vector<int> strategies;
  std::vector<std::vector<double>> payoffs;

  int populations() const { return static_cast<int>(strategies.size()); }
  bool single_population() const { return strategies.size() == 1; }

  std::vector<int> Shape() const {
    if (single_population()) return {strategies[0], strategies[0]};
    return strategies;
  }

  std::size_t TensorSize() const {
    std::size_t size = 1;
    for (int k : Shape()) size *= static_cast<std::size_t>(k);
    return size;
  }

  std::size_t Offset(const std::vector<int>& index) const {
    const std::vector<int> shape = Shape();
    std::size_t offset = 0;
    for (std::size_t d = 0; d < shape.size(); ++d) offset = offset * shape[d] + index[d];
    return offset;
  }

  double At(int population, const std::vector<int>& index) const {
    return payoffs[population][Offset(index)];
  }

  void Validate() const {
    if (strategies.empty()) Fail(ErrorKind::kDimensionMismatch, "payoff table has no populations");
    for (int k : strategies) {
      if (k < 1) Fail(ErrorKind::kDimensionMismatch, "every population needs a strategy");
    }
    if (payoffs.size() != strategies.size()) {
      Fail(ErrorKind::kDimensionMismatch, "one payoff tensor per population");
    }
    for (const auto& tensor : payoffs) {
      if (tensor.size() != TensorSize()) {
        Fail(ErrorKind::kDimensionMismatch, "payoff tensor size does not match the strategies");
      }
      for (double v : tensor) {
        if (!std::isfinite(v)) Fail(ErrorKind::kInvalidArgument, "non-finite payoff");
      }
    }
  }

  bool operator==(const PayoffTable&) const = default;
};

inline PayoffTable SinglePopulationTable(const std::vector<std::vector<double>>& matrix) {
  PayoffTable table;
  table.strategies = {static_cast<int>(matrix.size())};
  table.payoffs.emplace_back();
  for (const auto& row : matrix) {
    if (row.size() != matrix.size()) Fail(ErrorKind::kDimensionMismatch, "matrix is not square");
    table.payoffs[0].insert(table.payoffs[0].end(), row.begin(), row.end());
  }
  return table;
}

inline PayoffTable TwoPopulationTable(const std::vector<std::vector<double>>& row_payoffs,
                                      const std::vector<std::vector<double>>& col_payoffs) {
  PayoffTable table;
  if (row_payoffs.empty() || row_payoffs.size() != col_payoffs.size()) {
    Fail(ErrorKind::kDimensionMismatch, "row and column payoffs differ in shape");
  }
  table.strategies = {static_cast<int>(row_payoffs.size()),
                      static_cast<int>(row_payoffs[0].size())};
  table.payoffs.resize(2);
  for (std::size_t r = 0; r < row_payoffs.size(); ++r) {
    if (row_payoffs[r].size() != row_payoffs[0].size() ||
        col_payoffs[r].size() != row_payoffs[0].size()) {
      Fail(ErrorKind::kDimensionMismatch, "row and column payoffs differ in shape");
    }
    table.payoffs[0].insert(table.payoffs[0].end(), row_payoffs[r].begin(), row_payoffs[r].end());
    table.payoffs[1].insert(table.payoffs[1].end(), col_payoffs[r].begin(), col_payoffs[r].end());
  }
  return table;
}

// Population `p`'s tensor as a matrix (two-dimensional tables only).
inline std::vector<std::vector<double>> TableMatrix(const PayoffTable& table, int p) {
  const std::vector<int> shape = table.Shape();
  if (shape.size() != 2) Fail(ErrorKind::kUnsupportedDimension, "table is not two-dimensional");
  std::vector<std::vector<double>> m(shape[0], std::vector<double>(shape[1]));
  for (int r = 0; r < shape[0]; ++r) {
    for (int c = 0; c < shape[1]; ++c) m[r][c] = table.payoffs[p][r * shape[1] + c];
  }
  return m;
}

inline void WritePayoffTable(std::ostream& out, const PayoffTable& table) {
  table.Validate();
  out << "populations=" << table.populations() << " strategies=";
  for (int p = 0; p < table.populations(); ++p) out << (p ? "," : "") << table.strategies[p];
  out << "\n";
  const std::vector<int> shape = table.Shape();
  const std::size_t width = shape.back();
  for (int p = 0; p < table.populations(); ++p) {
    if (p > 0) out << "\n";
    const auto& tensor = table.payoffs[p];
    for (std::size_t i = 0; i < tensor.size(); ++i) {
      out << FormatDouble(tensor[i]) << ((i + 1) % width == 0 ? "\n" : " ");
    }
  }
}

namespace payoff_internal {

inline std::vector<std::string> Split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  return parts;
}

inline int ParseCount(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) {
    Fail(ErrorKind::kParseError, "bad " + what + " '" + text + "'");
  }
  return value;
}

inline std::vector<double> ParseRow(const std::string& line) {
  std::vector<double> row;
  std::istringstream in(line);
  std::string token;
  while (in >> token) row.push_back(ParseDouble(token));
  return row;
}

}  // namespace payoff_internal

inline PayoffTable ReadHeuristicPayoffTable(std::istream& in, const std::string& header);

inline PayoffTable ReadPayoffTable(std::istream& in) {
  using namespace payoff_internal;
  std::string header;
  if (!std::getline(in, header)) Fail(ErrorKind::kParseError, "empty payoff table");
  if (header.rfind("hpt ", 0) == 0) return ReadHeuristicPayoffTable(in, header);
  std::istringstream h(header);
  std::string populations_field, strategies_field, extra;
  h >> populations_field >> strategies_field;
  if (populations_field.rfind("populations=", 0) != 0 ||
      strategies_field.rfind("strategies=", 0) != 0 || (h >> extra)) {
    Fail(ErrorKind::kParseError, "bad payoff table header '" + header + "'");
  }
  PayoffTable table;
  const int populations = ParseCount(populations_field.substr(12), "population count");
  for (const auto& k : Split(strategies_field.substr(11), ',')) {
    table.strategies.push_back(ParseCount(k, "strategy count"));
  }
  if (populations < 1 || static_cast<int>(table.strategies.size()) != populations) {
    Fail(ErrorKind::kParseError, "population count does not match the strategies list");
  }
  const std::vector<int> shape = table.Shape();
  const std::size_t width = shape.back();
  const std::size_t rows = table.TensorSize() / width;
  std::string line;
  for (int p = 0; p < populations; ++p) {
    if (p > 0) {
      if (!std::getline(in, line) || !line.empty()) {
        Fail(ErrorKind::kParseError, "populations must be separated by one blank line");
      }
    }
    std::vector<double> tensor;
    for (std::size_t r = 0; r < rows; ++r) {
      if (!std::getline(in, line)) Fail(ErrorKind::kParseError, "payoff table ends early");
      const auto row = ParseRow(line);
      if (row.size() != width) {
        Fail(ErrorKind::kParseError, "expected " + std::to_string(width) + " entries in '" +
                                         line + "'");
      }
      tensor.insert(tensor.end(), row.begin(), row.end());
    }
    table.payoffs.push_back(std::move(tensor));
  }
  while (std::getline(in, line)) {
    if (!line.empty()) Fail(ErrorKind::kParseError, "trailing content '" + line + "'");
  }
  table.Validate();
  return table;
}

// Expands an HPT (rows of strategy counts and the payoff each strategy
// earns in that match-up) into expected payoff tensors. Two players give a
// single-population k x k matrix; N > 2 players give N identical-role
// populations over k^N profiles.
inline PayoffTable ReadHeuristicPayoffTable(std::istream& in, const std::string& header) {
  using namespace payoff_internal;
  std::istringstream h(header);
  std::string tag, rows_field, strategies_field;
  h >> tag >> rows_field >> strategies_field;
  if (rows_field.rfind("rows=", 0) != 0 || strategies_field.rfind("strategies=", 0) != 0) {
    Fail(ErrorKind::kParseError, "bad HPT header '" + header + "'");
  }
  const int num_rows = ParseCount(rows_field.substr(5), "row count");
  const int k = ParseCount(strategies_field.substr(11), "strategy count");
  if (k < 1 || num_rows < 1) Fail(ErrorKind::kParseError, "HPT needs rows and strategies");
  std::map<std::vector<int>, std::vector<double>> rows;
  int players = -1;
  std::string line;
  for (int r = 0; r < num_rows; ++r) {
    if (!std::getline(in, line)) Fail(ErrorKind::kParseError, "HPT ends early");
    const auto values = ParseRow(line);
    if (static_cast<int>(values.size()) != 2 * k) {
      Fail(ErrorKind::kParseError, "HPT row needs " + std::to_string(2 * k) + " entries");
    }
    std::vector<int> counts(k);
    for (int s = 0; s < k; ++s) {
      counts[s] = static_cast<int>(values[s]);
      if (counts[s] != values[s] || counts[s] < 0) {
        Fail(ErrorKind::kParseError, "HPT counts must be non-negative integers");
      }
    }
    const int total = std::accumulate(counts.begin(), counts.end(), 0);
    if (players >= 0 && total != players) {
      Fail(ErrorKind::kParseError, "HPT rows disagree on the number of players");
    }
    players = total;
    rows[counts] = std::vector<double>(values.begin() + k, values.end());
  }
  if (players < 2) Fail(ErrorKind::kParseError, "HPT needs at least two players");
  auto lookup = [&](const std::vector<int>& profile) -> const std::vector<double>& {
    std::vector<int> counts(k, 0);
    for (int s : profile) ++counts[s];
    auto it = rows.find(counts);
    if (it == rows.end()) Fail(ErrorKind::kParseError, "HPT lacks a row for a profile");
    return it->second;
  };
  PayoffTable table;
  if (players == 2) {
    table.strategies = {k};
    table.payoffs.assign(1, std::vector<double>(k * k));
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) table.payoffs[0][a * k + b] = lookup({a, b})[a];
    }
    return table;
  }
  table.strategies.assign(players, k);
  table.payoffs.assign(players, std::vector<double>(table.TensorSize()));
  std::vector<int> profile(players, 0);
  for (std::size_t offset = 0; offset < table.TensorSize(); ++offset) {
    const auto& payoff = lookup(profile);
    for (int p = 0; p < players; ++p) table.payoffs[p][offset] = payoff[profile[p]];
    for (int d = players - 1; d >= 0; --d) {
      if (++profile[d] < k) break;
      profile[d] = 0;
    }
  }
  return table;
}

}  // namespace gamelab

#endif  // GAMELAB_EGT_PAYOFF_TABLE_HPP_
