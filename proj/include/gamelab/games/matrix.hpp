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

// Two-player one-shot matrix games.

#ifndef GAMELAB_GAMES_MATRIX_HPP_
#define GAMELAB_GAMES_MATRIX_HPP_

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "gamelab/kernel.hpp"

namespace gamelab {

using Matrix = std::vector<std::vector<double>>;

struct MatrixGameSpec {
  std::string short_name = "matrix";
  Matrix row_payoffs;
  Matrix col_payoffs;
  std::vector<std::string> row_action_names;
  std::vector<std::string> col_action_names;
};

namespace matrix_detail {

inline UtilityClass Classify(const Matrix& row, const Matrix& col, double* k) {
  bool identical = true;
  bool constant = true;
  const double first_sum = row[0][0] + col[0][0];
  for (std::size_t r = 0; r < row.size(); ++r) {
    for (std::size_t c = 0; c < row[r].size(); ++c) {
      identical = identical && row[r][c] == col[r][c];
      constant = constant && row[r][c] + col[r][c] == first_sum;
    }
  }
  *k = 0.0;
  if (constant && first_sum == 0.0) return UtilityClass::kZeroSum;
  if (constant) {
    *k = first_sum;
    return UtilityClass::kConstantSum;
  }
  if (identical) return UtilityClass::kIdenticalInterest;
  return UtilityClass::kGeneralSum;
}

}  // namespace matrix_detail

class MatrixGame;

class MatrixState : public StateImpl {
 public:
  explicit MatrixState(const MatrixGameSpec* spec) : spec_(spec) {}

  PlayerRef CurrentPlayer() const override {
    return played_ ? PlayerRef::Terminal() : PlayerRef::Simultaneous();
  }
  std::vector<Action> LegalActions(int player) const override {
    const std::size_t count =
        player == 0 ? spec_->row_payoffs.size() : spec_->row_payoffs[0].size();
    std::vector<Action> actions(count);
    for (std::size_t i = 0; i < count; ++i) actions[i] = static_cast<Action>(i);
    return actions;
  }
  void ApplyActions(std::span<const Action> actions) override {
    row_ = static_cast<int>(actions[0]);
    col_ = static_cast<int>(actions[1]);
    played_ = true;
  }
  std::vector<double> Returns() const override {
    return {spec_->row_payoffs[row_][col_], spec_->col_payoffs[row_][col_]};
  }
  std::string InformationStateKey(int player) const override {
    std::string key = "p" + std::to_string(player);
    if (played_) key += "|" + std::to_string(row_) + ":" + std::to_string(col_);
    return key;
  }
  std::string ToString() const override {
    if (!played_) return spec_->short_name + ": awaiting joint action";
    return spec_->short_name + ": " + spec_->row_action_names[row_] + " vs " +
           spec_->col_action_names[col_];
  }
  std::string ActionToString(PlayerRef actor, Action action) const override {
    const auto& names = actor.index() == 1 ? spec_->col_action_names : spec_->row_action_names;
    return names.at(action);
  }
  std::unique_ptr<StateImpl> Clone() const override { return std::make_unique<MatrixState>(*this); }

 private:
  const MatrixGameSpec* spec_;
  bool played_ = false;
  int row_ = -1;
  int col_ = -1;
};

class MatrixGame : public Game {
 public:
  MatrixGame(MatrixGameSpec spec, GameParams params)
      : Game(Describe(spec), std::move(params)), spec_(std::move(spec)) {}

  const MatrixGameSpec& spec() const { return spec_; }

 protected:
  std::unique_ptr<StateImpl> NewInitialImpl() const override {
    return std::make_unique<MatrixState>(&spec_);
  }

 private:
  static GameDescriptor Describe(const MatrixGameSpec& spec) {
    GameDescriptor d;
    d.short_name = spec.short_name;
    d.num_players = 2;
    double lo = spec.row_payoffs[0][0];
    double hi = lo;
    for (const Matrix* m : {&spec.row_payoffs, &spec.col_payoffs}) {
      for (const auto& row : *m) {
        for (double v : row) {
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      }
    }
    // A degenerate constant game still needs a non-empty utility interval.
    if (lo == hi) hi = lo + 1.0;
    d.utility_min = lo;
    d.utility_max = hi;
    d.max_game_length = 1;
    d.chance_mode = ChanceMode::kNone;
    d.information = Information::kImperfect;
    d.utility_class = matrix_detail::Classify(spec.row_payoffs, spec.col_payoffs, &d.constant_sum);
    d.dynamics = Dynamics::kSimultaneous;
    d.num_distinct_actions = static_cast<int>(
        std::max(spec.row_payoffs.size(), spec.row_payoffs[0].size()));
    return d;
  }

  MatrixGameSpec spec_;
};

// One-shot simultaneous game whose returns are the tensor entries at the
// chosen joint action.
inline std::shared_ptr<const Game> MatrixFromTensors(Matrix row, Matrix col,
                                                     std::string short_name = "matrix",
                                                     std::vector<std::string> row_names = {},
                                                     std::vector<std::string> col_names = {}) {
  auto rectangular = [](const Matrix& m) {
    if (m.empty() || m[0].empty()) return false;
    for (const auto& r : m) {
      if (r.size() != m[0].size()) return false;
    }
    return true;
  };
  if (!rectangular(row) || !rectangular(col) || row.size() != col.size() ||
      row[0].size() != col[0].size()) {
    Fail(ErrorKind::kShapeMismatch, "row and column payoff tensors must share a non-empty shape");
  }
  MatrixGameSpec spec;
  spec.short_name = std::move(short_name);
  if (row_names.empty()) {
    for (std::size_t i = 0; i < row.size(); ++i) row_names.push_back("r" + std::to_string(i));
  }
  if (col_names.empty()) {
    for (std::size_t i = 0; i < row[0].size(); ++i) col_names.push_back("c" + std::to_string(i));
  }
  spec.row_payoffs = std::move(row);
  spec.col_payoffs = std::move(col);
  spec.row_action_names = std::move(row_names);
  spec.col_action_names = std::move(col_names);
  return std::make_shared<MatrixGame>(std::move(spec), GameParams{});
}

inline std::shared_ptr<const Game> MakeRockPaperScissors() {
  Matrix row = {{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}};
  Matrix col = {{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}};
  std::vector<std::string> names = {"Rock", "Paper", "Scissors"};
  return MatrixFromTensors(row, col, "matrix_rps", names, names);
}

inline std::shared_ptr<const Game> MakeMatchingPennies() {
  Matrix row = {{1, -1}, {-1, 1}};
  Matrix col = {{-1, 1}, {1, -1}};
  std::vector<std::string> names = {"Heads", "Tails"};
  return MatrixFromTensors(row, col, "matrix_mp", names, names);
}

inline std::shared_ptr<const Game> MakePrisonersDilemma() {
  Matrix row = {{5, 0}, {10, 1}};
  Matrix col = {{5, 10}, {0, 1}};
  std::vector<std::string> names = {"Cooperate", "Defect"};
  return MatrixFromTensors(row, col, "matrix_pd", names, names);
}

inline std::shared_ptr<const Game> MakeStagHunt() {
  Matrix row = {{2, 0}, {1, 1}};
  Matrix col = {{2, 1}, {0, 1}};
  std::vector<std::string> names = {"Stag", "Hare"};
  return MatrixFromTensors(row, col, "matrix_sh", names, names);
}

}  // namespace gamelab

#endif  // GAMELAB_GAMES_MATRIX_HPP_
