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

// Tic-Tac-Toe. Action id = cell index in row-major order (0..8). Player 0
// plays x and moves first.

#ifndef GAMELAB_GAMES_TIC_TAC_TOE_HPP_
#define GAMELAB_GAMES_TIC_TAC_TOE_HPP_

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "gamelab/kernel.hpp"

namespace gamelab {
namespace tic_tac_toe {

inline constexpr int kNumCells = 9;

enum class Cell : char { kEmpty = '.', kCross = 'x', kNought = 'o' };

class TicTacToeState : public StateImpl {
 public:
  PlayerRef CurrentPlayer() const override {
    if (Winner() >= 0 || moves_.size() == kNumCells) return PlayerRef::Terminal();
    return PlayerRef::Decision(static_cast<int>(moves_.size() % 2));
  }

  std::vector<Action> LegalActions(int) const override {
    std::vector<Action> actions;
    for (int c = 0; c < kNumCells; ++c) {
      if (board_[c] == Cell::kEmpty) actions.push_back(c);
    }
    return actions;
  }

  void ApplyActions(std::span<const Action> actions) override {
    const int cell = static_cast<int>(actions[0]);
    board_[cell] = moves_.size() % 2 == 0 ? Cell::kCross : Cell::kNought;
    moves_.push_back(static_cast<char>('0' + cell));
  }

  std::vector<double> Returns() const override {
    const int winner = Winner();
    if (winner < 0) return {0.0, 0.0};
    std::vector<double> returns(2, -1.0);
    returns[winner] = 1.0;
    return returns;
  }

  // Perfect information: the move sequence identifies the history exactly.
  std::string InformationStateKey(int player) const override {
    return "p" + std::to_string(player) + "|" + moves_;
  }

  std::string ToString() const override {
    std::string out;
    for (int r = 0; r < 3; ++r) {
      if (r) out += '\n';
      for (int c = 0; c < 3; ++c) out += static_cast<char>(board_[r * 3 + c]);
    }
    return out;
  }

  std::string ActionToString(PlayerRef actor, Action action) const override {
    const char mark = actor.index() == 0 ? 'x' : 'o';
    return std::string(1, mark) + "(" + std::to_string(action / 3) + "," +
           std::to_string(action % 3) + ")";
  }

  std::unique_ptr<StateImpl> Clone() const override {
    return std::make_unique<TicTacToeState>(*this);
  }

  std::string BoardString() const {
    std::string out;
    for (Cell c : board_) out += static_cast<char>(c);
    return out;
  }

 private:
  int Winner() const {
    static constexpr int kLines[8][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6},
                                         {1, 4, 7}, {2, 5, 8}, {0, 4, 8}, {2, 4, 6}};
    for (const auto& line : kLines) {
      const Cell c = board_[line[0]];
      if (c != Cell::kEmpty && c == board_[line[1]] && c == board_[line[2]]) {
        return c == Cell::kCross ? 0 : 1;
      }
    }
    return -1;
  }

  std::array<Cell, kNumCells> board_{Cell::kEmpty, Cell::kEmpty, Cell::kEmpty,
                                     Cell::kEmpty, Cell::kEmpty, Cell::kEmpty,
                                     Cell::kEmpty, Cell::kEmpty, Cell::kEmpty};
  std::string moves_;
};

class TicTacToeGame : public Game {
 public:
  explicit TicTacToeGame(GameParams params) : Game(Describe(), std::move(params)) {
    CheckParamKeys(Params(), "tic_tac_toe", {});
  }

 protected:
  std::unique_ptr<StateImpl> NewInitialImpl() const override {
    return std::make_unique<TicTacToeState>();
  }

 private:
  static GameDescriptor Describe() {
    GameDescriptor d;
    d.short_name = "tic_tac_toe";
    d.num_players = 2;
    d.utility_min = -1.0;
    d.utility_max = 1.0;
    d.max_game_length = kNumCells;
    d.chance_mode = ChanceMode::kNone;
    d.information = Information::kPerfect;
    d.utility_class = UtilityClass::kZeroSum;
    d.dynamics = Dynamics::kSequential;
    d.num_distinct_actions = kNumCells;
    return d;
  }
};

}  // namespace tic_tac_toe
}  // namespace gamelab

#endif  // GAMELAB_GAMES_TIC_TAC_TOE_HPP_
