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

// Two-player Pig. On each decision the mover either rolls (0) or stops (1) to
// bank the turn total; stopping is legal only with a positive turn total.
// Rolling a 1 forfeits the turn total and passes the turn. Reaching the
// target with banked score plus turn total wins immediately (+1 / -1). The
// game is a draw (0, 0) once `horizon` turns have been played.
//
// Chance outcome id = face - 1.

#ifndef GAMELAB_GAMES_PIG_HPP_
#define GAMELAB_GAMES_PIG_HPP_

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "gamelab/kernel.hpp"

namespace gamelab {
namespace pig {

inline constexpr Action kRoll = 0;
inline constexpr Action kStop = 1;
inline constexpr int kDefaultTargetScore = 20;
inline constexpr int kDefaultDiceSides = 6;
inline constexpr int kDefaultHorizon = 10;

struct PigRules {
  int target_score = kDefaultTargetScore;
  int dice_sides = kDefaultDiceSides;
  int horizon = kDefaultHorizon;
};

class PigState : public StateImpl {
 public:
  explicit PigState(const PigRules* rules) : rules_(rules) {}

  PlayerRef CurrentPlayer() const override {
    if (winner_ >= 0 || turns_played_ >= rules_->horizon) return PlayerRef::Terminal();
    if (awaiting_roll_) return PlayerRef::Chance();
    return PlayerRef::Decision(player_);
  }

  std::vector<Action> LegalActions(int) const override {
    if (turn_total_ > 0) return {kRoll, kStop};
    return {kRoll};
  }

  std::vector<ChanceOutcome> ChanceOutcomes() const override {
    std::vector<ChanceOutcome> outcomes;
    for (int f = 0; f < rules_->dice_sides; ++f) {
      outcomes.push_back({f, 1.0 / rules_->dice_sides});
    }
    return outcomes;
  }

  void ApplyActions(std::span<const Action> actions) override {
    const Action a = actions[0];
    if (!moves_.empty()) moves_ += ' ';
    if (awaiting_roll_) {
      const int face = static_cast<int>(a) + 1;
      moves_ += std::to_string(face);
      awaiting_roll_ = false;
      if (face == 1) {
        turn_total_ = 0;
        EndTurn();
        return;
      }
      turn_total_ += face;
      if (scores_[player_] + turn_total_ >= rules_->target_score) {
        scores_[player_] += turn_total_;
        turn_total_ = 0;
        winner_ = player_;
      }
      return;
    }
    if (a == kRoll) {
      moves_ += 'r';
      awaiting_roll_ = true;
    } else {
      moves_ += 's';
      scores_[player_] += turn_total_;
      turn_total_ = 0;
      EndTurn();
    }
  }

  std::vector<double> Returns() const override {
    if (winner_ < 0) return {0.0, 0.0};
    std::vector<double> returns(2, -1.0);
    returns[winner_] = 1.0;
    return returns;
  }

  // Keyed by the full move sequence so every history is its own
  // information state.
  std::string InformationStateKey(int player) const override {
    return "p" + std::to_string(player) + "|" + moves_;
  }

  std::string ToString() const override {
    return "to-move:" + std::to_string(player_) + " scores:" + std::to_string(scores_[0]) + "," +
           std::to_string(scores_[1]) + " turn-total:" + std::to_string(turn_total_) +
           " turns:" + std::to_string(turns_played_) + (awaiting_roll_ ? " rolling" : "");
  }

  std::string ActionToString(PlayerRef actor, Action action) const override {
    if (actor.is_chance()) return "face:" + std::to_string(action + 1);
    return action == kRoll ? "Roll" : "Stop";
  }

  std::unique_ptr<StateImpl> Clone() const override { return std::make_unique<PigState>(*this); }

  int score(int player) const { return scores_[player]; }
  int turn_total() const { return turn_total_; }
  int turns_played() const { return turns_played_; }

 private:
  void EndTurn() {
    player_ = 1 - player_;
    ++turns_played_;
  }

  const PigRules* rules_;
  std::array<int, 2> scores_{0, 0};
  int turn_total_ = 0;
  int player_ = 0;
  int turns_played_ = 0;
  int winner_ = -1;
  bool awaiting_roll_ = false;
  std::string moves_;
};

class PigGame : public Game {
 public:
  explicit PigGame(GameParams params) : Game(Describe(params), params) {
    rules_.target_score = ParamInt(Params(), "target_score", kDefaultTargetScore);
    rules_.dice_sides = ParamInt(Params(), "dice_sides", kDefaultDiceSides);
    rules_.horizon = ParamInt(Params(), "horizon", kDefaultHorizon);
  }

  const PigRules& rules() const { return rules_; }

 protected:
  std::unique_ptr<StateImpl> NewInitialImpl() const override {
    return std::make_unique<PigState>(&rules_);
  }

 private:
  static GameDescriptor Describe(const GameParams& params) {
    CheckParamKeys(params, "pig", {"target_score", "dice_sides", "horizon"});
    const int target = ParamInt(params, "target_score", kDefaultTargetScore);
    const int sides = ParamInt(params, "dice_sides", kDefaultDiceSides);
    const int horizon = ParamInt(params, "horizon", kDefaultHorizon);
    if (target < 1) Fail(ErrorKind::kInvalidParameter, "target_score must be >= 1");
    if (sides < 2) Fail(ErrorKind::kInvalidParameter, "dice_sides must be >= 2");
    if (horizon < 1) Fail(ErrorKind::kInvalidParameter, "horizon must be >= 1");
    GameDescriptor d;
    d.short_name = "pig";
    d.num_players = 2;
    d.utility_min = -1.0;
    d.utility_max = 1.0;
    // Every non-busting roll adds at least 2, so a turn holds at most
    // ceil(target / 2) rolls (two records each) plus a final stop.
    d.max_game_length = horizon * (2 * ((target + 1) / 2) + 1);
    d.chance_mode = ChanceMode::kExplicitStochastic;
    d.information = Information::kPerfect;
    d.utility_class = UtilityClass::kZeroSum;
    d.dynamics = Dynamics::kSequential;
    d.num_distinct_actions = 2;
    d.max_chance_outcomes = sides;
    return d;
  }

  PigRules rules_;
};

}  // namespace pig
}  // namespace gamelab

#endif  // GAMELAB_GAMES_PIG_HPP_
