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

// Two-player Goofspiel with `num_cards` cards per suit. Each round chance
// reveals a prize card uniformly from the remaining prizes, then both players
// bid one card from hand simultaneously. The higher bid takes the prize's
// value in points; on a tied bid the prize is discarded. Returns are +1 / -1
// for the higher / lower point total and 0 on equal totals.
//
// Card of value v (1..num_cards) has action id v - 1, for bids and prizes.

#ifndef GAMELAB_GAMES_GOOFSPIEL_HPP_
#define GAMELAB_GAMES_GOOFSPIEL_HPP_

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "gamelab/kernel.hpp"

namespace gamelab {
namespace goofspiel {

inline constexpr int kDefaultNumCards = 4;

class GoofspielState : public StateImpl {
 public:
  explicit GoofspielState(int num_cards) : num_cards_(num_cards) {
    const unsigned full = (1u << num_cards) - 1u;
    prizes_left_ = full;
    hands_ = {full, full};
  }

  PlayerRef CurrentPlayer() const override {
    if (static_cast<int>(bids_[0].size()) == num_cards_) return PlayerRef::Terminal();
    if (current_prize_ < 0) return PlayerRef::Chance();
    return PlayerRef::Simultaneous();
  }

  std::vector<Action> LegalActions(int player) const override {
    std::vector<Action> actions;
    for (int c = 0; c < num_cards_; ++c) {
      if (hands_[player] & (1u << c)) actions.push_back(c);
    }
    return actions;
  }

  std::vector<ChanceOutcome> ChanceOutcomes() const override {
    std::vector<ChanceOutcome> outcomes;
    const int remaining = num_cards_ - static_cast<int>(prizes_.size());
    for (int c = 0; c < num_cards_; ++c) {
      if (prizes_left_ & (1u << c)) outcomes.push_back({c, 1.0 / remaining});
    }
    return outcomes;
  }

  void ApplyActions(std::span<const Action> actions) override {
    if (current_prize_ < 0) {
      current_prize_ = static_cast<int>(actions[0]);
      prizes_left_ &= ~(1u << current_prize_);
      prizes_.push_back(current_prize_);
      return;
    }
    for (int p = 0; p < 2; ++p) {
      hands_[p] &= ~(1u << actions[p]);
      bids_[p].push_back(static_cast<int>(actions[p]));
    }
    if (actions[0] != actions[1]) {
      points_[actions[0] > actions[1] ? 0 : 1] += current_prize_ + 1;
    }
    current_prize_ = -1;
  }

  std::vector<double> Returns() const override {
    if (points_[0] == points_[1]) return {0.0, 0.0};
    return points_[0] > points_[1] ? std::vector<double>{1.0, -1.0}
                                   : std::vector<double>{-1.0, 1.0};
  }

  // Bids are revealed after every round, so both bid sequences are public.
  std::string InformationStateKey(int player) const override {
    return "p" + std::to_string(player) + "|prizes:" + Cards(prizes_) + "|mine:" +
           Cards(bids_[player]) + "|theirs:" + Cards(bids_[1 - player]);
  }

  std::string ToString() const override {
    return "prizes:" + Cards(prizes_) + " p0:" + Cards(bids_[0]) + " p1:" + Cards(bids_[1]) +
           " points:" + std::to_string(points_[0]) + "-" + std::to_string(points_[1]);
  }

  std::string ActionToString(PlayerRef actor, Action action) const override {
    return (actor.is_chance() ? "prize:" : "bid:") + std::to_string(action + 1);
  }

  std::unique_ptr<StateImpl> Clone() const override {
    return std::make_unique<GoofspielState>(*this);
  }

 private:
  static std::string Cards(const std::vector<int>& cards) {
    std::string out;
    for (std::size_t i = 0; i < cards.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(cards[i] + 1);
    }
    return out;
  }

  int num_cards_;
  unsigned prizes_left_ = 0;
  std::array<unsigned, 2> hands_{};
  int current_prize_ = -1;
  std::vector<int> prizes_;
  std::array<std::vector<int>, 2> bids_;
  std::array<int, 2> points_{0, 0};
};

class GoofspielGame : public Game {
 public:
  explicit GoofspielGame(GameParams params)
      : Game(Describe(params), params), num_cards_(ParamInt(Params(), "num_cards", kDefaultNumCards)) {}

 protected:
  std::unique_ptr<StateImpl> NewInitialImpl() const override {
    return std::make_unique<GoofspielState>(num_cards_);
  }

 private:
  static GameDescriptor Describe(const GameParams& params) {
    CheckParamKeys(params, "goofspiel", {"num_cards"});
    const int n = ParamInt(params, "num_cards", kDefaultNumCards);
    if (n < 1 || n > 13) Fail(ErrorKind::kInvalidParameter, "num_cards must be in [1, 13]");
    GameDescriptor d;
    d.short_name = "goofspiel";
    d.num_players = 2;
    d.utility_min = -1.0;
    d.utility_max = 1.0;
    d.max_game_length = 2 * n;
    d.chance_mode = ChanceMode::kExplicitStochastic;
    d.information = Information::kImperfect;
    d.utility_class = UtilityClass::kZeroSum;
    d.dynamics = Dynamics::kSimultaneous;
    d.num_distinct_actions = n;
    d.max_chance_outcomes = n;
    return d;
  }

  int num_cards_;
};

}  // namespace goofspiel
}  // namespace gamelab

#endif  // GAMELAB_GAMES_GOOFSPIEL_HPP_
