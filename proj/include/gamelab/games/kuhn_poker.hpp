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

// Kuhn poker: three cards (J, Q, K), antes of 1, one betting round.
// Actions: 0 = pass (check/fold), 1 = bet (bet/call). Chance outcome ids are
// card indices 0..2.

#ifndef GAMELAB_GAMES_KUHN_POKER_HPP_
#define GAMELAB_GAMES_KUHN_POKER_HPP_

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "gamelab/kernel.hpp"

namespace gamelab {
namespace kuhn_poker {

inline constexpr Action kPass = 0;
inline constexpr Action kBet = 1;
inline constexpr int kNumCards = 3;
inline constexpr char kCardNames[] = "JQK";

class KuhnState : public StateImpl {
 public:
  PlayerRef CurrentPlayer() const override {
    if (cards_[0] < 0 || cards_[1] < 0) return PlayerRef::Chance();
    if (IsOver()) return PlayerRef::Terminal();
    return PlayerRef::Decision(static_cast<int>(bets_.size() % 2));
  }

  std::vector<Action> LegalActions(int) const override { return {kPass, kBet}; }

  std::vector<ChanceOutcome> ChanceOutcomes() const override {
    std::vector<ChanceOutcome> outcomes;
    const int remaining = cards_[0] < 0 ? kNumCards : kNumCards - 1;
    for (int c = 0; c < kNumCards; ++c) {
      if (c == cards_[0]) continue;
      outcomes.push_back({c, 1.0 / remaining});
    }
    return outcomes;
  }

  void ApplyActions(std::span<const Action> actions) override {
    if (cards_[0] < 0) {
      cards_[0] = static_cast<int>(actions[0]);
    } else if (cards_[1] < 0) {
      cards_[1] = static_cast<int>(actions[0]);
    } else {
      bets_ += actions[0] == kBet ? 'b' : 'p';
    }
  }

  std::vector<double> Returns() const override {
    const int winner = cards_[0] > cards_[1] ? 0 : 1;
    double amount = 0.0;
    int payee = winner;
    if (bets_ == "pp") {
      amount = 1.0;
    } else if (bets_ == "bb" || bets_ == "pbb") {
      amount = 2.0;
    } else if (bets_ == "bp") {
      amount = 1.0;
      payee = 0;
    } else {  // "pbp"
      amount = 1.0;
      payee = 1;
    }
    std::vector<double> returns(2, -amount);
    returns[payee] = amount;
    return returns;
  }

  std::string InformationStateKey(int player) const override {
    const int card = cards_[player];
    return "p" + std::to_string(player) + "|" + (card < 0 ? '?' : kCardNames[card]) + "|" + bets_;
  }

  std::string ToString() const override {
    std::string out;
    for (int p = 0; p < 2; ++p) out += cards_[p] < 0 ? '?' : kCardNames[cards_[p]];
    return out + " " + bets_;
  }

  std::string ActionToString(PlayerRef actor, Action action) const override {
    if (actor.is_chance()) return std::string("deal:") + kCardNames[action];
    return action == kBet ? "Bet" : "Pass";
  }

  std::unique_ptr<StateImpl> Clone() const override { return std::make_unique<KuhnState>(*this); }

 private:
  bool IsOver() const {
    return bets_ == "pp" || bets_ == "bp" || bets_ == "bb" || bets_ == "pbp" || bets_ == "pbb";
  }

  std::array<int, 2> cards_{-1, -1};
  std::string bets_;
};

class KuhnGame : public Game {
 public:
  explicit KuhnGame(GameParams params) : Game(Describe(), std::move(params)) {
    CheckParamKeys(Params(), "kuhn_poker", {});
  }

 protected:
  std::unique_ptr<StateImpl> NewInitialImpl() const override {
    return std::make_unique<KuhnState>();
  }

 private:
  static GameDescriptor Describe() {
    GameDescriptor d;
    d.short_name = "kuhn_poker";
    d.num_players = 2;
    d.utility_min = -2.0;
    d.utility_max = 2.0;
    d.max_game_length = 5;  // two deals + at most three bets
    d.chance_mode = ChanceMode::kExplicitStochastic;
    d.information = Information::kImperfect;
    d.utility_class = UtilityClass::kZeroSum;
    d.dynamics = Dynamics::kSequential;
    d.num_distinct_actions = 2;
    d.max_chance_outcomes = kNumCards;
    return d;
  }
};

}  // namespace kuhn_poker
}  // namespace gamelab

#endif  // GAMELAB_GAMES_KUHN_POKER_HPP_
