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

// Two-player Leduc hold'em. Six cards (J, Q, K in two suits), antes of 1, two
// betting rounds with fixed raise sizes 2 and 4 and at most two raises per
// round, one public card revealed between rounds. A pair with the public card
// beats any unpaired hand; otherwise the higher rank wins and equal ranks
// split the pot.
//
// Actions: 0 = fold (only when facing a raise), 1 = call/check, 2 = raise.
// Card ids: rank * 2 + suit, so 0..5 = Js Jh Qs Qh Ks Kh.

#ifndef GAMELAB_GAMES_LEDUC_POKER_HPP_
#define GAMELAB_GAMES_LEDUC_POKER_HPP_

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "gamelab/kernel.hpp"

namespace gamelab {
namespace leduc_poker {

inline constexpr Action kFold = 0;
inline constexpr Action kCall = 1;
inline constexpr Action kRaise = 2;
inline constexpr int kNumCards = 6;
inline constexpr int kMaxRaises = 2;
inline constexpr std::array<int, 2> kRaiseSize = {2, 4};

inline std::string CardName(int card) {
  if (card < 0) return "-";
  return std::string(1, "JQK"[card / 2]) + "sh"[card % 2];
}

class LeducState : public StateImpl {
 public:
  PlayerRef CurrentPlayer() const override {
    if (private_[0] < 0 || private_[1] < 0) return PlayerRef::Chance();
    if (folded_ >= 0 || finished_) return PlayerRef::Terminal();
    if (round_ == 1 && public_ < 0) return PlayerRef::Chance();
    return PlayerRef::Decision(to_act_);
  }

  std::vector<Action> LegalActions(int player) const override {
    std::vector<Action> actions;
    if (contributions_[1 - player] > contributions_[player]) actions.push_back(kFold);
    actions.push_back(kCall);
    if (raises_ < kMaxRaises) actions.push_back(kRaise);
    return actions;
  }

  std::vector<ChanceOutcome> ChanceOutcomes() const override {
    std::vector<int> available;
    for (int c = 0; c < kNumCards; ++c) {
      if (c != private_[0] && c != private_[1]) available.push_back(c);
    }
    std::vector<ChanceOutcome> outcomes;
    for (int c : available) outcomes.push_back({c, 1.0 / static_cast<double>(available.size())});
    return outcomes;
  }

  void ApplyActions(std::span<const Action> actions) override {
    const int a = static_cast<int>(actions[0]);
    if (private_[0] < 0) {
      private_[0] = a;
      return;
    }
    if (private_[1] < 0) {
      private_[1] = a;
      return;
    }
    if (round_ == 1 && public_ < 0) {
      public_ = a;
      return;
    }
    const int me = to_act_;
    std::string& seq = sequence_[round_];
    if (a == kFold) {
      seq += 'f';
      folded_ = me;
      return;
    }
    if (a == kRaise) {
      seq += 'r';
      contributions_[me] = contributions_[1 - me] + kRaiseSize[round_];
      ++raises_;
      to_act_ = 1 - me;
      return;
    }
    // Call or check. The round closes on a check-check or a call of a raise.
    const bool facing_raise = contributions_[1 - me] > contributions_[me];
    contributions_[me] = contributions_[1 - me];
    seq += 'c';
    if (facing_raise || seq.size() >= 2) {
      if (round_ == 0) {
        round_ = 1;
        raises_ = 0;
        to_act_ = 0;
      } else {
        finished_ = true;
      }
    } else {
      to_act_ = 1 - me;
    }
  }

  std::vector<double> Returns() const override {
    std::vector<double> returns(2, 0.0);
    if (folded_ >= 0) {
      returns[folded_] = -contributions_[folded_];
      returns[1 - folded_] = contributions_[folded_];
      return returns;
    }
    const int s0 = HandStrength(0);
    const int s1 = HandStrength(1);
    if (s0 == s1) return returns;
    const int winner = s0 > s1 ? 0 : 1;
    returns[winner] = contributions_[1 - winner];
    returns[1 - winner] = -contributions_[1 - winner];
    return returns;
  }

  std::string InformationStateKey(int player) const override {
    return "p" + std::to_string(player) + "|" + CardName(private_[player]) + "|" +
           CardName(public_) + "|" + sequence_[0] + "/" + sequence_[1];
  }

  std::string ToString() const override {
    return CardName(private_[0]) + " " + CardName(private_[1]) + " | " + CardName(public_) +
           " | " + sequence_[0] + "/" + sequence_[1] + " | pot " +
           std::to_string(contributions_[0]) + ":" + std::to_string(contributions_[1]);
  }

  std::string ActionToString(PlayerRef actor, Action action) const override {
    if (actor.is_chance()) return "deal:" + CardName(static_cast<int>(action));
    switch (action) {
      case kFold: return "Fold";
      case kCall: return "Call";
      default: return "Raise";
    }
  }

  std::unique_ptr<StateImpl> Clone() const override { return std::make_unique<LeducState>(*this); }

  const std::array<int, 2>& contributions() const { return contributions_; }

 private:
  int HandStrength(int player) const {
    const int rank = private_[player] / 2;
    const bool pair = rank == public_ / 2;
    return pair ? 100 + rank : rank;
  }

  std::array<int, 2> private_{-1, -1};
  int public_ = -1;
  int round_ = 0;
  int raises_ = 0;
  int to_act_ = 0;
  int folded_ = -1;
  bool finished_ = false;
  std::array<int, 2> contributions_{1, 1};
  std::array<std::string, 2> sequence_;
};

class LeducGame : public Game {
 public:
  explicit LeducGame(GameParams params) : Game(Describe(), std::move(params)) {
    CheckParamKeys(Params(), "leduc_poker", {});
  }

 protected:
  std::unique_ptr<StateImpl> NewInitialImpl() const override {
    return std::make_unique<LeducState>();
  }

 private:
  static GameDescriptor Describe() {
    GameDescriptor d;
    d.short_name = "leduc_poker";
    d.num_players = 2;
    // Ante 1 plus two raises of 2 and two raises of 4.
    d.utility_min = -13.0;
    d.utility_max = 13.0;
    d.max_game_length = 3 + 4 + 4;
    d.chance_mode = ChanceMode::kExplicitStochastic;
    d.information = Information::kImperfect;
    d.utility_class = UtilityClass::kZeroSum;
    d.dynamics = Dynamics::kSequential;
    d.num_distinct_actions = 3;
    d.max_chance_outcomes = kNumCards;
    return d;
  }
};

}  // namespace leduc_poker
}  // namespace gamelab

#endif  // GAMELAB_GAMES_LEDUC_POKER_HPP_
