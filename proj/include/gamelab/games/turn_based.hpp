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

// Turn-based view of a simultaneous-move game. Each joint decision becomes
// one decision per player in index order; the pending choices are hidden from
// later movers because information-state keys are forwarded unchanged from
// the wrapped game.

#ifndef GAMELAB_GAMES_TURN_BASED_HPP_
#define GAMELAB_GAMES_TURN_BASED_HPP_

#include <memory>
#include <string>
#include <vector>

#include "gamelab/kernel.hpp"

namespace gamelab {

class TurnBasedState : public StateImpl {
 public:
  TurnBasedState(std::shared_ptr<const StateImpl> inner, int num_players)
      : inner_(std::move(inner)), num_players_(num_players) {}

  PlayerRef CurrentPlayer() const override {
    const PlayerRef inner = inner_->CurrentPlayer();
    if (inner.is_simultaneous()) return PlayerRef::Decision(static_cast<int>(pending_.size()));
    return inner;
  }

  std::vector<Action> LegalActions(int player) const override {
    return inner_->LegalActions(player);
  }

  std::vector<ChanceOutcome> ChanceOutcomes() const override { return inner_->ChanceOutcomes(); }

  void ApplyActions(std::span<const Action> actions) override {
    if (inner_->CurrentPlayer().is_simultaneous()) {
      pending_.push_back(actions[0]);
      if (static_cast<int>(pending_.size()) < num_players_) return;
      auto next = inner_->Clone();
      next->ApplyActions(pending_);
      inner_ = std::move(next);
      pending_.clear();
      return;
    }
    auto next = inner_->Clone();
    next->ApplyActions(actions);
    inner_ = std::move(next);
  }

  std::vector<double> Returns() const override { return inner_->Returns(); }

  std::string InformationStateKey(int player) const override {
    return inner_->InformationStateKey(player);
  }

  std::string ToString() const override {
    std::string out = inner_->ToString();
    if (!pending_.empty()) {
      out += " | pending:";
      for (std::size_t i = 0; i < pending_.size(); ++i) {
        out += (i ? "," : "") + std::to_string(pending_[i]);
      }
    }
    return out;
  }

  std::string ActionToString(PlayerRef actor, Action action) const override {
    return inner_->ActionToString(actor, action);
  }

  std::unique_ptr<StateImpl> Clone() const override {
    return std::make_unique<TurnBasedState>(*this);
  }

 private:
  std::shared_ptr<const StateImpl> inner_;
  int num_players_;
  std::vector<Action> pending_;
};

class TurnBasedGame : public Game {
 public:
  explicit TurnBasedGame(std::shared_ptr<const Game> inner)
      : Game(Describe(*inner), GameParams{{"game", inner->ToString()}}), inner_(std::move(inner)) {}

  const std::shared_ptr<const Game>& inner() const { return inner_; }

 protected:
  std::unique_ptr<StateImpl> NewInitialImpl() const override {
    return std::make_unique<TurnBasedState>(inner_->NewInitialState().impl().Clone(),
                                            inner_->NumPlayers());
  }

 private:
  static GameDescriptor Describe(const Game& inner) {
    if (inner.Descriptor().dynamics != Dynamics::kSimultaneous) {
      Fail(ErrorKind::kAlreadyTurnBased, inner.ToString());
    }
    GameDescriptor d = inner.Descriptor();
    d.short_name = "turn_based";
    d.dynamics = Dynamics::kSequential;
    d.information = Information::kImperfect;
    d.max_game_length = inner.Descriptor().max_game_length * inner.NumPlayers();
    return d;
  }

  std::shared_ptr<const Game> inner_;
};

inline std::shared_ptr<const Game> ToTurnBased(std::shared_ptr<const Game> game) {
  return std::make_shared<TurnBasedGame>(std::move(game));
}

// Identity for sequential games, the turn-based view otherwise.
inline std::shared_ptr<const Game> AsSequential(std::shared_ptr<const Game> game) {
  if (game->Descriptor().dynamics == Dynamics::kSimultaneous) return ToTurnBased(std::move(game));
  return game;
}

}  // namespace gamelab

#endif  // GAMELAB_GAMES_TURN_BASED_HPP_
