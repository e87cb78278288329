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

// Tabular Q-learning with legal-action masking, as single-agent learners or
// independent learners in turn-based multiagent games.

#ifndef GAMELAB_RL_HPP_
#define GAMELAB_RL_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gamelab/analysis/trajectories.hpp"
#include "gamelab/kernel.hpp"
#include "gamelab/policy.hpp"
#include "gamelab/rng.hpp"

namespace gamelab {

// Q(s, a) for the legal actions of every visited information state. Unseen
// pairs read as 0.
class QTable {
 public:
  double Get(const std::string& key, Action action) const {
    auto it = rows_.find(key);
    if (it == rows_.end()) return 0.0;
    for (const auto& [a, q] : it->second) {
      if (a == action) return q;
    }
    return 0.0;
  }

  std::vector<double> Values(const std::string& key, const std::vector<Action>& legal) const {
    std::vector<double> values;
    values.reserve(legal.size());
    for (Action a : legal) values.push_back(Get(key, a));
    return values;
  }

  // Row for `key`, created over `legal` with zeros on first use.
  std::vector<std::pair<Action, double>>& Row(const std::string& key,
                                              const std::vector<Action>& legal) {
    auto [it, inserted] = rows_.try_emplace(key);
    if (inserted) {
      for (Action a : legal) it->second.emplace_back(a, 0.0);
    }
    return it->second;
  }

  double& At(const std::string& key, const std::vector<Action>& legal, Action action) {
    for (auto& [a, q] : Row(key, legal)) {
      if (a == action) return q;
    }
    Fail(ErrorKind::kIllegalAction, "action " + std::to_string(action) + " not legal at " + key);
  }

  double MaxValue(const std::string& key, const std::vector<Action>& legal) const {
    const auto values = Values(key, legal);
    return *std::max_element(values.begin(), values.end());
  }

  std::size_t size() const { return rows_.size(); }
  const std::unordered_map<std::string, std::vector<std::pair<Action, double>>>& rows() const {
    return rows_;
  }
  bool operator==(const QTable& other) const { return rows_ == other.rows_; }

 private:
  std::unordered_map<std::string, std::vector<std::pair<Action, double>>> rows_;
};

// Masked epsilon-greedy over `legal` given Q values aligned with it:
// 1 - eps + eps/|A| on the first maximizer and eps/|A| on the other legal
// actions.
inline ActionDistribution EpsilonGreedy(const std::vector<double>& q,
                                        const std::vector<Action>& legal, double epsilon) {
  if (legal.empty()) Fail(ErrorKind::kEmptyActionSet, "epsilon-greedy over no legal actions");
  if (q.size() != legal.size()) Fail(ErrorKind::kDimensionMismatch, "one Q value per action");
  if (epsilon < 0.0 || epsilon > 1.0) Fail(ErrorKind::kInvalidArgument, "epsilon outside [0, 1]");
  const std::size_t best = std::max_element(q.begin(), q.end()) - q.begin();
  const double share = epsilon / legal.size();
  ActionDistribution dist;
  for (std::size_t a = 0; a < legal.size(); ++a) {
    dist.emplace_back(legal[a], a == best ? 1.0 - epsilon + share : share);
  }
  return dist;
}

inline ActionDistribution EpsilonGreedy(const QTable& table, const std::string& key,
                                        const std::vector<Action>& legal, double epsilon) {
  return EpsilonGreedy(table.Values(key, legal), legal, epsilon);
}

// The same distribution over all `num_actions` ids, zero off the legal set.
inline std::vector<double> EpsilonGreedyDense(const QTable& table, const std::string& key,
                                              const std::vector<Action>& legal, double epsilon,
                                              int num_actions) {
  std::vector<double> dense(num_actions, 0.0);
  for (const auto& [a, p] : EpsilonGreedy(table, key, legal, epsilon)) {
    if (a < 0 || a >= num_actions) Fail(ErrorKind::kIllegalAction, "action id out of range");
    dense[a] = p;
  }
  return dense;
}

struct QLearnConfig {
  double alpha = 0.1;
  double gamma = 1.0;
  double epsilon = 0.1;
  int episodes = 1000;
  std::uint64_t seed = 0;

  void Validate() const {
    if (!(alpha > 0.0 && alpha <= 1.0)) Fail(ErrorKind::kInvalidArgument, "alpha outside (0, 1]");
    if (!(gamma >= 0.0 && gamma <= 1.0)) Fail(ErrorKind::kInvalidArgument, "gamma outside [0, 1]");
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
      Fail(ErrorKind::kInvalidArgument, "epsilon outside [0, 1]");
    }
    if (episodes < 0) Fail(ErrorKind::kInvalidArgument, "episodes must be >= 0");
  }
};

// Who plays each seat: a learner, or a fixed policy treated as part of the
// environment.
struct Seat {
  const Policy* fixed = nullptr;
  static Seat Learner() { return {}; }
  static Seat Fixed(const Policy& policy) { return {&policy}; }
};

struct QLearnResult {
  std::vector<QTable> tables;                   // one per seat; fixed seats stay empty
  std::vector<std::vector<double>> returns;     // per episode, per player
};

// Runs `config.episodes` episodes. Each learner updates at its own
// consecutive decision points; other seats' moves and chance are part of the
// transition, and their rewards accumulate into the learner's reward.
inline QLearnResult QLearningRun(
    const Game& game, const QLearnConfig& config, std::vector<Seat> seats = {},
    const std::function<void(int episode, const QLearnResult&)>& on_episode = nullptr) {
  config.Validate();
  if (game.Descriptor().dynamics == Dynamics::kSimultaneous) {
    Fail(ErrorKind::kUnsupportedGameClass, "Q-learning needs a turn-based game");
  }
  const int n = game.NumPlayers();
  if (seats.empty()) seats.assign(n, Seat::Learner());
  if (static_cast<int>(seats.size()) != n) {
    Fail(ErrorKind::kDimensionMismatch, "one seat per player");
  }
  QLearnResult result;
  result.tables.resize(n);
  Rng rng(config.seed);

  struct Pending {
    bool active = false;
    std::string key;
    std::vector<Action> legal;
    Action action = 0;
    double reward = 0.0;
  };
  for (int episode = 0; episode < config.episodes; ++episode) {
    std::vector<Pending> pending(n);
    State state = game.NewInitialState();
    auto update = [&](int p, double bootstrap) {
      Pending& pend = pending[p];
      double& q = result.tables[p].At(pend.key, pend.legal, pend.action);
      q += config.alpha * (pend.reward + config.gamma * bootstrap - q);
      pend.active = false;
    };
    while (!state.IsTerminal()) {
      Action action;
      if (state.IsChanceNode()) {
        const auto outcomes = state.ChanceOutcomes();
        std::vector<double> weights;
        for (const auto& o : outcomes) weights.push_back(o.probability);
        action = outcomes[rng.Sample(weights)].action;
      } else {
        const int p = state.CurrentPlayer().index();
        const std::vector<Action> legal = state.LegalActions();
        if (seats[p].fixed != nullptr) {
          action = SampleAction(seats[p].fixed->ActionProbabilities(state, p), rng);
        } else {
          const std::string key = state.InformationStateKey(p);
          QTable& table = result.tables[p];
          if (pending[p].active) update(p, table.MaxValue(key, legal));
          table.Row(key, legal);
          action = SampleAction(EpsilonGreedy(table, key, legal, config.epsilon), rng);
          pending[p] = {true, key, legal, action, 0.0};
        }
      }
      state = state.Child(action);
      const std::vector<double> rewards = state.Rewards();
      for (int p = 0; p < n; ++p) {
        if (pending[p].active) pending[p].reward += rewards[p];
      }
    }
    for (int p = 0; p < n; ++p) {
      if (pending[p].active) update(p, 0.0);
    }
    result.returns.push_back(state.Returns());
    if (on_episode) on_episode(episode + 1, result);
  }
  return result;
}

// Greedy policy read from per-player Q tables; unseen states act as if all
// values were 0 (lowest legal action).
class GreedyQPolicy : public Policy {
 public:
  using Policy::ActionProbabilities;
  explicit GreedyQPolicy(std::vector<QTable> tables) : tables_(std::move(tables)) {}
  ActionDistribution ActionProbabilities(const State& state, int player) const override {
    const std::vector<Action> legal = state.LegalActions(player);
    return EpsilonGreedy(tables_.at(player), state.InformationStateKey(player), legal, 0.0);
  }
  const std::vector<QTable>& tables() const { return tables_; }

 private:
  std::vector<QTable> tables_;
};

}  // namespace gamelab

#endif  // GAMELAB_RL_HPP_
