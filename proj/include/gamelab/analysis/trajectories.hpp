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

#ifndef GAMELAB_ANALYSIS_TRAJECTORIES_HPP_
#define GAMELAB_ANALYSIS_TRAJECTORIES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "gamelab/kernel.hpp"
#include "gamelab/policy.hpp"
#include "gamelab/rng.hpp"

namespace gamelab {

// One decision made along an episode. At simultaneous nodes each player's
// choice is a separate step sharing the same transition index.
struct DecisionStep {
  int transition = 0;
  int player = 0;
  std::string info_state_key;
  ActionDistribution policy;
  Action action = 0;
};

struct Episode {
  std::vector<DecisionStep> decisions;
  std::vector<HistoryRecord> transitions;    // every applied record, chance included
  std::vector<std::vector<double>> rewards;  // per transition, per player
  std::vector<double> returns;
  int length = 0;  // |rho|, number of transitions
};

struct TrajectoryBatch {
  std::uint64_t seed = 0;
  std::vector<Episode> episodes;

  std::vector<double> MeanReturns() const {
    std::vector<double> mean;
    for (const auto& e : episodes) {
      if (mean.empty()) mean.assign(e.returns.size(), 0.0);
      for (std::size_t i = 0; i < e.returns.size(); ++i) mean[i] += e.returns[i];
    }
    for (double& m : mean) m /= static_cast<double>(episodes.size());
    return mean;
  }
};

inline Action SampleAction(const ActionDistribution& dist, Rng& rng) {
  std::vector<double> weights;
  weights.reserve(dist.size());
  for (const auto& [a, p] : dist) weights.push_back(p);
  return dist[rng.Sample(weights)].first;
}

inline TrajectoryBatch SampleTrajectories(const Game& game, const Policy& policy, int num_episodes,
                                          std::uint64_t seed) {
  if (num_episodes < 1) Fail(ErrorKind::kInvalidArgument, "num_episodes must be >= 1");
  TrajectoryBatch batch;
  batch.seed = seed;
  Rng rng(seed);
  const int n = game.NumPlayers();
  for (int e = 0; e < num_episodes; ++e) {
    Episode episode;
    State state = game.NewInitialState();
    while (!state.IsTerminal()) {
      const PlayerRef current = state.CurrentPlayer();
      HistoryRecord record;
      record.actor = current;
      if (current.is_chance()) {
        const auto outcomes = state.ChanceOutcomes();
        std::vector<double> weights;
        for (const auto& o : outcomes) weights.push_back(o.probability);
        record.actions.push_back(outcomes[rng.Sample(weights)].action);
      } else {
        const int first = current.is_decision() ? current.index() : 0;
        const int last = current.is_decision() ? current.index() : n - 1;
        for (int p = first; p <= last; ++p) {
          DecisionStep step;
          step.transition = episode.length;
          step.player = p;
          step.info_state_key = state.InformationStateKey(p);
          step.policy = policy.ActionProbabilities(state, p);
          step.action = SampleAction(step.policy, rng);
          record.actions.push_back(step.action);
          episode.decisions.push_back(std::move(step));
        }
      }
      state = state.Child(std::span<const Action>(record.actions));
      episode.rewards.push_back(state.Rewards());
      episode.transitions.push_back(std::move(record));
      ++episode.length;
    }
    episode.returns = state.Returns();
    batch.episodes.push_back(std::move(episode));
  }
  return batch;
}

}  // namespace gamelab

#endif  // GAMELAB_ANALYSIS_TRAJECTORIES_HPP_
