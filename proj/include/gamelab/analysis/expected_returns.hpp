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

#ifndef GAMELAB_ANALYSIS_EXPECTED_RETURNS_HPP_
#define GAMELAB_ANALYSIS_EXPECTED_RETURNS_HPP_

#include <functional>
#include <vector>

#include "gamelab/kernel.hpp"
#include "gamelab/policy.hpp"

namespace gamelab {

// Exact expected returns of `policy` from `state` by full tree walk. Chance
// nodes are weighted by their outcome distribution, decisions by the policy,
// and joint actions by the product of the players' probabilities.
inline std::vector<double> ExpectedReturns(const State& state, const Policy& policy,
                                           std::size_t budget = kDefaultEnumerationBudget) {
  const int n = state.NumPlayers();
  std::size_t visited = 0;
  std::function<std::vector<double>(const State&)> value = [&](const State& s) {
    if (++visited > budget) {
      Fail(ErrorKind::kBudgetExceeded, "more than " + std::to_string(budget) + " histories");
    }
    const PlayerRef current = s.CurrentPlayer();
    if (current.is_terminal()) return s.Returns();
    std::vector<double> total(n, 0.0);
    auto accumulate = [&](double p, const State& child) {
      if (p == 0.0) return;
      const auto v = value(child);
      for (int i = 0; i < n; ++i) total[i] += p * v[i];
    };
    if (current.is_chance()) {
      for (const auto& o : s.ChanceOutcomes()) accumulate(o.probability, s.Child(o.action));
    } else if (current.is_decision()) {
      for (const auto& [a, p] : policy.ActionProbabilities(s, current.index())) {
        accumulate(p, s.Child(a));
      }
    } else {
      std::vector<ActionDistribution> per_player(n);
      for (int i = 0; i < n; ++i) per_player[i] = policy.ActionProbabilities(s, i);
      std::vector<Action> joint(n);
      std::function<void(int, double)> expand = [&](int i, double p) {
        if (p == 0.0) return;
        if (i == n) {
          accumulate(p, s.Child(std::span<const Action>(joint)));
          return;
        }
        for (const auto& [a, q] : per_player[i]) {
          joint[i] = a;
          expand(i + 1, p * q);
        }
      };
      expand(0, 1.0);
    }
    return total;
  };
  return value(state);
}

inline std::vector<double> ExpectedReturns(const Game& game, const Policy& policy,
                                           std::size_t budget = kDefaultEnumerationBudget) {
  return ExpectedReturns(game.NewInitialState(), policy, budget);
}

}  // namespace gamelab

#endif  // GAMELAB_ANALYSIS_EXPECTED_RETURNS_HPP_
