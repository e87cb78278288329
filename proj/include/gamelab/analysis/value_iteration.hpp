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

#ifndef GAMELAB_ANALYSIS_VALUE_ITERATION_HPP_
#define GAMELAB_ANALYSIS_VALUE_ITERATION_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "gamelab/kernel.hpp"

namespace gamelab {

// State values keyed by State::ToString. Decision states hold the value for
// the player to move; chance and terminal states hold player 0's value.
struct ValueIterationResult {
  std::unordered_map<std::string, double> values;
  std::unordered_map<std::string, double> player0_values;
  std::string root_key;
  int sweeps = 0;
  double last_change = 0.0;

  double Value(const State& state) const { return Lookup(values, state.ToString()); }
  double Player0Value(const State& state) const {
    return Lookup(player0_values, state.ToString());
  }

 private:
  static double Lookup(const std::unordered_map<std::string, double>& map, const std::string& key) {
    auto it = map.find(key);
    if (it == map.end()) Fail(ErrorKind::kInvalidArgument, "state not enumerated: " + key);
    return it->second;
  }
};

inline void RequireValueIterationClass(const Game& game) {
  const GameDescriptor& d = game.Descriptor();
  const bool sequential_perfect =
      d.dynamics == Dynamics::kSequential && d.information == Information::kPerfect;
  const bool single = d.num_players == 1;
  const bool two_zero_sum = d.num_players == 2 && d.utility_class == UtilityClass::kZeroSum;
  if (!sequential_perfect || !(single || two_zero_sum)) {
    Fail(ErrorKind::kUnsupportedGameClass,
         game.ToString() +
             ": value iteration needs a single-agent or two-player zero-sum "
             "turn-taking game with perfect information");
  }
}

// Gauss-Seidel value iteration over the distinct states of the game. States
// are swept in depth-first post-order, so on acyclic state graphs the first
// sweep is already exact and the second confirms the fixed point.
inline ValueIterationResult ValueIteration(const Game& game, double tolerance = 1e-12,
                                           std::size_t budget = kDefaultEnumerationBudget) {
  RequireValueIterationClass(game);
  struct Node {
    std::string key;
    int kind = 0;  // 0 terminal, 1 chance, 2 decision
    int player = 0;
    double terminal = 0.0;
    std::vector<int> children;
    std::vector<double> probs;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::string, int> index;
  std::function<int(const State&)> visit = [&](const State& state) -> int {
    std::string key = state.ToString();
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    if (index.size() >= budget) {
      Fail(ErrorKind::kBudgetExceeded, "more than " + std::to_string(budget) + " states");
    }
    index.emplace(key, -1);  // in progress; the state graphs here are acyclic
    Node node;
    node.key = key;
    const PlayerRef current = state.CurrentPlayer();
    if (current.is_terminal()) {
      node.terminal = state.Returns()[0];
    } else if (current.is_chance()) {
      node.kind = 1;
      for (const auto& o : state.ChanceOutcomes()) {
        node.children.push_back(visit(state.Child(o.action)));
        node.probs.push_back(o.probability);
      }
    } else {
      node.kind = 2;
      node.player = current.index();
      for (Action a : state.LegalActions()) node.children.push_back(visit(state.Child(a)));
    }
    if (std::find(node.children.begin(), node.children.end(), -1) != node.children.end()) {
      Fail(ErrorKind::kUnsupportedGameClass, "state graph has a cycle at " + key);
    }
    const int id = static_cast<int>(nodes.size());
    nodes.push_back(std::move(node));
    index[nodes.back().key] = id;
    return id;
  };
  const State root = game.NewInitialState();
  const int root_id = visit(root);

  std::vector<double> v(nodes.size(), 0.0);
  ValueIterationResult result;
  result.root_key = nodes[root_id].key;
  do {
    double change = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const Node& n = nodes[i];
      double value = n.terminal;
      if (n.kind == 1) {
        value = 0.0;
        for (std::size_t c = 0; c < n.children.size(); ++c) value += n.probs[c] * v[n.children[c]];
      } else if (n.kind == 2) {
        // Player 1 maximizes -V0, i.e. minimizes V0.
        const double sign = n.player == 0 ? 1.0 : -1.0;
        value = -std::numeric_limits<double>::infinity();
        for (int c : n.children) value = std::max(value, sign * v[c]);
        value *= sign;
      }
      change = std::max(change, std::abs(value - v[i]));
      v[i] = value;
    }
    ++result.sweeps;
    result.last_change = change;
  } while (result.last_change >= tolerance);

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    result.player0_values.emplace(n.key, v[i]);
    const bool flip = n.kind == 2 && n.player == 1;
    result.values.emplace(n.key, flip ? -v[i] : v[i]);
  }
  return result;
}

}  // namespace gamelab

#endif  // GAMELAB_ANALYSIS_VALUE_ITERATION_HPP_
