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

#ifndef GAMELAB_ANALYSIS_STATES_HPP_
#define GAMELAB_ANALYSIS_STATES_HPP_

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gamelab/kernel.hpp"

namespace gamelab {

struct StateEnumerationOptions {
  bool include_chance = false;
  bool include_terminals = false;
  std::size_t budget = kDefaultEnumerationBudget;
};

// Distinct reachable states keyed by State::ToString, in depth-first
// discovery order. Decision states are always included.
class StateMap {
 public:
  void Insert(const std::string& key, const State& state) {
    if (index_.emplace(key, keys_.size()).second) {
      keys_.push_back(key);
      states_.push_back(state);
    }
  }

  std::size_t size() const { return keys_.size(); }
  bool contains(const std::string& key) const { return index_.count(key) > 0; }
  const State& at(const std::string& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) Fail(ErrorKind::kInvalidArgument, "no state '" + key + "'");
    return states_[it->second];
  }
  const std::vector<std::string>& keys() const { return keys_; }
  const std::vector<State>& states() const { return states_; }

 private:
  std::vector<std::string> keys_;
  std::vector<State> states_;
  std::unordered_map<std::string, std::size_t> index_;
};

inline StateMap GetAllStates(const Game& game, const StateEnumerationOptions& options = {}) {
  StateMap map;
  std::unordered_map<std::string, bool> visited;
  std::function<void(const State&)> walk = [&](const State& state) {
    std::string key = state.ToString();
    if (!visited.emplace(key, true).second) return;
    if (visited.size() > options.budget) {
      Fail(ErrorKind::kBudgetExceeded, "more than " + std::to_string(options.budget) + " states");
    }
    const PlayerRef current = state.CurrentPlayer();
    const bool keep = (current.is_terminal() && options.include_terminals) ||
                      (current.is_chance() && options.include_chance) ||
                      current.is_decision() || current.is_simultaneous();
    if (keep) map.Insert(key, state);
    for (auto& [actions, child] : Children(state)) walk(child);
  };
  walk(game.NewInitialState());
  return map;
}

}  // namespace gamelab

#endif  // GAMELAB_ANALYSIS_STATES_HPP_
