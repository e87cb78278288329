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

// Policies over information states, the average-policy accumulator shared by
// the iterative solvers, and the tab-separated policy file format.

#ifndef GAMELAB_POLICY_HPP_
#define GAMELAB_POLICY_HPP_

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "gamelab/kernel.hpp"

namespace gamelab {

using ActionDistribution = std::vector<std::pair<Action, double>>;

class Policy {
 public:
  virtual ~Policy() = default;
  virtual ActionDistribution ActionProbabilities(const State& state, int player) const = 0;

  ActionDistribution ActionProbabilities(const State& state) const {
    return ActionProbabilities(state, state.CurrentPlayer().index());
  }
};

// Map from information-state key to a distribution over legal actions. Keys
// encode the owning player, so one table holds a joint policy.
class TabularPolicy : public Policy {
 public:
  TabularPolicy() = default;

  using Policy::ActionProbabilities;
  ActionDistribution ActionProbabilities(const State& state, int player) const override {
    const std::string key = state.InformationStateKey(player);
    auto it = table_.find(key);
    if (it == table_.end()) Fail(ErrorKind::kMissingPolicyEntry, "'" + key + "'");
    return it->second;
  }

  void Set(const std::string& key, ActionDistribution distribution) {
    std::sort(distribution.begin(), distribution.end());
    table_[key] = std::move(distribution);
  }

  const ActionDistribution* Find(const std::string& key) const {
    auto it = table_.find(key);
    return it == table_.end() ? nullptr : &it->second;
  }

  const ActionDistribution& At(const std::string& key) const {
    auto it = table_.find(key);
    if (it == table_.end()) Fail(ErrorKind::kMissingPolicyEntry, "'" + key + "'");
    return it->second;
  }

  double Probability(const std::string& key, Action action) const {
    for (const auto& [a, p] : At(key)) {
      if (a == action) return p;
    }
    return 0.0;
  }

  std::size_t size() const { return table_.size(); }
  bool empty() const { return table_.empty(); }
  const std::map<std::string, ActionDistribution>& table() const { return table_; }

  friend bool operator==(const TabularPolicy& a, const TabularPolicy& b) { return a.table_ == b.table_; }

 private:
  std::map<std::string, ActionDistribution> table_;
};

// Uniform over legal actions, computed on the fly.
class UniformPolicy : public Policy {
 public:
  using Policy::ActionProbabilities;
  ActionDistribution ActionProbabilities(const State& state, int player) const override {
    const auto actions = state.LegalActions(player);
    ActionDistribution out;
    for (Action a : actions) out.emplace_back(a, 1.0 / static_cast<double>(actions.size()));
    return out;
  }
};

class FunctionPolicy : public Policy {
 public:
  using Fn = std::function<ActionDistribution(const State&, int)>;
  explicit FunctionPolicy(Fn fn) : fn_(std::move(fn)) {}
  using Policy::ActionProbabilities;
  ActionDistribution ActionProbabilities(const State& state, int player) const override {
    return fn_(state, player);
  }

 private:
  Fn fn_;
};

inline ActionDistribution UniformDistribution(const std::vector<Action>& actions) {
  ActionDistribution out;
  for (Action a : actions) out.emplace_back(a, 1.0 / static_cast<double>(actions.size()));
  return out;
}

// Calls `visit(state, player)` once per distinct decision information state.
inline void ForEachInformationState(const Game& game,
                                    const std::function<void(const State&, int)>& visit,
                                    std::size_t budget = kDefaultEnumerationBudget) {
  std::map<std::string, bool> seen;
  WalkHistories(
      game.NewInitialState(),
      [&](const State& state) {
        const PlayerRef current = state.CurrentPlayer();
        if (current.is_chance() || current.is_terminal()) return;
        const int first = current.is_decision() ? current.index() : 0;
        const int last = current.is_decision() ? current.index() : state.NumPlayers() - 1;
        for (int p = first; p <= last; ++p) {
          if (seen.emplace(state.InformationStateKey(p), true).second) visit(state, p);
        }
      },
      budget);
}

// Every decision information state mapped to the uniform distribution.
inline TabularPolicy UniformRandomPolicy(const Game& game,
                                         std::size_t budget = kDefaultEnumerationBudget) {
  TabularPolicy policy;
  ForEachInformationState(
      game,
      [&](const State& state, int p) {
        policy.Set(state.InformationStateKey(p), UniformDistribution(state.LegalActions(p)));
      },
      budget);
  return policy;
}

// Per-state non-negative action weights; normalizing yields a policy.
class AvgPolicyAccumulator {
 public:
  struct Entry {
    std::vector<Action> actions;
    std::vector<double> weights;
  };

  // Adds `weights` (aligned with `actions`) to the entry for `key`.
  void Add(const std::string& key, const std::vector<Action>& actions,
           std::span<const double> weights) {
    auto [it, inserted] = entries_.try_emplace(key);
    Entry& entry = it->second;
    if (inserted) {
      entry.actions = actions;
      entry.weights.assign(actions.size(), 0.0);
    }
    for (std::size_t i = 0; i < weights.size(); ++i) entry.weights[i] += weights[i];
  }

  // Ensures `key` exists, with zero mass if new.
  void Touch(const std::string& key, const std::vector<Action>& actions) {
    auto [it, inserted] = entries_.try_emplace(key);
    if (inserted) {
      it->second.actions = actions;
      it->second.weights.assign(actions.size(), 0.0);
    }
  }

  const std::map<std::string, Entry>& entries() const { return entries_; }
  std::map<std::string, Entry>& mutable_entries() { return entries_; }

  int iteration() const { return iteration_; }
  void set_iteration(int t) { iteration_ = t; }

 private:
  std::map<std::string, Entry> entries_;
  int iteration_ = 0;
};

// Normalizes weights per entry; entries with no mass become uniform.
inline ActionDistribution NormalizeWeights(const std::vector<Action>& actions,
                                           std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) return UniformDistribution(actions);
  ActionDistribution out;
  for (std::size_t i = 0; i < actions.size(); ++i) out.emplace_back(actions[i], weights[i] / total);
  return out;
}

inline TabularPolicy Normalize(const AvgPolicyAccumulator& accumulator) {
  TabularPolicy policy;
  for (const auto& [key, entry] : accumulator.entries()) {
    policy.Set(key, NormalizeWeights(entry.actions, entry.weights));
  }
  return policy;
}

// --- Policy text format -----------------------------------------------------
//
// One line per entry: <escaped key> TAB <action>=<prob>[,<action>=<prob>]...
// Keys percent-escape '%', TAB, CR and LF. Probabilities use the shortest
// decimal that round-trips. Lines are sorted by escaped key.

inline std::string EscapeKey(const std::string& key) {
  std::string out;
  for (char c : key) {
    switch (c) {
      case '%': out += "%25"; break;
      case '\t': out += "%09"; break;
      case '\n': out += "%0A"; break;
      case '\r': out += "%0D"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string UnescapeKey(const std::string& text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '%') {
      out += text[i];
      continue;
    }
    if (i + 2 >= text.size()) Fail(ErrorKind::kParseError, "truncated escape in '" + text + "'");
    const std::string hex = text.substr(i + 1, 2);
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(hex.data(), hex.data() + 2, value, 16);
    if (ec != std::errc() || ptr != hex.data() + 2) {
      Fail(ErrorKind::kParseError, "bad escape '%" + hex + "'");
    }
    out += static_cast<char>(value);
    i += 2;
  }
  return out;
}

// Shortest decimal representation that parses back to the same double.
inline std::string FormatDouble(double value) {
  if (value == 0.0) value = 0.0;  // print -0 as 0
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  (void)ec;
  return std::string(buffer, ptr);
}

inline double ParseDouble(const std::string& text) {
  double value = 0.0;
  const char* begin = text.data();
  if (!text.empty() && text[0] == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    Fail(ErrorKind::kParseError, "bad number '" + text + "'");
  }
  return value;
}

inline void WritePolicy(std::ostream& out, const TabularPolicy& policy) {
  std::vector<std::pair<std::string, const ActionDistribution*>> lines;
  for (const auto& [key, dist] : policy.table()) lines.emplace_back(EscapeKey(key), &dist);
  std::sort(lines.begin(), lines.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [key, dist] : lines) {
    out << key << '\t';
    for (std::size_t i = 0; i < dist->size(); ++i) {
      if (i) out << ',';
      out << (*dist)[i].first << '=' << FormatDouble((*dist)[i].second);
    }
    out << '\n';
  }
}

inline TabularPolicy ReadPolicy(std::istream& in) {
  TabularPolicy policy;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      Fail(ErrorKind::kParseError, "line " + std::to_string(line_number) + ": missing TAB");
    }
    const std::string key = UnescapeKey(line.substr(0, tab));
    ActionDistribution dist;
    double total = 0.0;
    std::size_t start = tab + 1;
    while (start <= line.size()) {
      std::size_t end = line.find(',', start);
      if (end == std::string::npos) end = line.size();
      const std::string item = line.substr(start, end - start);
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        Fail(ErrorKind::kParseError, "line " + std::to_string(line_number) + ": bad entry '" + item + "'");
      }
      Action action = 0;
      const std::string action_text = item.substr(0, eq);
      auto [ptr, ec] = std::from_chars(action_text.data(), action_text.data() + action_text.size(), action);
      if (ec != std::errc() || ptr != action_text.data() + action_text.size()) {
        Fail(ErrorKind::kParseError, "line " + std::to_string(line_number) + ": bad action '" + action_text + "'");
      }
      const double p = ParseDouble(item.substr(eq + 1));
      if (!(p >= 0.0)) {
        Fail(ErrorKind::kParseError, "line " + std::to_string(line_number) + ": negative probability");
      }
      total += p;
      dist.emplace_back(action, p);
      start = end + 1;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      Fail(ErrorKind::kParseError, "line " + std::to_string(line_number) + ": probabilities sum to " +
                                       FormatDouble(total));
    }
    policy.Set(key, std::move(dist));
  }
  return policy;
}

// Problems found when matching a policy against a game's information states:
// missing entries and mass on illegal actions.
inline std::vector<std::string> CheckPolicyAgainstGame(const Game& game, const TabularPolicy& policy,
                                                       std::size_t budget = kDefaultEnumerationBudget) {
  std::vector<std::string> problems;
  ForEachInformationState(
      game,
      [&](const State& state, int p) {
        const std::string key = state.InformationStateKey(p);
        const ActionDistribution* dist = policy.Find(key);
        if (dist == nullptr) {
          problems.push_back("missing entry for '" + key + "'");
          return;
        }
        const auto legal = state.LegalActions(p);
        for (const auto& [a, prob] : *dist) {
          if (prob > 0.0 && !std::binary_search(legal.begin(), legal.end(), a)) {
            problems.push_back("illegal action " + std::to_string(a) + " at '" + key + "'");
          }
        }
      },
      budget);
  return problems;
}

}  // namespace gamelab

#endif  // GAMELAB_POLICY_HPP_
