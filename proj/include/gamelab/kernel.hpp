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

// Core game abstraction: players, actions, immutable games and value-typed
// states. Games implement StateImpl; everything else in the library talks to
// the State wrapper, which validates inputs and records the history.

#ifndef GAMELAB_KERNEL_HPP_
#define GAMELAB_KERNEL_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gamelab/error.hpp"

namespace gamelab {

using Action = std::int64_t;

inline constexpr std::size_t kDefaultEnumerationBudget = 1'000'000;

class PlayerRef {
 public:
  enum class Tag : std::uint8_t { kDecision, kChance, kSimultaneous, kTerminal };

  static constexpr PlayerRef Decision(int index) { return PlayerRef(Tag::kDecision, index); }
  static constexpr PlayerRef Chance() { return PlayerRef(Tag::kChance, -1); }
  static constexpr PlayerRef Simultaneous() { return PlayerRef(Tag::kSimultaneous, -1); }
  static constexpr PlayerRef Terminal() { return PlayerRef(Tag::kTerminal, -1); }

  constexpr Tag tag() const { return tag_; }
  // Only meaningful for decision players.
  constexpr int index() const { return index_; }

  constexpr bool is_decision() const { return tag_ == Tag::kDecision; }
  constexpr bool is_chance() const { return tag_ == Tag::kChance; }
  constexpr bool is_simultaneous() const { return tag_ == Tag::kSimultaneous; }
  constexpr bool is_terminal() const { return tag_ == Tag::kTerminal; }

  friend constexpr bool operator==(PlayerRef a, PlayerRef b) {
    return a.tag_ == b.tag_ && a.index_ == b.index_;
  }

  std::string ToString() const {
    switch (tag_) {
      case Tag::kDecision: return "player" + std::to_string(index_);
      case Tag::kChance: return "chance";
      case Tag::kSimultaneous: return "simultaneous";
      case Tag::kTerminal: return "terminal";
    }
    return "?";
  }

 private:
  constexpr PlayerRef(Tag tag, int index) : tag_(tag), index_(index) {}
  Tag tag_;
  int index_;
};

struct ChanceOutcome {
  Action action;
  double probability;
};

enum class ChanceMode { kNone, kExplicitStochastic };
enum class Information { kPerfect, kImperfect };
enum class UtilityClass { kZeroSum, kConstantSum, kGeneralSum, kIdenticalInterest };
enum class Dynamics { kSequential, kSimultaneous };

struct GameDescriptor {
  std::string short_name;
  int num_players = 2;
  double utility_min = -1.0;
  double utility_max = 1.0;
  int max_game_length = 0;
  ChanceMode chance_mode = ChanceMode::kNone;
  Information information = Information::kPerfect;
  UtilityClass utility_class = UtilityClass::kZeroSum;
  // The k of a constant-sum game; zero for zero-sum games.
  double constant_sum = 0.0;
  Dynamics dynamics = Dynamics::kSequential;
  int num_distinct_actions = 0;
  int max_chance_outcomes = 0;

  bool IsConstantSum() const {
    return utility_class == UtilityClass::kZeroSum ||
           utility_class == UtilityClass::kConstantSum;
  }
};

// Game parameters as parsed text; typed access goes through the helpers so the
// offending key can be named in errors.
using GameParams = std::map<std::string, std::string>;

inline int ParamInt(const GameParams& params, const std::string& key, int fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(it->second, &used);
  } catch (const std::exception&) {
    Fail(ErrorKind::kInvalidParameter, key + "=" + it->second + " is not an integer");
  }
  if (used != it->second.size()) {
    Fail(ErrorKind::kInvalidParameter, key + "=" + it->second + " is not an integer");
  }
  return value;
}

inline std::string ParamString(const GameParams& params, const std::string& key,
                               const std::string& fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

inline void CheckParamKeys(const GameParams& params, const std::string& game,
                           std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : params) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      Fail(ErrorKind::kInvalidParameter, "'" + key + "' is not a parameter of " + game);
    }
  }
}

// Game-side state implementation. Mutated only while building a child state.
class StateImpl {
 public:
  virtual ~StateImpl() = default;

  virtual PlayerRef CurrentPlayer() const = 0;
  // Legal actions of `player` at a decision or simultaneous node, ascending.
  virtual std::vector<Action> LegalActions(int player) const = 0;
  virtual std::vector<ChanceOutcome> ChanceOutcomes() const { return {}; }
  // One action at turn-based and chance nodes, one per player at simultaneous
  // nodes. Inputs are validated by State before this is called.
  virtual void ApplyActions(std::span<const Action> actions) = 0;
  // Called only on terminal states.
  virtual std::vector<double> Returns() const = 0;
  virtual std::string InformationStateKey(int player) const = 0;
  // Full description of the situation. Two states with equal strings have
  // identical futures, so this doubles as the de-duplication key.
  virtual std::string ToString() const = 0;
  virtual std::string ActionToString(PlayerRef actor, Action action) const {
    (void)actor;
    return std::to_string(action);
  }
  virtual std::unique_ptr<StateImpl> Clone() const = 0;
};

struct HistoryRecord {
  PlayerRef actor = PlayerRef::Terminal();
  std::vector<Action> actions;  // one entry, or one per player when joint

  friend bool operator==(const HistoryRecord&, const HistoryRecord&) = default;
};

class Game;

// Immutable, cheaply copyable game state. Child() returns a new state and
// leaves this one untouched; the history is a persistent list shared with the
// parent.
class State {
 public:
  State(std::shared_ptr<const Game> game, std::shared_ptr<const StateImpl> impl)
      : game_(std::move(game)), impl_(std::move(impl)) {}

  const std::shared_ptr<const Game>& game() const { return game_; }
  const StateImpl& impl() const { return *impl_; }
  int NumPlayers() const;

  PlayerRef CurrentPlayer() const { return impl_->CurrentPlayer(); }
  bool IsTerminal() const { return CurrentPlayer().is_terminal(); }
  bool IsChanceNode() const { return CurrentPlayer().is_chance(); }
  bool IsSimultaneousNode() const { return CurrentPlayer().is_simultaneous(); }

  std::vector<Action> LegalActions(int player) const {
    const PlayerRef current = CurrentPlayer();
    if (current.is_terminal()) Fail(ErrorKind::kTerminalState, "no legal actions at " + ToString());
    CheckPlayer(player);
    if (current.is_chance() ||
        (current.is_decision() && current.index() != player)) {
      Fail(ErrorKind::kWrongPlayer, "player " + std::to_string(player) +
                                        " does not act at " + current.ToString() + " node");
    }
    return impl_->LegalActions(player);
  }

  // Actions of the acting decision player, or the chance outcome ids.
  std::vector<Action> LegalActions() const {
    const PlayerRef current = CurrentPlayer();
    if (current.is_terminal()) Fail(ErrorKind::kTerminalState, "no legal actions at " + ToString());
    if (current.is_chance()) {
      std::vector<Action> ids;
      for (const auto& o : impl_->ChanceOutcomes()) ids.push_back(o.action);
      return ids;
    }
    if (current.is_simultaneous()) {
      Fail(ErrorKind::kWrongPlayer, "simultaneous node: ask for a specific player");
    }
    return impl_->LegalActions(current.index());
  }

  std::vector<ChanceOutcome> ChanceOutcomes() const {
    if (!IsChanceNode()) Fail(ErrorKind::kNotChanceNode, ToString());
    return impl_->ChanceOutcomes();
  }

  State Child(Action action) const {
    const PlayerRef current = CurrentPlayer();
    if (current.is_terminal()) Fail(ErrorKind::kTerminalState, "cannot act at " + ToString());
    if (current.is_simultaneous()) {
      Fail(ErrorKind::kIllegalAction, "joint action required at simultaneous node " + ToString());
    }
    bool legal = false;
    if (current.is_chance()) {
      for (const auto& o : impl_->ChanceOutcomes()) legal = legal || o.action == action;
    } else {
      const auto actions = impl_->LegalActions(current.index());
      legal = std::binary_search(actions.begin(), actions.end(), action);
    }
    if (!legal) {
      Fail(ErrorKind::kIllegalAction,
           "action " + std::to_string(action) + " at state " + Describe());
    }
    const Action one[1] = {action};
    return MakeChild(current, one);
  }

  State Child(std::span<const Action> joint) const {
    const PlayerRef current = CurrentPlayer();
    if (!current.is_simultaneous()) {
      if (joint.size() == 1) return Child(joint[0]);
      if (current.is_terminal()) Fail(ErrorKind::kTerminalState, "cannot act at " + ToString());
      Fail(ErrorKind::kIllegalAction, "joint action given at non-simultaneous node " + Describe());
    }
    if (static_cast<int>(joint.size()) != NumPlayers()) {
      Fail(ErrorKind::kIllegalAction, "joint action needs one entry per player at " + Describe());
    }
    for (int p = 0; p < NumPlayers(); ++p) {
      const auto actions = impl_->LegalActions(p);
      if (!std::binary_search(actions.begin(), actions.end(), joint[p])) {
        Fail(ErrorKind::kIllegalAction, "player " + std::to_string(p) + " action " +
                                            std::to_string(joint[p]) + " at state " + Describe());
      }
    }
    return MakeChild(current, joint);
  }

  State Child(std::initializer_list<Action> joint) const {
    return Child(std::span<const Action>(joint.begin(), joint.size()));
  }

  std::vector<double> Returns() const {
    if (!IsTerminal()) Fail(ErrorKind::kNotTerminal, ToString());
    return impl_->Returns();
  }

  // Per-step rewards received on arriving at this state. Shipped games pay
  // everything at the end, so this is the returns vector at terminals and
  // zero elsewhere.
  std::vector<double> Rewards() const {
    if (IsTerminal()) return impl_->Returns();
    return std::vector<double>(NumPlayers(), 0.0);
  }

  std::string InformationStateKey(int player) const {
    CheckPlayer(player);
    return impl_->InformationStateKey(player);
  }

  std::string ToString() const { return impl_->ToString(); }
  std::string ActionToString(PlayerRef actor, Action action) const {
    return impl_->ActionToString(actor, action);
  }

  int MoveNumber() const { return history_ ? history_->length : 0; }

  std::vector<HistoryRecord> History() const {
    std::vector<HistoryRecord> records(MoveNumber());
    const Node* node = history_.get();
    for (int i = MoveNumber() - 1; i >= 0; --i, node = node->parent.get()) {
      records[i] = node->record;
    }
    return records;
  }

  // Canonical history serialization: records separated by spaces, joint
  // actions joined with ':'. Parsed back by StateFromHistoryString.
  std::string HistoryString() const {
    std::string out;
    for (const auto& record : History()) {
      if (!out.empty()) out += ' ';
      for (std::size_t i = 0; i < record.actions.size(); ++i) {
        if (i) out += ':';
        out += std::to_string(record.actions[i]);
      }
    }
    return out;
  }

 private:
  struct Node {
    std::shared_ptr<const Node> parent;
    HistoryRecord record;
    int length = 0;
  };

  State(std::shared_ptr<const Game> game, std::shared_ptr<const StateImpl> impl,
        std::shared_ptr<const Node> history)
      : game_(std::move(game)), impl_(std::move(impl)), history_(std::move(history)) {}

  State MakeChild(PlayerRef actor, std::span<const Action> actions) const {
    std::unique_ptr<StateImpl> next = impl_->Clone();
    next->ApplyActions(actions);
    auto node = std::make_shared<Node>();
    node->parent = history_;
    node->record.actor = actor;
    node->record.actions.assign(actions.begin(), actions.end());
    node->length = MoveNumber() + 1;
    return State(game_, std::move(next), std::move(node));
  }

  void CheckPlayer(int player) const {
    if (player < 0 || player >= NumPlayers()) {
      Fail(ErrorKind::kInvalidPlayer, std::to_string(player));
    }
  }

  std::string Describe() const {
    std::string history = HistoryString();
    return "'" + ToString() + "' (history [" + history + "])";
  }

  std::shared_ptr<const Game> game_;
  std::shared_ptr<const StateImpl> impl_;
  std::shared_ptr<const Node> history_;
};

class Game : public std::enable_shared_from_this<Game> {
 public:
  Game(GameDescriptor descriptor, GameParams params)
      : descriptor_(std::move(descriptor)), params_(std::move(params)) {}
  virtual ~Game() = default;

  const GameDescriptor& Descriptor() const { return descriptor_; }
  const GameParams& Params() const { return params_; }
  int NumPlayers() const { return descriptor_.num_players; }
  const std::string& ShortName() const { return descriptor_.short_name; }

  // "name" or "name(key=value,...)"; accepted by LoadGame.
  std::string ToString() const {
    if (params_.empty()) return descriptor_.short_name;
    std::string out = descriptor_.short_name + "(";
    bool first = true;
    for (const auto& [key, value] : params_) {
      if (!first) out += ',';
      first = false;
      out += key + "=" + value;
    }
    return out + ")";
  }

  State NewInitialState() const {
    return State(shared_from_this(), std::shared_ptr<const StateImpl>(NewInitialImpl()));
  }

 protected:
  virtual std::unique_ptr<StateImpl> NewInitialImpl() const = 0;

 private:
  GameDescriptor descriptor_;
  GameParams params_;
};

inline int State::NumPlayers() const { return game_->NumPlayers(); }

// All joint actions at a simultaneous node in lexicographic order.
inline std::vector<std::vector<Action>> JointActions(const State& state) {
  const int n = state.NumPlayers();
  std::vector<std::vector<Action>> per_player(n);
  for (int p = 0; p < n; ++p) per_player[p] = state.LegalActions(p);
  std::vector<std::vector<Action>> joints{{}};
  for (int p = 0; p < n; ++p) {
    std::vector<std::vector<Action>> next;
    next.reserve(joints.size() * per_player[p].size());
    for (const auto& prefix : joints) {
      for (Action a : per_player[p]) {
        next.push_back(prefix);
        next.back().push_back(a);
      }
    }
    joints = std::move(next);
  }
  return joints;
}

// Children of any non-terminal state, in deterministic order: chance outcomes,
// legal actions, or joint actions. Each entry is (record actions, child).
inline std::vector<std::pair<std::vector<Action>, State>> Children(const State& state) {
  std::vector<std::pair<std::vector<Action>, State>> out;
  const PlayerRef current = state.CurrentPlayer();
  if (current.is_terminal()) return out;
  if (current.is_simultaneous()) {
    for (auto& joint : JointActions(state)) {
      State child = state.Child(std::span<const Action>(joint));
      out.emplace_back(std::move(joint), std::move(child));
    }
    return out;
  }
  for (Action a : state.LegalActions()) out.emplace_back(std::vector<Action>{a}, state.Child(a));
  return out;
}

// Replays a history from the initial state.
inline State StateFromHistory(const Game& game, const std::vector<HistoryRecord>& history) {
  State state = game.NewInitialState();
  for (const auto& record : history) {
    state = state.Child(std::span<const Action>(record.actions));
  }
  return state;
}

inline State StateFromHistoryString(const Game& game, const std::string& text) {
  State state = game.NewInitialState();
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream in(normalized);
  std::string token;
  while (in >> token) {
    std::vector<Action> actions;
    std::size_t start = 0;
    while (start <= token.size()) {
      std::size_t end = token.find(':', start);
      if (end == std::string::npos) end = token.size();
      const std::string part = token.substr(start, end - start);
      try {
        std::size_t used = 0;
        actions.push_back(std::stoll(part, &used));
        if (used != part.size()) throw std::invalid_argument(part);
      } catch (const std::exception&) {
        Fail(ErrorKind::kParseError, "bad action '" + part + "' in history '" + text + "'");
      }
      start = end + 1;
    }
    state = state.Child(std::span<const Action>(actions));
  }
  return state;
}

// Depth-first pre-order walk over every history. Throws kBudgetExceeded once
// more than `budget` histories have been visited.
inline void WalkHistories(const State& root, const std::function<void(const State&)>& visit,
                          std::size_t budget = kDefaultEnumerationBudget) {
  std::size_t visited = 0;
  std::function<void(const State&)> walk = [&](const State& state) {
    if (++visited > budget) {
      Fail(ErrorKind::kBudgetExceeded, "more than " + std::to_string(budget) + " histories");
    }
    visit(state);
    for (auto& [actions, child] : Children(state)) walk(child);
  };
  walk(root);
}

struct PerfectRecallReport {
  std::size_t histories = 0;
  std::size_t information_states = 0;
  std::vector<std::string> violations;  // offending information-state keys

  bool ok() const { return violations.empty(); }
};

// Checks that every history in an information state carries the same
// sequence of the owner's (information state, action) pairs.
inline PerfectRecallReport VerifyPerfectRecall(const Game& game,
                                               std::size_t budget = kDefaultEnumerationBudget) {
  PerfectRecallReport report;
  const int n = game.NumPlayers();
  std::unordered_map<std::string, std::string> seen;
  std::vector<std::string> violated;
  std::size_t visited = 0;

  std::function<void(const State&, std::vector<std::string>&)> walk =
      [&](const State& state, std::vector<std::string>& own_history) {
        if (++visited > budget) {
          Fail(ErrorKind::kBudgetExceeded, "more than " + std::to_string(budget) + " histories");
        }
        const PlayerRef current = state.CurrentPlayer();
        if (current.is_terminal()) return;
        std::vector<int> actors;
        if (current.is_decision()) actors.push_back(current.index());
        if (current.is_simultaneous()) {
          for (int p = 0; p < n; ++p) actors.push_back(p);
        }
        std::vector<std::string> keys(n);
        for (int p : actors) {
          keys[p] = state.InformationStateKey(p);
          auto [it, inserted] = seen.emplace(keys[p], own_history[p]);
          if (!inserted && it->second != own_history[p]) violated.push_back(keys[p]);
        }
        for (auto& [actions, child] : Children(state)) {
          std::vector<std::string> next = own_history;
          if (current.is_decision()) {
            next[current.index()] += keys[current.index()] + '\x1f' + std::to_string(actions[0]) + '\x1e';
          } else if (current.is_simultaneous()) {
            for (int p = 0; p < n; ++p) {
              next[p] += keys[p] + '\x1f' + std::to_string(actions[p]) + '\x1e';
            }
          }
          walk(child, next);
        }
      };

  std::vector<std::string> empty(n);
  walk(game.NewInitialState(), empty);
  std::sort(violated.begin(), violated.end());
  violated.erase(std::unique(violated.begin(), violated.end()), violated.end());
  report.histories = visited;
  report.information_states = seen.size();
  report.violations = std::move(violated);
  return report;
}

}  // namespace gamelab

#endif  // GAMELAB_KERNEL_HPP_
