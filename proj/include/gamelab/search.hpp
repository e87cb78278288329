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

// Decision-time search for perfect-information games: minimax, alpha-beta,
// expectiminimax and UCT Monte Carlo tree search.

#ifndef GAMELAB_SEARCH_HPP_
#define GAMELAB_SEARCH_HPP_

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gamelab/kernel.hpp"
#include "gamelab/rng.hpp"

namespace gamelab {

struct SearchResult {
  double value = 0.0;                // for the maximizing (root) player
  std::optional<Action> best_action;  // empty when no action was searched
  std::int64_t nodes_visited = 0;
};

// Heuristic value of a non-terminal state for `player`.
using ValueFunction = std::function<double(const State&, int player)>;

namespace search_internal {

inline void RequireTwoPlayerZeroSum(const State& state) {
  const GameDescriptor& d = state.game()->Descriptor();
  if (d.num_players != 2 || d.utility_class != UtilityClass::kZeroSum ||
      d.dynamics != Dynamics::kSequential) {
    Fail(ErrorKind::kUnsupportedGameClass,
         d.short_name + ": adversarial search needs a two-player zero-sum turn-based game");
  }
}

inline double Cutoff(const State& state, const ValueFunction& value_fn, int player) {
  if (!value_fn) {
    Fail(ErrorKind::kInvalidArgument, "depth limit reached without a value function");
  }
  return value_fn(state, player);
}

inline void ResolvePlayer(const State& state, int& maximizing_player) {
  if (maximizing_player < 0) {
    const PlayerRef p = state.CurrentPlayer();
    maximizing_player = p.is_decision() ? p.index() : 0;
  }
  if (maximizing_player > 1) Fail(ErrorKind::kInvalidPlayer, "maximizing player must be 0 or 1");
}

}  // namespace search_internal

// Plain depth-limited minimax. depth < 0 searches to the end of the game.
// maximizing_player < 0 selects the player to move at the root.
inline SearchResult Minimax(const State& root, int depth, const ValueFunction& value_fn = nullptr,
                            int maximizing_player = -1) {
  search_internal::RequireTwoPlayerZeroSum(root);
  search_internal::ResolvePlayer(root, maximizing_player);
  SearchResult result;
  std::function<double(const State&, int, bool)> search = [&](const State& s, int d,
                                                              bool at_root) -> double {
    ++result.nodes_visited;
    if (s.IsTerminal()) return s.Returns()[maximizing_player];
    if (s.IsChanceNode()) {
      Fail(ErrorKind::kChanceNodeEncountered, "chance node at " + s.HistoryString());
    }
    if (d == 0) return search_internal::Cutoff(s, value_fn, maximizing_player);
    const bool maximize = s.CurrentPlayer().index() == maximizing_player;
    double best = maximize ? -std::numeric_limits<double>::infinity()
                           : std::numeric_limits<double>::infinity();
    for (Action a : s.LegalActions()) {
      const double v = search(s.Child(a), d - 1, false);
      if (maximize ? v > best : v < best) {
        best = v;
        if (at_root) result.best_action = a;
      }
    }
    return best;
  };
  result.value = search(root, depth, true);
  return result;
}

// Fail-hard alpha-beta. Values and the chosen action agree with Minimax.
inline SearchResult AlphaBeta(const State& root, int depth, const ValueFunction& value_fn = nullptr,
                              int maximizing_player = -1) {
  search_internal::RequireTwoPlayerZeroSum(root);
  search_internal::ResolvePlayer(root, maximizing_player);
  SearchResult result;
  std::function<double(const State&, int, double, double, bool)> search =
      [&](const State& s, int d, double alpha, double beta, bool at_root) -> double {
    ++result.nodes_visited;
    if (s.IsTerminal()) return s.Returns()[maximizing_player];
    if (s.IsChanceNode()) {
      Fail(ErrorKind::kChanceNodeEncountered, "chance node at " + s.HistoryString());
    }
    if (d == 0) return search_internal::Cutoff(s, value_fn, maximizing_player);
    const bool maximize = s.CurrentPlayer().index() == maximizing_player;
    if (maximize) {
      double best = -std::numeric_limits<double>::infinity();
      for (Action a : s.LegalActions()) {
        const double v = search(s.Child(a), d - 1, alpha, beta, false);
        if (v > best) {
          best = v;
          if (at_root) result.best_action = a;
        }
        alpha = std::max(alpha, best);
        if (alpha >= beta) break;
      }
      return best;
    }
    double best = std::numeric_limits<double>::infinity();
    for (Action a : s.LegalActions()) {
      const double v = search(s.Child(a), d - 1, alpha, beta, false);
      if (v < best) {
        best = v;
        if (at_root) result.best_action = a;
      }
      beta = std::min(beta, best);
      if (alpha >= beta) break;
    }
    return best;
  };
  const double inf = std::numeric_limits<double>::infinity();
  result.value = search(root, depth, -inf, inf, true);
  return result;
}

// Minimax with expectation at chance nodes. Chance layers do not consume
// depth. Unlimited-depth searches share values between transpositions by
// State::ToString.
inline SearchResult Expectiminimax(const State& root, int depth,
                                   const ValueFunction& value_fn = nullptr,
                                   int maximizing_player = -1) {
  search_internal::RequireTwoPlayerZeroSum(root);
  search_internal::ResolvePlayer(root, maximizing_player);
  SearchResult result;
  std::unordered_map<std::string, double> memo;
  const bool use_memo = depth < 0;
  std::function<double(const State&, int, bool)> search = [&](const State& s, int d,
                                                              bool at_root) -> double {
    std::string key;
    if (use_memo && !at_root) {
      key = s.ToString();
      auto it = memo.find(key);
      if (it != memo.end()) return it->second;
    }
    ++result.nodes_visited;
    double value = 0.0;
    if (s.IsTerminal()) {
      value = s.Returns()[maximizing_player];
    } else if (s.IsChanceNode()) {
      for (const auto& o : s.ChanceOutcomes()) {
        value += o.probability * search(s.Child(o.action), d, false);
      }
    } else if (d == 0) {
      value = search_internal::Cutoff(s, value_fn, maximizing_player);
    } else {
      const bool maximize = s.CurrentPlayer().index() == maximizing_player;
      value = maximize ? -std::numeric_limits<double>::infinity()
                       : std::numeric_limits<double>::infinity();
      for (Action a : s.LegalActions()) {
        const double v = search(s.Child(a), d - 1, false);
        if (maximize ? v > value : v < value) {
          value = v;
          if (at_root) result.best_action = a;
        }
      }
    }
    if (use_memo && !at_root) memo.emplace(std::move(key), value);
    return value;
  };
  result.value = search(root, depth, true);
  return result;
}

struct MctsConfig {
  int num_simulations = 1000;
  std::optional<double> uct_c;  // defaults to 2 * (u_max - u_min) * sqrt(2)
  int rollout_limit = -1;       // steps per playout; negative means unlimited
  double cutoff_value = 0.0;    // value of a playout stopped at rollout_limit
  std::uint64_t seed = 0;
};

struct MctsChildStats {
  Action action = 0;
  int visits = 0;
  double mean_value = 0.0;  // for the root player
};

struct MctsResult {
  SearchResult search;
  int root_visits = 0;
  std::vector<MctsChildStats> children;
};

inline double DefaultUctConstant(const GameDescriptor& d) {
  return 2.0 * (d.utility_max - d.utility_min) * std::sqrt(2.0);
}

// UCT with uniform random playouts. Unvisited children are tried in
// ascending action order, chance nodes are sampled, and the final move is
// the most-visited root child.
inline MctsResult MctsSearch(const State& root, const MctsConfig& config) {
  if (root.IsTerminal()) Fail(ErrorKind::kTerminalRoot, "cannot search from a terminal state");
  if (root.IsSimultaneousNode()) {
    Fail(ErrorKind::kUnsupportedGameClass, "MCTS needs a turn-based game");
  }
  if (config.num_simulations < 1) Fail(ErrorKind::kInvalidArgument, "num_simulations must be >= 1");
  const GameDescriptor& d = root.game()->Descriptor();
  const double c = config.uct_c.value_or(DefaultUctConstant(d));
  const int n = root.NumPlayers();
  const int root_player = root.IsChanceNode() ? 0 : root.CurrentPlayer().index();

  struct Node {
    Action action = 0;
    int visits = 0;
    std::vector<double> total;  // summed returns per player
    std::vector<int> children;
    bool expanded = false;
  };
  std::vector<Node> tree(1);
  tree[0].total.assign(n, 0.0);
  Rng rng(config.seed);
  SearchResult result;

  auto expand = [&](int id, const State& s) {
    if (tree[id].expanded) return;
    tree[id].expanded = true;
    std::vector<Action> actions;
    if (s.IsChanceNode()) {
      for (const auto& o : s.ChanceOutcomes()) actions.push_back(o.action);
    } else {
      actions = s.LegalActions();
    }
    for (Action a : actions) {
      Node child;
      child.action = a;
      child.total.assign(n, 0.0);
      tree[id].children.push_back(static_cast<int>(tree.size()));
      tree.push_back(std::move(child));
    }
  };
  auto sample_chance = [&](const State& s) {
    const auto outcomes = s.ChanceOutcomes();
    std::vector<double> w;
    for (const auto& o : outcomes) w.push_back(o.probability);
    return static_cast<int>(rng.Sample(w));
  };
  auto rollout = [&](State s) {
    int steps = 0;
    while (!s.IsTerminal()) {
      if (config.rollout_limit >= 0 && steps >= config.rollout_limit) {
        return std::vector<double>(n, config.cutoff_value);
      }
      if (s.IsChanceNode()) {
        s = s.Child(s.ChanceOutcomes()[sample_chance(s)].action);
      } else {
        const auto actions = s.LegalActions();
        s = s.Child(actions[rng.Below(actions.size())]);
      }
      ++steps;
    }
    return s.Returns();
  };

  for (int sim = 0; sim < config.num_simulations; ++sim) {
    std::vector<int> path{0};
    State s = root;
    std::vector<double> returns;
    while (true) {
      const int id = path.back();
      ++result.nodes_visited;
      if (s.IsTerminal()) {
        returns = s.Returns();
        break;
      }
      if (id != 0 && tree[id].visits == 0) {
        returns = rollout(s);
        break;
      }
      expand(id, s);
      int next = -1;
      if (s.IsChanceNode()) {
        next = tree[id].children[sample_chance(s)];
      } else {
        const int p = s.CurrentPlayer().index();
        double best = -std::numeric_limits<double>::infinity();
        const double log_parent = std::log(static_cast<double>(std::max(tree[id].visits, 1)));
        for (int child : tree[id].children) {
          const Node& ch = tree[child];
          if (ch.visits == 0) {
            next = child;
            break;
          }
          const double score =
              ch.total[p] / ch.visits + c * std::sqrt(log_parent / ch.visits);
          if (score > best) {
            best = score;
            next = child;
          }
        }
      }
      s = s.Child(tree[next].action);
      path.push_back(next);
    }
    for (int id : path) {
      ++tree[id].visits;
      for (int q = 0; q < n; ++q) tree[id].total[q] += returns[q];
    }
  }

  MctsResult out;
  out.root_visits = tree[0].visits;
  int best = -1;
  for (int child : tree[0].children) {
    const Node& ch = tree[child];
    out.children.push_back(
        {ch.action, ch.visits, ch.visits > 0 ? ch.total[root_player] / ch.visits : 0.0});
    if (best < 0 || ch.visits > tree[best].visits) best = child;
  }
  result.best_action = tree[best].action;
  result.value = tree[best].visits > 0 ? tree[best].total[root_player] / tree[best].visits : 0.0;
  out.search = result;
  return out;
}

}  // namespace gamelab

#endif  // GAMELAB_SEARCH_HPP_
