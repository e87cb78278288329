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

// Explicit, index-based copy of a small game tree. Exact solvers (best
// response, CFR, fictitious play, exploitability descent) traverse this
// instead of State objects. Simultaneous games are compiled through their
// turn-based view, whose information-state keys match the original game.

#ifndef GAMELAB_ANALYSIS_TREE_HPP_
#define GAMELAB_ANALYSIS_TREE_HPP_

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gamelab/games/turn_based.hpp"
#include "gamelab/kernel.hpp"
#include "gamelab/policy.hpp"

namespace gamelab {

enum class NodeKind : std::uint8_t { kChance, kDecision, kTerminal };

struct TreeNode {
  NodeKind kind = NodeKind::kTerminal;
  int player = -1;   // acting player at decision nodes
  int infoset = -1;  // index into GameTree::infosets() at decision nodes
  int parent = -1;
  int parent_branch = -1;  // index of this node among the parent's children
  int depth = 0;
  std::vector<Action> actions;       // legal actions or chance outcome ids
  std::vector<double> chance_probs;  // chance nodes only
  std::vector<int> children;         // aligned with actions
  std::vector<double> returns;       // terminal nodes only
};

struct InfosetData {
  std::string key;
  int player = -1;
  std::vector<Action> actions;
  std::vector<int> nodes;  // histories in this information state, pre-order
};

// Per-information-state probabilities aligned with InfosetData::actions.
using PolicyTable = std::vector<std::vector<double>>;

class GameTree {
 public:
  explicit GameTree(std::shared_ptr<const Game> game,
                    std::size_t budget = kDefaultEnumerationBudget)
      : source_(game), game_(AsSequential(std::move(game))) {
    num_players_ = game_->NumPlayers();
    recall_sequences_.emplace(std::make_tuple(-1, -1, -1), 0);
    std::vector<int> own_sequence(num_players_, 0);
    Build(game_->NewInitialState(), -1, -1, 0, own_sequence, budget);
  }

  const std::shared_ptr<const Game>& game() const { return game_; }
  const std::shared_ptr<const Game>& source_game() const { return source_; }
  int num_players() const { return num_players_; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& node(int i) const { return nodes_[i]; }
  const std::vector<InfosetData>& infosets() const { return infosets_; }
  const InfosetData& infoset(int i) const { return infosets_[i]; }
  const State& representative(int infoset) const { return representatives_[infoset]; }

  int InfosetIndex(const std::string& key) const {
    auto it = infoset_index_.find(key);
    return it == infoset_index_.end() ? -1 : it->second;
  }

  bool perfect_recall() const { return recall_violations_.empty(); }
  const std::vector<std::string>& recall_violations() const { return recall_violations_; }

  PolicyTable UniformTable() const {
    PolicyTable table(infosets_.size());
    for (std::size_t s = 0; s < infosets_.size(); ++s) {
      table[s].assign(infosets_[s].actions.size(), 1.0 / infosets_[s].actions.size());
    }
    return table;
  }

  // Queries `policy` once per information state. States owned by
  // `skip_player` are left uniform and need not be covered by the policy.
  PolicyTable TableFromPolicy(const Policy& policy, int skip_player = -1) const {
    PolicyTable table = UniformTable();
    for (std::size_t s = 0; s < infosets_.size(); ++s) {
      const InfosetData& info = infosets_[s];
      if (info.player == skip_player) continue;
      const ActionDistribution dist = policy.ActionProbabilities(representatives_[s], info.player);
      std::vector<double>& row = table[s];
      std::fill(row.begin(), row.end(), 0.0);
      for (const auto& [action, p] : dist) {
        auto it = std::lower_bound(info.actions.begin(), info.actions.end(), action);
        if (it == info.actions.end() || *it != action) {
          if (p > 0.0) {
            Fail(ErrorKind::kInvalidArgument, "policy puts mass on illegal action " +
                                                  std::to_string(action) + " at '" + info.key + "'");
          }
          continue;
        }
        row[it - info.actions.begin()] = p;
      }
    }
    return table;
  }

  TabularPolicy ToTabularPolicy(const PolicyTable& table) const {
    TabularPolicy policy;
    for (std::size_t s = 0; s < infosets_.size(); ++s) {
      ActionDistribution dist;
      for (std::size_t a = 0; a < infosets_[s].actions.size(); ++a) {
        dist.emplace_back(infosets_[s].actions[a], table[s][a]);
      }
      policy.Set(infosets_[s].key, std::move(dist));
    }
    return policy;
  }

  // Expected returns of every player from the root under `table`.
  std::vector<double> ExpectedValues(const PolicyTable& table) const {
    std::vector<std::vector<double>> values(nodes_.size());
    for (int i = static_cast<int>(nodes_.size()) - 1; i >= 0; --i) {
      const TreeNode& n = nodes_[i];
      if (n.kind == NodeKind::kTerminal) {
        values[i] = n.returns;
        continue;
      }
      values[i].assign(num_players_, 0.0);
      for (std::size_t a = 0; a < n.children.size(); ++a) {
        const double p = n.kind == NodeKind::kChance ? n.chance_probs[a] : table[n.infoset][a];
        if (p == 0.0) continue;
        const auto& child = values[n.children[a]];
        for (int q = 0; q < num_players_; ++q) values[i][q] += p * child[q];
      }
    }
    return values[0];
  }

  // Reach contributions of every node: index 0..n-1 per player, n for chance.
  std::vector<std::vector<double>> ReachProbabilities(const PolicyTable& table) const {
    std::vector<std::vector<double>> reach(nodes_.size(), std::vector<double>(num_players_ + 1, 1.0));
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
      const TreeNode& n = nodes_[i];
      const TreeNode& parent = nodes_[n.parent];
      reach[i] = reach[n.parent];
      if (parent.kind == NodeKind::kChance) {
        reach[i][num_players_] *= parent.chance_probs[n.parent_branch];
      } else {
        reach[i][parent.player] *= table[parent.infoset][n.parent_branch];
      }
    }
    return reach;
  }

 private:
  void Build(const State& state, int parent, int branch, int depth, std::vector<int>& own_sequence,
             std::size_t budget) {
    if (nodes_.size() >= budget) {
      Fail(ErrorKind::kBudgetExceeded, "more than " + std::to_string(budget) + " histories");
    }
    const int index = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    {
      TreeNode& n = nodes_.back();
      n.parent = parent;
      n.parent_branch = branch;
      n.depth = depth;
    }
    const PlayerRef current = state.CurrentPlayer();
    if (current.is_terminal()) {
      nodes_[index].kind = NodeKind::kTerminal;
      nodes_[index].returns = state.Returns();
      return;
    }
    if (current.is_chance()) {
      nodes_[index].kind = NodeKind::kChance;
      for (const auto& o : state.ChanceOutcomes()) {
        nodes_[index].actions.push_back(o.action);
        nodes_[index].chance_probs.push_back(o.probability);
      }
    } else {
      const int player = current.index();
      const std::string key = state.InformationStateKey(player);
      auto [it, inserted] = infoset_index_.try_emplace(key, static_cast<int>(infosets_.size()));
      if (inserted) {
        InfosetData info;
        info.key = key;
        info.player = player;
        info.actions = state.LegalActions(player);
        infosets_.push_back(std::move(info));
        representatives_.push_back(state);
        infoset_sequence_.push_back(own_sequence[player]);
      } else if (infoset_sequence_[it->second] != own_sequence[player]) {
        if (recall_violations_.empty() || recall_violations_.back() != key) {
          recall_violations_.push_back(key);
        }
      }
      nodes_[index].kind = NodeKind::kDecision;
      nodes_[index].player = player;
      nodes_[index].infoset = it->second;
      nodes_[index].actions = infosets_[it->second].actions;
      infosets_[it->second].nodes.push_back(index);
    }
    const std::vector<Action> actions = nodes_[index].actions;
    const int infoset = nodes_[index].infoset;
    const int player = nodes_[index].player;
    for (std::size_t a = 0; a < actions.size(); ++a) {
      const int child_index = static_cast<int>(nodes_.size());
      nodes_[index].children.push_back(child_index);
      if (player >= 0) {
        const int saved = own_sequence[player];
        auto key = std::make_tuple(saved, infoset, static_cast<int>(a));
        auto [it, inserted] =
            recall_sequences_.try_emplace(key, static_cast<int>(recall_sequences_.size()));
        own_sequence[player] = it->second;
        Build(state.Child(actions[a]), index, static_cast<int>(a), depth + 1, own_sequence, budget);
        own_sequence[player] = saved;
      } else {
        Build(state.Child(actions[a]), index, static_cast<int>(a), depth + 1, own_sequence, budget);
      }
    }
  }

  std::shared_ptr<const Game> source_;
  std::shared_ptr<const Game> game_;
  int num_players_ = 0;
  std::vector<TreeNode> nodes_;
  std::vector<InfosetData> infosets_;
  std::vector<State> representatives_;
  std::vector<int> infoset_sequence_;
  std::unordered_map<std::string, int> infoset_index_;
  std::map<std::tuple<int, int, int>, int> recall_sequences_;
  std::vector<std::string> recall_violations_;
};

}  // namespace gamelab

#endif  // GAMELAB_ANALYSIS_TREE_HPP_
