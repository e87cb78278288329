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

// Exact best responses on an explicit game tree, and the NashConv and
// exploitability metrics built from them.

#ifndef GAMELAB_ANALYSIS_BEST_RESPONSE_HPP_
#define GAMELAB_ANALYSIS_BEST_RESPONSE_HPP_

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gamelab/analysis/tree.hpp"
#include "gamelab/kernel.hpp"
#include "gamelab/policy.hpp"

namespace gamelab {

inline constexpr double kTieTolerance = 1e-12;

// Index of the largest value; earlier (lower-id) entries win ties.
inline int ArgmaxLowest(const std::vector<double>& values, double tolerance = kTieTolerance) {
  int best = 0;
  for (std::size_t a = 1; a < values.size(); ++a) {
    if (values[a] > values[best] + tolerance) best = static_cast<int>(a);
  }
  return best;
}

// Best response of one player on a tree, in table form.
struct TreeBestResponse {
  int responder = 0;
  double value = 0.0;                          // responder's return under the response
  std::vector<int> choice;                     // per infoset: chosen branch, -1 if not the responder's
  std::vector<std::vector<int>> ties;          // per infoset: every branch within tolerance of the best
  bool mix_ties = false;                       // play uniformly over `ties` instead of `choice`
  std::vector<std::vector<double>> cf_values;  // per infoset: counterfactual action values
  std::vector<double> node_values;             // per node: responder's value below the node
};

// Counterfactual reach of every node: the product of chance and all players
// except `player`.
inline std::vector<double> OpponentReach(const GameTree& tree, const PolicyTable& table, int player) {
  std::vector<double> reach(tree.nodes().size(), 1.0);
  for (std::size_t i = 1; i < tree.nodes().size(); ++i) {
    const TreeNode& n = tree.node(static_cast<int>(i));
    const TreeNode& parent = tree.node(n.parent);
    double p = 1.0;
    if (parent.kind == NodeKind::kChance) {
      p = parent.chance_probs[n.parent_branch];
    } else if (parent.player != player) {
      p = table[parent.infoset][n.parent_branch];
    }
    reach[i] = reach[n.parent] * p;
  }
  return reach;
}

// With `mix_ties` the response randomizes uniformly over tied best actions,
// which is still a best response.
inline TreeBestResponse BestResponseOnTree(const GameTree& tree, const PolicyTable& table,
                                           int responder, bool mix_ties = false) {
  if (responder < 0 || responder >= tree.num_players()) {
    Fail(ErrorKind::kInvalidPlayer, "responder " + std::to_string(responder) + " out of range");
  }
  if (!tree.perfect_recall()) {
    Fail(ErrorKind::kImperfectRecall,
         "best response needs perfect recall; first violation at '" +
             tree.recall_violations().front() + "'");
  }
  const auto& nodes = tree.nodes();
  const std::vector<double> reach = OpponentReach(tree, table, responder);
  TreeBestResponse br;
  br.responder = responder;
  br.mix_ties = mix_ties;
  br.ties.resize(tree.infosets().size());
  br.choice.assign(tree.infosets().size(), -1);
  br.cf_values.resize(tree.infosets().size());
  br.node_values.assign(nodes.size(), 0.0);
  std::vector<char> done(nodes.size(), 0);

  std::function<double(int)> node_value;
  std::function<int(int)> decide = [&](int s) {
    if (br.choice[s] >= 0) return br.choice[s];
    const InfosetData& info = tree.infoset(s);
    std::vector<double> q(info.actions.size(), 0.0);
    for (int h : info.nodes) {
      const TreeNode& n = nodes[h];
      for (std::size_t a = 0; a < n.children.size(); ++a) {
        q[a] += reach[h] * node_value(n.children[a]);
      }
    }
    br.choice[s] = ArgmaxLowest(q);
    for (std::size_t a = 0; a < q.size(); ++a) {
      if (q[a] >= q[br.choice[s]] - kTieTolerance) br.ties[s].push_back(static_cast<int>(a));
    }
    br.cf_values[s] = std::move(q);
    return br.choice[s];
  };
  node_value = [&](int h) {
    if (done[h]) return br.node_values[h];
    const TreeNode& n = nodes[h];
    double v = 0.0;
    if (n.kind == NodeKind::kTerminal) {
      v = n.returns[responder];
    } else if (n.kind == NodeKind::kChance) {
      for (std::size_t a = 0; a < n.children.size(); ++a) {
        v += n.chance_probs[a] * node_value(n.children[a]);
      }
    } else if (n.player == responder) {
      const int best = decide(n.infoset);
      if (mix_ties) {
        for (int a : br.ties[n.infoset]) v += node_value(n.children[a]);
        v /= static_cast<double>(br.ties[n.infoset].size());
      } else {
        v = node_value(n.children[best]);
      }
    } else {
      for (std::size_t a = 0; a < n.children.size(); ++a) {
        const double p = table[n.infoset][a];
        if (p != 0.0) v += p * node_value(n.children[a]);
      }
    }
    done[h] = 1;
    br.node_values[h] = v;
    return v;
  };
  br.value = node_value(0);
  // Information states cut off by zero opponent reach still get a choice.
  for (std::size_t s = 0; s < tree.infosets().size(); ++s) {
    if (tree.infoset(static_cast<int>(s)).player == responder) decide(static_cast<int>(s));
  }
  return br;
}

// Replaces the responder's rows of `table` with the deterministic response.
inline PolicyTable ApplyBestResponse(const GameTree& tree, PolicyTable table,
                                     const TreeBestResponse& br) {
  for (std::size_t s = 0; s < tree.infosets().size(); ++s) {
    if (br.choice[s] < 0) continue;
    std::fill(table[s].begin(), table[s].end(), 0.0);
    if (br.mix_ties) {
      for (int a : br.ties[s]) table[s][a] = 1.0 / br.ties[s].size();
    } else {
      table[s][br.choice[s]] = 1.0;
    }
  }
  return table;
}

struct BestResponseResult {
  int responder = 0;
  TabularPolicy br_policy;  // deterministic, one entry per responder information state
  double br_value = 0.0;
  std::map<std::string, ActionDistribution> action_values;  // counterfactual q per action
};

inline BestResponseResult MakeBestResponseResult(const GameTree& tree, const TreeBestResponse& br) {
  BestResponseResult result;
  result.responder = br.responder;
  result.br_value = br.value;
  for (std::size_t s = 0; s < tree.infosets().size(); ++s) {
    if (br.choice[s] < 0) continue;
    const InfosetData& info = tree.infoset(static_cast<int>(s));
    ActionDistribution dist, values;
    for (std::size_t a = 0; a < info.actions.size(); ++a) {
      dist.emplace_back(info.actions[a], static_cast<int>(a) == br.choice[s] ? 1.0 : 0.0);
      values.emplace_back(info.actions[a], br.cf_values[s][a]);
    }
    result.br_policy.Set(info.key, std::move(dist));
    result.action_values.emplace(info.key, std::move(values));
  }
  return result;
}

inline BestResponseResult BestResponse(const GameTree& tree, const Policy& policy, int responder) {
  const PolicyTable table = tree.TableFromPolicy(policy, responder);
  return MakeBestResponseResult(tree, BestResponseOnTree(tree, table, responder));
}

inline BestResponseResult BestResponse(std::shared_ptr<const Game> game, const Policy& policy,
                                       int responder,
                                       std::size_t budget = kDefaultEnumerationBudget) {
  const GameTree tree(std::move(game), budget);
  return BestResponse(tree, policy, responder);
}

struct NashConvResult {
  double total = 0.0;
  std::vector<double> deltas;         // br_values[i] - on_policy[i]
  std::vector<double> br_values;
  std::vector<double> on_policy;      // expected returns of the evaluated policy
};

inline NashConvResult NashConvOnTree(const GameTree& tree, const PolicyTable& table) {
  NashConvResult result;
  result.on_policy = tree.ExpectedValues(table);
  for (int i = 0; i < tree.num_players(); ++i) {
    const double br = BestResponseOnTree(tree, table, i).value;
    result.br_values.push_back(br);
    result.deltas.push_back(br - result.on_policy[i]);
    result.total += br - result.on_policy[i];
  }
  return result;
}

inline NashConvResult NashConv(const GameTree& tree, const Policy& policy) {
  return NashConvOnTree(tree, tree.TableFromPolicy(policy));
}

inline NashConvResult NashConv(std::shared_ptr<const Game> game, const Policy& policy,
                               std::size_t budget = kDefaultEnumerationBudget) {
  const GameTree tree(std::move(game), budget);
  return NashConv(tree, policy);
}

inline void RequireConstantSum(const Game& game) {
  if (!game.Descriptor().IsConstantSum()) {
    Fail(ErrorKind::kNotConstantSum, game.ToString() + " is not constant-sum");
  }
}

inline double ExploitabilityOnTree(const GameTree& tree, const PolicyTable& table) {
  RequireConstantSum(*tree.source_game());
  return NashConvOnTree(tree, table).total / tree.num_players();
}

inline double Exploitability(const GameTree& tree, const Policy& policy) {
  RequireConstantSum(*tree.source_game());
  return NashConv(tree, policy).total / tree.num_players();
}

inline double Exploitability(std::shared_ptr<const Game> game, const Policy& policy,
                             std::size_t budget = kDefaultEnumerationBudget) {
  RequireConstantSum(*game);
  const GameTree tree(std::move(game), budget);
  return NashConv(tree, policy).total / tree.num_players();
}

}  // namespace gamelab

#endif  // GAMELAB_ANALYSIS_BEST_RESPONSE_HPP_
