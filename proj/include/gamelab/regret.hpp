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

// Counterfactual regret minimization: vanilla CFR, CFR+, and the outcome- and
// external-sampling Monte Carlo variants, all over an explicit GameTree.

#ifndef GAMELAB_REGRET_HPP_
#define GAMELAB_REGRET_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gamelab/analysis/best_response.hpp"
#include "gamelab/analysis/expected_returns.hpp"
#include "gamelab/analysis/tree.hpp"
#include "gamelab/policy.hpp"
#include "gamelab/rng.hpp"

namespace gamelab {

// Proportional to the positive parts of `regrets`, uniform when none is
// positive.
inline std::vector<double> RegretMatching(const std::vector<double>& regrets) {
  if (regrets.empty()) Fail(ErrorKind::kEmptyActionSet, "regret matching over no actions");
  double positive = 0.0;
  for (double r : regrets) positive += std::max(r, 0.0);
  std::vector<double> out(regrets.size());
  for (std::size_t a = 0; a < regrets.size(); ++a) {
    out[a] = positive > 0.0 ? std::max(regrets[a], 0.0) / positive : 1.0 / regrets.size();
  }
  return out;
}

// Counterfactual action values q^c(s,a) and state values v^c(s) for one
// player, plus the player's own reach of each of their information states.
struct CounterfactualValues {
  int player = 0;
  std::vector<std::vector<double>> q;  // empty rows for other players' states
  std::vector<double> v;
  std::vector<double> own_reach;
  std::vector<double> beta;  // sum over histories of the others' reach
};

// Per node expected returns of every player under `table`.
inline std::vector<std::vector<double>> NodeValues(const GameTree& tree, const PolicyTable& table) {
  const auto& nodes = tree.nodes();
  const int n = tree.num_players();
  std::vector<std::vector<double>> values(nodes.size());
  for (int i = static_cast<int>(nodes.size()) - 1; i >= 0; --i) {
    const TreeNode& node = nodes[i];
    if (node.kind == NodeKind::kTerminal) {
      values[i] = node.returns;
      continue;
    }
    values[i].assign(n, 0.0);
    for (std::size_t a = 0; a < node.children.size(); ++a) {
      const double p =
          node.kind == NodeKind::kChance ? node.chance_probs[a] : table[node.infoset][a];
      if (p == 0.0) continue;
      for (int q = 0; q < n; ++q) values[i][q] += p * values[node.children[a]][q];
    }
  }
  return values;
}

inline std::vector<CounterfactualValues> ComputeCounterfactualValues(const GameTree& tree,
                                                                     const PolicyTable& table) {
  const int n = tree.num_players();
  const auto reach = tree.ReachProbabilities(table);
  const auto values = NodeValues(tree, table);
  std::vector<CounterfactualValues> out(n);
  for (int i = 0; i < n; ++i) {
    out[i].player = i;
    out[i].q.resize(tree.infosets().size());
    out[i].v.assign(tree.infosets().size(), 0.0);
    out[i].own_reach.assign(tree.infosets().size(), 0.0);
    out[i].beta.assign(tree.infosets().size(), 0.0);
  }
  for (std::size_t s = 0; s < tree.infosets().size(); ++s) {
    const InfosetData& info = tree.infoset(static_cast<int>(s));
    CounterfactualValues& cf = out[info.player];
    cf.q[s].assign(info.actions.size(), 0.0);
    for (int h : info.nodes) {
      double others = reach[h][n];
      for (int j = 0; j < n; ++j) {
        if (j != info.player) others *= reach[h][j];
      }
      cf.beta[s] += others;
      const TreeNode& node = tree.node(h);
      for (std::size_t a = 0; a < node.children.size(); ++a) {
        cf.q[s][a] += others * values[node.children[a]][info.player];
      }
    }
    cf.own_reach[s] = reach[info.nodes.front()][info.player];
    for (std::size_t a = 0; a < info.actions.size(); ++a) cf.v[s] += table[s][a] * cf.q[s][a];
  }
  return out;
}

enum class CfrSampling { kNone, kOutcome, kExternal };

struct CfrConfig {
  bool regret_floor = false;      // clamp cumulative regrets at zero (CFR+)
  bool alternating = false;       // update one player at a time
  bool linear_averaging = false;  // weight the t-th average increment by t
  CfrSampling sampling = CfrSampling::kNone;
  double epsilon = 0.6;           // outcome-sampling exploration
  std::uint64_t seed = 0;

  static CfrConfig Vanilla() {
    CfrConfig c;
    c.alternating = true;
    return c;
  }
  // Both players updated from the same current policy each iteration.
  static CfrConfig Simultaneous() { return {}; }
  static CfrConfig Plus() {
    CfrConfig c;
    c.regret_floor = c.alternating = c.linear_averaging = true;
    return c;
  }
  static CfrConfig OutcomeSampling(std::uint64_t seed, double epsilon = 0.6) {
    CfrConfig c;
    c.sampling = CfrSampling::kOutcome;
    c.alternating = true;
    c.epsilon = epsilon;
    c.seed = seed;
    return c;
  }
  static CfrConfig ExternalSampling(std::uint64_t seed) {
    CfrConfig c;
    c.sampling = CfrSampling::kExternal;
    c.alternating = true;
    c.seed = seed;
    return c;
  }
};

class CfrSolver {
 public:
  CfrSolver(std::shared_ptr<const GameTree> tree, CfrConfig config)
      : tree_(std::move(tree)), config_(config), rng_(config.seed) {
    if (!tree_->perfect_recall()) {
      Fail(ErrorKind::kImperfectRecall, "CFR needs perfect recall; violation at '" +
                                            tree_->recall_violations().front() + "'");
    }
    if (config_.epsilon <= 0.0 || config_.epsilon > 1.0) {
      Fail(ErrorKind::kInvalidArgument, "exploration epsilon must lie in (0, 1]");
    }
    regrets_.resize(tree_->infosets().size());
    avg_.resize(tree_->infosets().size());
    for (std::size_t s = 0; s < regrets_.size(); ++s) {
      regrets_[s].assign(tree_->infoset(static_cast<int>(s)).actions.size(), 0.0);
      avg_[s].assign(regrets_[s].size(), 0.0);
    }
    touched_.assign(tree_->num_players(), 0);
  }
  CfrSolver(std::shared_ptr<const Game> game, CfrConfig config,
            std::size_t budget = kDefaultEnumerationBudget)
      : CfrSolver(std::make_shared<const GameTree>(std::move(game), budget), config) {}

  void Iterate() {
    ++iteration_;
    std::fill(touched_.begin(), touched_.end(), 0);
    switch (config_.sampling) {
      case CfrSampling::kNone:
        if (config_.alternating) {
          for (int i = 0; i < tree_->num_players(); ++i) ExactUpdate(i);
        } else {
          ExactUpdate(-1);
        }
        break;
      case CfrSampling::kOutcome:
        for (int i = 0; i < tree_->num_players(); ++i) {
          OutcomeSample(0, i, 1.0, 1.0, 1.0);
        }
        break;
      case CfrSampling::kExternal:
        for (int i = 0; i < tree_->num_players(); ++i) ExternalSample(0, i);
        break;
    }
  }

  void Run(int iterations) {
    for (int t = 0; t < iterations; ++t) Iterate();
  }

  int iteration() const { return iteration_; }
  const CfrConfig& config() const { return config_; }
  const GameTree& tree() const { return *tree_; }
  std::shared_ptr<const GameTree> shared_tree() const { return tree_; }
  const PolicyTable& regrets() const { return regrets_; }
  const PolicyTable& average_weights() const { return avg_; }
  // Distinct information states updated per player during the last iteration.
  const std::vector<int>& touched_last_iteration() const { return touched_; }

  PolicyTable CurrentTable() const {
    PolicyTable table(regrets_.size());
    for (std::size_t s = 0; s < regrets_.size(); ++s) table[s] = RegretMatching(regrets_[s]);
    return table;
  }

  PolicyTable AverageTable() const {
    PolicyTable table(avg_.size());
    for (std::size_t s = 0; s < avg_.size(); ++s) {
      double total = 0.0;
      for (double w : avg_[s]) total += w;
      table[s].resize(avg_[s].size());
      for (std::size_t a = 0; a < avg_[s].size(); ++a) {
        table[s][a] = total > 0.0 ? avg_[s][a] / total : 1.0 / avg_[s].size();
      }
    }
    return table;
  }

  TabularPolicy CurrentPolicy() const { return tree_->ToTabularPolicy(CurrentTable()); }
  TabularPolicy AveragePolicy() const {
    if (iteration_ < 1) Fail(ErrorKind::kInvalidArgument, "average policy needs t >= 1");
    return tree_->ToTabularPolicy(AverageTable());
  }

  // max_s max_a R^T(s,a) / T.
  double MaxAverageRegret() const {
    double best = 0.0;
    for (const auto& row : regrets_) {
      for (double r : row) best = std::max(best, r);
    }
    return iteration_ > 0 ? best / iteration_ : 0.0;
  }

 private:
  // One exact update of `player`, or of every player from the same policy
  // when `player` is -1.
  void ExactUpdate(int player) {
    const PolicyTable current = CurrentTable();
    const auto cf = ComputeCounterfactualValues(*tree_, current);
    const double weight = config_.linear_averaging ? iteration_ : 1.0;
    for (std::size_t s = 0; s < regrets_.size(); ++s) {
      const int owner = tree_->infoset(static_cast<int>(s)).player;
      if (player >= 0 && owner != player) continue;
      const CounterfactualValues& c = cf[owner];
      for (std::size_t a = 0; a < regrets_[s].size(); ++a) {
        regrets_[s][a] += c.q[s][a] - c.v[s];
        if (config_.regret_floor) regrets_[s][a] = std::max(regrets_[s][a], 0.0);
        avg_[s][a] += weight * c.own_reach[s] * current[s][a];
      }
      ++touched_[owner];
    }
  }

  int SampleIndex(const std::vector<double>& weights) {
    return static_cast<int>(rng_.Sample(weights));
  }

  // Baseline-free outcome sampling. Returns the sampled estimate of the
  // updater's value at `h`, already divided by the sampling probability of
  // the path below `h`.
  double OutcomeSample(int h, int updater, double my_reach, double opp_reach,
                       double sample_reach) {
    const TreeNode& node = tree_->node(h);
    if (node.kind == NodeKind::kTerminal) return node.returns[updater];
    if (node.kind == NodeKind::kChance) {
      const int a = SampleIndex(node.chance_probs);
      const double p = node.chance_probs[a];
      return OutcomeSample(node.children[a], updater, my_reach, opp_reach * p, sample_reach * p);
    }
    const int s = node.infoset;
    const std::vector<double> policy = RegretMatching(regrets_[s]);
    std::vector<double> sample_policy = policy;
    const bool mine = node.player == updater;
    if (mine) {
      for (double& p : sample_policy) {
        p = config_.epsilon / policy.size() + (1.0 - config_.epsilon) * p;
      }
    }
    const int a = SampleIndex(sample_policy);
    const double child = OutcomeSample(node.children[a], updater,
                                       mine ? my_reach * policy[a] : my_reach,
                                       mine ? opp_reach : opp_reach * policy[a],
                                       sample_reach * sample_policy[a]);
    std::vector<double> child_values(policy.size(), 0.0);
    child_values[a] = child / sample_policy[a];
    double value = 0.0;
    for (std::size_t b = 0; b < policy.size(); ++b) value += policy[b] * child_values[b];
    if (mine) {
      const double scale = opp_reach / sample_reach;
      for (std::size_t b = 0; b < policy.size(); ++b) {
        regrets_[s][b] += (child_values[b] - value) * scale;
      }
      ++touched_[updater];
    } else {
      for (std::size_t b = 0; b < policy.size(); ++b) {
        avg_[s][b] += opp_reach * policy[b] / sample_reach;
      }
    }
    return value;
  }

  // External sampling: all of the updater's actions, one sample elsewhere.
  // Averages are accumulated at the next player's nodes.
  double ExternalSample(int h, int updater) {
    const TreeNode& node = tree_->node(h);
    if (node.kind == NodeKind::kTerminal) return node.returns[updater];
    if (node.kind == NodeKind::kChance) {
      return ExternalSample(node.children[SampleIndex(node.chance_probs)], updater);
    }
    const int s = node.infoset;
    const std::vector<double> policy = RegretMatching(regrets_[s]);
    double value = 0.0;
    if (node.player == updater) {
      std::vector<double> child_values(policy.size());
      for (std::size_t a = 0; a < policy.size(); ++a) {
        child_values[a] = ExternalSample(node.children[a], updater);
        value += policy[a] * child_values[a];
      }
      for (std::size_t a = 0; a < policy.size(); ++a) regrets_[s][a] += child_values[a] - value;
      ++touched_[updater];
    } else {
      value = ExternalSample(node.children[SampleIndex(policy)], updater);
    }
    if (node.player == (updater + 1) % tree_->num_players()) {
      for (std::size_t a = 0; a < policy.size(); ++a) avg_[s][a] += policy[a];
    }
    return value;
  }

  std::shared_ptr<const GameTree> tree_;
  CfrConfig config_;
  Rng rng_;
  PolicyTable regrets_;
  PolicyTable avg_;
  int iteration_ = 0;
  std::vector<int> touched_;
};

struct CfConsistencyEntry {
  std::string key;
  double direct = 0.0;        // conditional expected return given s is reached
  double cf_over_beta = 0.0;  // v^c(s) / beta(s)
};

struct CfConsistencyReport {
  std::vector<CfConsistencyEntry> checked;
  std::vector<std::string> skipped;  // beta(s) = 0
  double max_error = 0.0;
  bool ok(double tolerance = 1e-9) const { return max_error < tolerance; }
};

// Checks v(s) = v^c(s) / beta(s) at every information state of `player`.
// The left side is computed from State objects: each history's value by an
// exact expected-return walk and its reach by replaying the history.
inline CfConsistencyReport CfValueConsistencyCheck(const GameTree& tree, const Policy& policy,
                                                   int player) {
  const PolicyTable table = tree.TableFromPolicy(policy);
  const CounterfactualValues cf = ComputeCounterfactualValues(tree, table)[player];
  CfConsistencyReport report;
  const Game& game = *tree.game();
  for (std::size_t s = 0; s < tree.infosets().size(); ++s) {
    const InfosetData& info = tree.infoset(static_cast<int>(s));
    if (info.player != player) continue;
    if (cf.beta[s] <= 0.0) {
      report.skipped.push_back(info.key);
      continue;
    }
    double full_mass = 0.0, full_sum = 0.0, others_mass = 0.0, others_sum = 0.0;
    for (int h : info.nodes) {
      // Rebuild the history path from the tree and replay it on States.
      std::vector<int> path;
      for (int x = h; x > 0; x = tree.node(x).parent) path.push_back(x);
      State state = game.NewInitialState();
      double own = 1.0, others = 1.0;
      for (auto it = path.rbegin(); it != path.rend(); ++it) {
        const TreeNode& child = tree.node(*it);
        const TreeNode& parent = tree.node(child.parent);
        const Action a = parent.actions[child.parent_branch];
        if (state.IsChanceNode()) {
          for (const auto& o : state.ChanceOutcomes()) {
            if (o.action == a) others *= o.probability;
          }
        } else {
          const int mover = state.CurrentPlayer().index();
          double p = 0.0;
          for (const auto& [b, q] : policy.ActionProbabilities(state, mover)) {
            if (b == a) p = q;
          }
          (mover == player ? own : others) *= p;
        }
        state = state.Child(a);
      }
      const double value = ExpectedReturns(state, policy)[player];
      full_mass += own * others;
      full_sum += own * others * value;
      others_mass += others;
      others_sum += others * value;
    }
    const double direct = full_mass > 0.0 ? full_sum / full_mass : others_sum / others_mass;
    const double ratio = cf.v[s] / cf.beta[s];
    report.checked.push_back({info.key, direct, ratio});
    report.max_error = std::max(report.max_error, std::abs(direct - ratio));
  }
  return report;
}

}  // namespace gamelab

#endif  // GAMELAB_REGRET_HPP_
