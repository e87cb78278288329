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

// Best-response-based iterative solvers: extensive-form fictitious play and
// tabular exploitability descent.

#ifndef GAMELAB_BR_ITER_HPP_
#define GAMELAB_BR_ITER_HPP_

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "gamelab/analysis/best_response.hpp"
#include "gamelab/analysis/tree.hpp"
#include "gamelab/regret.hpp"

namespace gamelab {

inline void RequirePerfectRecall(const GameTree& tree, const char* solver) {
  if (!tree.perfect_recall()) {
    Fail(ErrorKind::kImperfectRecall, std::string(solver) + " needs perfect recall; violation at '" +
                                          tree.recall_violations().front() + "'");
  }
}

inline void RequireTwoPlayers(const GameTree& tree, const char* solver) {
  if (tree.num_players() != 2) {
    Fail(ErrorKind::kUnsupportedGameClass, std::string(solver) + " supports two-player games");
  }
}

// Own reach of every information state for its owner.
inline std::vector<double> OwnReach(const GameTree& tree, const PolicyTable& table) {
  const auto reach = tree.ReachProbabilities(table);
  std::vector<double> out(tree.infosets().size());
  for (std::size_t s = 0; s < out.size(); ++s) {
    const InfosetData& info = tree.infoset(static_cast<int>(s));
    out[s] = reach[info.nodes.front()][info.player];
  }
  return out;
}

// Extensive-form fictitious play. Each iteration best-responds to the
// opponents' average policy and folds the responses into the average so that
// realization plans are averaged uniformly over iterations. With alternating
// updates player 1 responds to player 0's already-updated average.
class XfpSolver {
 public:
  explicit XfpSolver(std::shared_ptr<const GameTree> tree, bool alternating = false)
      : tree_(std::move(tree)), alternating_(alternating) {
    RequirePerfectRecall(*tree_, "XFP");
    RequireTwoPlayers(*tree_, "XFP");
    average_ = tree_->UniformTable();
  }
  explicit XfpSolver(std::shared_ptr<const Game> game, bool alternating = false,
                     std::size_t budget = kDefaultEnumerationBudget)
      : XfpSolver(std::make_shared<const GameTree>(std::move(game), budget), alternating) {}

  void Iterate() {
    ++iteration_;
    if (alternating_) {
      for (int i = 0; i < tree_->num_players(); ++i) {
        const PolicyTable responses =
            ApplyBestResponse(*tree_, average_, BestResponseOnTree(*tree_, average_, i));
        Fold(responses, i);
      }
      return;
    }
    PolicyTable responses = average_;
    for (int i = 0; i < tree_->num_players(); ++i) {
      responses = ApplyBestResponse(*tree_, responses, BestResponseOnTree(*tree_, average_, i));
    }
    Fold(responses, -1);
  }

  void Run(int iterations) {
    for (int k = 0; k < iterations; ++k) Iterate();
  }

  int iteration() const { return iteration_; }
  bool alternating() const { return alternating_; }
  const GameTree& tree() const { return *tree_; }
  const PolicyTable& AverageTable() const { return average_; }
  TabularPolicy AveragePolicy() const { return tree_->ToTabularPolicy(average_); }

 private:
  // Averages `responses` into the rows of `player` (all players when -1).
  void Fold(const PolicyTable& responses, int player) {
    const double t = iteration_;
    const std::vector<double> avg_reach = OwnReach(*tree_, average_);
    const std::vector<double> br_reach = OwnReach(*tree_, responses);
    for (std::size_t s = 0; s < average_.size(); ++s) {
      if (player >= 0 && tree_->infoset(static_cast<int>(s)).player != player) continue;
      std::vector<double>& row = average_[s];
      double total = 0.0;
      std::vector<double> weights(row.size());
      for (std::size_t a = 0; a < row.size(); ++a) {
        weights[a] = (t - 1.0) * avg_reach[s] * row[a] + br_reach[s] * responses[s][a];
        total += weights[a];
      }
      for (std::size_t a = 0; a < row.size(); ++a) {
        row[a] = total > 0.0 ? weights[a] / total : ((t - 1.0) * row[a] + responses[s][a]) / t;
      }
    }
  }

  std::shared_ptr<const GameTree> tree_;
  bool alternating_;
  PolicyTable average_;
  int iteration_ = 0;
};

inline std::vector<double> Softmax(const std::vector<double>& logits) {
  const double top = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double total = 0.0;
  for (std::size_t a = 0; a < logits.size(); ++a) total += out[a] = std::exp(logits[a] - top);
  for (double& p : out) p /= total;
  return out;
}

inline PolicyTable SoftmaxTable(const PolicyTable& logits) {
  PolicyTable table(logits.size());
  for (std::size_t s = 0; s < logits.size(); ++s) table[s] = Softmax(logits[s]);
  return table;
}

// Gradient of each player's expected return with respect to their own
// logits, holding the other players at `opponents` (a full policy table whose
// rows for the differentiated player are replaced by softmax(logits)):
// d v_i / d z(s,a) = own_reach(s) * pi(s,a) * (q^c(s,a) - v^c(s)).
inline PolicyTable ValueGradient(const GameTree& tree, const PolicyTable& table, int player) {
  const CounterfactualValues cf = ComputeCounterfactualValues(tree, table)[player];
  PolicyTable grad(table.size());
  for (std::size_t s = 0; s < table.size(); ++s) {
    grad[s].assign(table[s].size(), 0.0);
    if (tree.infoset(static_cast<int>(s)).player != player) continue;
    for (std::size_t a = 0; a < table[s].size(); ++a) {
      grad[s][a] = cf.own_reach[s] * table[s][a] * (cf.q[s][a] - cf.v[s]);
    }
  }
  return grad;
}

enum class LearningRateSchedule { kConstant, kInverseSqrt };

// Step direction at each information state. kCounterfactual follows the exact
// value gradient. kConditional divides it by own_reach(s) * beta(s), i.e. uses
// values conditioned on reaching s: pi(s,a) * (q(s,a) - v(s)).
enum class EdNormalization { kConditional, kCounterfactual };

// Exploitability descent with softmax-parameterized tabular logits. Every
// iteration ascends each player's value against the opponents' exact best
// response to the current policy. The current policy is the output.
// Gradient() is the exact value gradient; Iterate() steps along
// StepDirection(), which equals it under kCounterfactual.
class EdSolver {
 public:
  EdSolver(std::shared_ptr<const GameTree> tree, double learning_rate = 0.1,
           LearningRateSchedule schedule = LearningRateSchedule::kConstant,
           EdNormalization normalization = EdNormalization::kConditional)
      : tree_(std::move(tree)),
        learning_rate_(learning_rate),
        schedule_(schedule),
        normalization_(normalization) {
    RequirePerfectRecall(*tree_, "ED");
    RequireTwoPlayers(*tree_, "ED");
    if (!(learning_rate > 0.0)) Fail(ErrorKind::kInvalidArgument, "learning rate must be > 0");
    logits_.resize(tree_->infosets().size());
    for (std::size_t s = 0; s < logits_.size(); ++s) {
      logits_[s].assign(tree_->infoset(static_cast<int>(s)).actions.size(), 0.0);
    }
  }
  EdSolver(std::shared_ptr<const Game> game, double learning_rate = 0.1,
           LearningRateSchedule schedule = LearningRateSchedule::kConstant,
           EdNormalization normalization = EdNormalization::kConditional,
           std::size_t budget = kDefaultEnumerationBudget)
      : EdSolver(std::make_shared<const GameTree>(std::move(game), budget), learning_rate,
                 schedule, normalization) {}

  // Table in which `player` follows the current policy and every other
  // player best-responds to it (uniformly over tied best actions).
  PolicyTable AgainstBestResponses(int player) const {
    PolicyTable table = CurrentTable();
    for (int j = 0; j < tree_->num_players(); ++j) {
      if (j == player) continue;
      table = ApplyBestResponse(*tree_, table,
                                BestResponseOnTree(*tree_, CurrentTable(), j, /*mix_ties=*/true));
    }
    return table;
  }

  // Logit gradients of every player's value, stacked in one table.
  PolicyTable Gradient() const {
    PolicyTable total(logits_.size());
    for (std::size_t s = 0; s < logits_.size(); ++s) total[s].assign(logits_[s].size(), 0.0);
    for (int i = 0; i < tree_->num_players(); ++i) {
      const PolicyTable g = ValueGradient(*tree_, AgainstBestResponses(i), i);
      for (std::size_t s = 0; s < total.size(); ++s) {
        if (tree_->infoset(static_cast<int>(s)).player == i) total[s] = g[s];
      }
    }
    return total;
  }

  // Per-state ascent direction used by Iterate.
  PolicyTable StepDirection() const {
    PolicyTable total(logits_.size());
    for (std::size_t s = 0; s < logits_.size(); ++s) total[s].assign(logits_[s].size(), 0.0);
    for (int i = 0; i < tree_->num_players(); ++i) {
      const PolicyTable table = AgainstBestResponses(i);
      const CounterfactualValues cf = ComputeCounterfactualValues(*tree_, table)[i];
      for (std::size_t s = 0; s < total.size(); ++s) {
        if (tree_->infoset(static_cast<int>(s)).player != i) continue;
        double scale = cf.own_reach[s];
        if (normalization_ == EdNormalization::kConditional) {
          scale = cf.beta[s] > 0.0 ? 1.0 / cf.beta[s] : 0.0;
        }
        for (std::size_t a = 0; a < total[s].size(); ++a) {
          total[s][a] = scale * table[s][a] * (cf.q[s][a] - cf.v[s]);
        }
      }
    }
    return total;
  }

  void Iterate() {
    ++iteration_;
    const double rate = schedule_ == LearningRateSchedule::kConstant
                            ? learning_rate_
                            : learning_rate_ / std::sqrt(static_cast<double>(iteration_));
    const PolicyTable grad = StepDirection();
    for (std::size_t s = 0; s < logits_.size(); ++s) {
      for (std::size_t a = 0; a < logits_[s].size(); ++a) logits_[s][a] += rate * grad[s][a];
    }
  }

  void Run(int iterations) {
    for (int k = 0; k < iterations; ++k) Iterate();
  }

  int iteration() const { return iteration_; }
  const GameTree& tree() const { return *tree_; }
  const PolicyTable& logits() const { return logits_; }
  void set_logits(PolicyTable logits) { logits_ = std::move(logits); }
  PolicyTable CurrentTable() const { return SoftmaxTable(logits_); }
  TabularPolicy CurrentPolicy() const { return tree_->ToTabularPolicy(CurrentTable()); }

 private:
  std::shared_ptr<const GameTree> tree_;
  double learning_rate_;
  LearningRateSchedule schedule_;
  EdNormalization normalization_;
  PolicyTable logits_;
  int iteration_ = 0;
};

}  // namespace gamelab

#endif  // GAMELAB_BR_ITER_HPP_
