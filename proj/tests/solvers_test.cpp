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

#include <gtest/gtest.h>

#include <cmath>

#include "gamelab/br_iter.hpp"
#include "gamelab/regret.hpp"
#include "oracles.hpp"

namespace gamelab {
namespace {

#define EXPECT_GAME_ERROR(statement, expected_kind)           \
  do {                                                        \
    try {                                                     \
      statement;                                              \
      ADD_FAILURE() << "no GameError from " #statement;       \
    } catch (const GameError& e) {                            \
      EXPECT_EQ(e.kind(), expected_kind) << e.what();         \
    }                                                         \
  } while (0)

void ExpectValidTable(const GameTree& tree, const PolicyTable& table) {
  ASSERT_EQ(table.size(), tree.infosets().size());
  for (std::size_t s = 0; s < table.size(); ++s) {
    ASSERT_EQ(table[s].size(), tree.infoset(static_cast<int>(s)).actions.size());
    double total = 0.0;
    for (double p : table[s]) {
      EXPECT_GE(p, 0.0);
      total += p;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(RegretMatching, PositivePartOrUniform) {
  EXPECT_EQ(RegretMatching({1.0, -2.0, 3.0}), (std::vector<double>{0.25, 0.0, 0.75}));
  EXPECT_EQ(RegretMatching({-1.0, 0.0, -5.0}), (std::vector<double>(3, 1.0 / 3.0)));
  EXPECT_EQ(RegretMatching({0.0}), (std::vector<double>{1.0}));
  EXPECT_GAME_ERROR(RegretMatching({}), ErrorKind::kEmptyActionSet);
}

TEST(CounterfactualValues, ConditionalValueIdentityOnKuhn) {
  const auto game = LoadGame("kuhn_poker");
  const GameTree tree(game);
  std::size_t checked = 0;
  for (int p = 0; p < 2; ++p) {
    const auto report = CfValueConsistencyCheck(tree, UniformPolicy(), p);
    EXPECT_TRUE(report.ok(1e-9)) << "player " << p << " error " << report.max_error;
    checked += report.checked.size();
    EXPECT_TRUE(report.skipped.empty());
    const auto random = CfValueConsistencyCheck(tree, tree.ToTabularPolicy(oracle::RandomTable(tree, 9)), p);
    EXPECT_TRUE(random.ok(1e-9)) << "player " << p << " error " << random.max_error;
  }
  EXPECT_EQ(checked, 12u);
}

TEST(Cfr, VanillaKuhnConvergesAndIsDeterministic) {
  const auto tree = std::make_shared<const GameTree>(LoadGame("kuhn_poker"));
  CfrSolver a(tree, CfrConfig::Vanilla());
  CfrSolver b(tree, CfrConfig::Vanilla());
  double previous = 1e9;
  for (int checkpoint : {10, 100, 1000}) {
    a.Run(checkpoint - a.iteration());
    const double nc = NashConvOnTree(*tree, a.AverageTable()).total;
    EXPECT_LT(nc, previous) << "t = " << checkpoint;
    previous = nc;
    ExpectValidTable(*tree, a.AverageTable());
    ExpectValidTable(*tree, a.CurrentTable());
  }
  EXPECT_LT(previous, 0.01);
  EXPECT_NEAR(tree->ExpectedValues(a.AverageTable())[0], -1.0 / 18.0, 0.005);
  b.Run(1000);
  EXPECT_EQ(a.regrets(), b.regrets());
  EXPECT_EQ(a.average_weights(), b.average_weights());
}

TEST(Cfr, AverageRegretShrinks) {
  CfrSolver solver(LoadGame("kuhn_poker"), CfrConfig::Vanilla());
  solver.Run(100);
  const double early = solver.MaxAverageRegret();
  solver.Run(900);
  EXPECT_LT(solver.MaxAverageRegret(), early);
}

TEST(Cfr, SimultaneousUpdatesStillConverge) {
  const auto tree = std::make_shared<const GameTree>(LoadGame("kuhn_poker"));
  CfrSolver solver(tree, CfrConfig::Simultaneous());
  solver.Run(1000);
  EXPECT_LT(NashConvOnTree(*tree, solver.AverageTable()).total, 0.02);
}

TEST(CfrPlus, RegretsStayNonNegative) {
  for (const std::string name : {"kuhn_poker", "matrix_rps", "goofspiel(num_cards=3)"}) {
    CfrSolver solver(LoadGame(name), CfrConfig::Plus());
    for (int t = 0; t < 60; ++t) {
      solver.Iterate();
      for (const auto& row : solver.regrets()) {
        for (double r : row) ASSERT_GE(r, 0.0) << name << " t = " << solver.iteration();
      }
    }
  }
}

TEST(Mccfr, TouchesAtMostOnePathPerPlayer) {
  const auto game = LoadGame("leduc_poker");
  CfrSolver solver(game, CfrConfig::OutcomeSampling(4));
  for (int t = 0; t < 200; ++t) {
    solver.Iterate();
    for (int touched : solver.touched_last_iteration()) {
      EXPECT_LE(touched, game->Descriptor().max_game_length);
    }
  }
}

TEST(Mccfr, SeededRunsAreReproducible) {
  const auto tree = std::make_shared<const GameTree>(LoadGame("kuhn_poker"));
  for (const auto& config : {CfrConfig::OutcomeSampling(5), CfrConfig::ExternalSampling(5)}) {
    CfrSolver a(tree, config), b(tree, config);
    a.Run(300);
    b.Run(300);
    EXPECT_EQ(a.regrets(), b.regrets());
    EXPECT_EQ(a.average_weights(), b.average_weights());
    ExpectValidTable(*tree, a.AverageTable());
  }
  CfrSolver c(tree, CfrConfig::OutcomeSampling(5)), d(tree, CfrConfig::OutcomeSampling(6));
  c.Run(50);
  d.Run(50);
  EXPECT_NE(c.regrets(), d.regrets());
}

TEST(Mccfr, RejectsBadExploration) {
  EXPECT_GAME_ERROR(CfrSolver(LoadGame("kuhn_poker"), CfrConfig::OutcomeSampling(1, 0.0)),
                    ErrorKind::kInvalidArgument);
  EXPECT_GAME_ERROR(CfrSolver(LoadGame("kuhn_poker"), CfrConfig::OutcomeSampling(1, 1.5)),
                    ErrorKind::kInvalidArgument);
}

TEST(Xfp, FirstAverageIsJointBestResponseToUniform) {
  const auto tree = std::make_shared<const GameTree>(LoadGame("kuhn_poker"));
  XfpSolver xfp(tree);
  xfp.Iterate();
  const PolicyTable uniform = tree->UniformTable();
  PolicyTable expected = uniform;
  for (int p = 0; p < 2; ++p) {
    const PolicyTable br = ApplyBestResponse(*tree, uniform, BestResponseOnTree(*tree, uniform, p));
    for (std::size_t s = 0; s < expected.size(); ++s) {
      if (tree->infoset(static_cast<int>(s)).player == p) expected[s] = br[s];
    }
  }
  EXPECT_EQ(xfp.AverageTable(), expected);
}

TEST(Xfp, KuhnNashConvDecreasesAcrossCheckpoints) {
  const auto tree = std::make_shared<const GameTree>(LoadGame("kuhn_poker"));
  XfpSolver xfp(tree);
  double previous = 1e9;
  for (int checkpoint : {10, 100, 500}) {
    xfp.Run(checkpoint - xfp.iteration());
    ExpectValidTable(*tree, xfp.AverageTable());
    const double nc = NashConvOnTree(*tree, xfp.AverageTable()).total;
    EXPECT_LT(nc, previous) << "t = " << checkpoint;
    previous = nc;
  }
}

TEST(Xfp, SimultaneousScheduleOnMatchingPenniesDecreasesStrictly) {
  const auto tree = std::make_shared<const GameTree>(LoadGame("matrix_mp"));
  XfpSolver xfp(tree, /*alternating=*/false);
  double previous = 1e9;
  for (int checkpoint : {10, 100, 1000}) {
    xfp.Run(checkpoint - xfp.iteration());
    const double nc = NashConvOnTree(*tree, xfp.AverageTable()).total;
    EXPECT_LT(nc, previous) << "t = " << checkpoint;
    previous = nc;
  }
}

TEST(Xfp, AlternatingScheduleOnMatchingPenniesReachesEquilibrium) {
  const auto tree = std::make_shared<const GameTree>(LoadGame("matrix_mp"));
  XfpSolver xfp(tree, /*alternating=*/true);
  xfp.Run(1000);
  EXPECT_LT(NashConvOnTree(*tree, xfp.AverageTable()).total, 0.01);
}

// Central differences of each player's value in their own logits, holding
// the opponents at their best responses to the current policy.
void ExpectGradientMatchesFiniteDifferences(const std::string& name, std::uint64_t seed) {
  const auto tree = std::make_shared<const GameTree>(LoadGame(name));
  EdSolver ed(tree, 0.1, LearningRateSchedule::kConstant, EdNormalization::kCounterfactual);
  Rng rng(seed);
  PolicyTable logits = ed.logits();
  for (auto& row : logits) {
    for (double& z : row) z = 2.0 * rng.Uniform() - 1.0;
  }
  ed.set_logits(logits);
  const PolicyTable grad = ed.Gradient();
  const double h = 1e-5;
  double max_grad = 0.0, max_error = 0.0;
  for (int p = 0; p < tree->num_players(); ++p) {
    const PolicyTable fixed = ed.AgainstBestResponses(p);
    auto value_at = [&](const PolicyTable& z) {
      PolicyTable table = fixed;
      for (std::size_t s = 0; s < table.size(); ++s) {
        if (tree->infoset(static_cast<int>(s)).player == p) table[s] = Softmax(z[s]);
      }
      return tree->ExpectedValues(table)[p];
    };
    for (std::size_t s = 0; s < logits.size(); ++s) {
      if (tree->infoset(static_cast<int>(s)).player != p) continue;
      for (std::size_t a = 0; a < logits[s].size(); ++a) {
        PolicyTable up = logits, down = logits;
        up[s][a] += h;
        down[s][a] -= h;
        const double fd = (value_at(up) - value_at(down)) / (2.0 * h);
        const double error = std::abs(fd - grad[s][a]);
        max_grad = std::max(max_grad, std::abs(grad[s][a]));
        max_error = std::max(max_error, error);
        if (std::abs(grad[s][a]) > 1e-3) {
          EXPECT_LE(error / std::abs(grad[s][a]), 1e-6) << name << " infoset " << s << " action " << a;
        }
      }
    }
  }
  ASSERT_GT(max_grad, 0.0) << name;
  EXPECT_LE(max_error / max_grad, 1e-6) << name;
  EXPECT_EQ(ed.StepDirection(), grad) << "counterfactual steps follow the exact gradient";
}

TEST(Ed, GradientMatchesFiniteDifferences) {
  for (const std::string name : {"matrix_rps", "matrix_mp", "matrix_pd", "matrix_sh", "kuhn_poker"}) {
    for (std::uint64_t seed : {1, 2, 3}) ExpectGradientMatchesFiniteDifferences(name, seed);
  }
}

TEST(Ed, ZeroGradientAtMatchingPenniesEquilibrium) {
  for (const std::string name : {"matrix_mp", "matrix_rps"}) {
    EdSolver ed(LoadGame(name));
    const PolicyTable before = ed.logits();
    ed.Iterate();
    for (std::size_t s = 0; s < before.size(); ++s) {
      for (std::size_t a = 0; a < before[s].size(); ++a) {
        EXPECT_LT(std::abs(ed.logits()[s][a] - before[s][a]), 1e-12) << name;
      }
    }
  }
}

TEST(Ed, KuhnCurrentPolicyImproves) {
  const auto tree = std::make_shared<const GameTree>(LoadGame("kuhn_poker"));
  EdSolver ed(tree, 0.1);
  double previous = 1e9;
  for (int checkpoint : {10, 100, 500}) {
    ed.Run(checkpoint - ed.iteration());
    const double nc = NashConvOnTree(*tree, ed.CurrentTable()).total;
    EXPECT_LT(nc, previous) << "t = " << checkpoint;
    previous = nc;
  }
  EXPECT_LT(previous, 0.05);
}

TEST(Ed, InverseSqrtScheduleAndValidation) {
  const auto tree = std::make_shared<const GameTree>(LoadGame("kuhn_poker"));
  EdSolver constant(tree, 0.1), decayed(tree, 0.1, LearningRateSchedule::kInverseSqrt);
  constant.Iterate();
  decayed.Iterate();
  EXPECT_EQ(constant.logits(), decayed.logits());  // 1/sqrt(1) = 1
  constant.Iterate();
  decayed.Iterate();
  EXPECT_NE(constant.logits(), decayed.logits());
  EXPECT_GAME_ERROR(EdSolver(tree, 0.0), ErrorKind::kInvalidArgument);
}

}  // namespace
}  // namespace gamelab
