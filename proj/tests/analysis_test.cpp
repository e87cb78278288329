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

#include "gamelab/regret.hpp"
#include "gamelab/search.hpp"
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

// Kuhn equilibrium with alpha = 0: player 0 never bluffs and calls with the
// queen a third of the time; player 1 bluffs the jack a third of the time.
TabularPolicy KuhnEquilibrium() {
  TabularPolicy p;
  auto set = [&](const std::string& key, double bet) { p.Set(key, {{0, 1.0 - bet}, {1, bet}}); };
  set("p0|J|", 0.0);
  set("p0|Q|", 0.0);
  set("p0|K|", 0.0);
  set("p0|J|pb", 0.0);
  set("p0|Q|pb", 1.0 / 3.0);
  set("p0|K|pb", 1.0);
  set("p1|J|p", 1.0 / 3.0);
  set("p1|Q|p", 0.0);
  set("p1|K|p", 1.0);
  set("p1|J|b", 0.0);
  set("p1|Q|b", 1.0 / 3.0);
  set("p1|K|b", 1.0);
  return p;
}

TEST(ExpectedReturns, MatchesTerminalEnumeration) {
  for (const std::string name : {"kuhn_poker", "leduc_poker", "goofspiel(num_cards=3)", "matrix_rps",
                                 "matrix_pd", "pig(target_score=4,horizon=3)"}) {
    const auto game = LoadGame(name);
    const GameTree tree(game);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const PolicyTable table = seed == 0 ? tree.UniformTable() : oracle::RandomTable(tree, seed);
      const TabularPolicy policy = tree.ToTabularPolicy(table);
      const auto oracle_values = oracle::TerminalEnumerationReturns(*game, policy);
      const auto walked = ExpectedReturns(*game, policy);
      const auto on_tree = tree.ExpectedValues(table);
      for (std::size_t i = 0; i < oracle_values.size(); ++i) {
        EXPECT_NEAR(walked[i], oracle_values[i], 1e-12) << name << " seed " << seed;
        EXPECT_NEAR(on_tree[i], oracle_values[i], 1e-12) << name << " seed " << seed;
      }
      if (game->Descriptor().utility_class == UtilityClass::kZeroSum) {
        EXPECT_NEAR(walked[0] + walked[1], 0.0, 1e-9);
      }
    }
  }
}

TEST(ExpectedReturns, KuhnUniformIsOneEighth) {
  const auto v = ExpectedReturns(*LoadGame("kuhn_poker"), UniformPolicy());
  EXPECT_NEAR(v[0], 0.125, 1e-12);
  EXPECT_NEAR(v[1], -0.125, 1e-12);
}

void ExpectBestResponseMatchesBruteForce(const GameTree& tree, const PolicyTable& table,
                                         const std::string& label) {
  for (int p = 0; p < tree.num_players(); ++p) {
    const TreeBestResponse br = BestResponseOnTree(tree, table, p);
    const double brute = oracle::BruteForceBestResponse(tree, table, p);
    EXPECT_NEAR(br.value, brute, 1e-12) << label << " player " << p;
    const PolicyTable applied = ApplyBestResponse(tree, table, br);
    EXPECT_NEAR(tree.ExpectedValues(applied)[p], brute, 1e-12) << label << " player " << p;
    for (std::size_t s = 0; s < tree.infosets().size(); ++s) {
      if (tree.infoset(static_cast<int>(s)).player != p) continue;
      ASSERT_GE(br.choice[s], 0);
      EXPECT_EQ(applied[s][br.choice[s]], 1.0);
    }
  }
}

TEST(BestResponse, MatchesPureStrategyEnumerationOnKuhn) {
  const GameTree tree(LoadGame("kuhn_poker"));
  ExpectBestResponseMatchesBruteForce(tree, tree.UniformTable(), "uniform");
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    ExpectBestResponseMatchesBruteForce(tree, oracle::RandomTable(tree, seed), "seed " + std::to_string(seed));
  }
  CfrSolver cfr(LoadGame("kuhn_poker"), CfrConfig::Vanilla());
  cfr.Run(50);
  ExpectBestResponseMatchesBruteForce(tree, cfr.AverageTable(), "cfr average");
}

TEST(BestResponse, MatchesPureStrategyEnumerationOnMatrixGames) {
  for (const std::string name : {"matrix_rps", "matrix_mp", "matrix_pd", "matrix_sh"}) {
    const GameTree tree(LoadGame(name));
    ExpectBestResponseMatchesBruteForce(tree, tree.UniformTable(), name);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      ExpectBestResponseMatchesBruteForce(tree, oracle::RandomTable(tree, seed), name);
    }
  }
}

TEST(BestResponse, TiesGoToLowestAction) {
  const auto rps = LoadGame("matrix_rps");
  const auto result = BestResponse(rps, UniformPolicy(), 1);
  ASSERT_EQ(result.br_policy.size(), 1u);
  const auto& dist = result.br_policy.table().begin()->second;
  EXPECT_EQ(dist[0], (std::pair<Action, double>{0, 1.0}));
  EXPECT_NEAR(result.br_value, 0.0, 1e-15);
}

TEST(BestResponse, RejectsBadPlayer) {
  const GameTree tree(LoadGame("kuhn_poker"));
  EXPECT_GAME_ERROR(BestResponseOnTree(tree, tree.UniformTable(), 2), ErrorKind::kInvalidPlayer);
}

TEST(NashConv, KuhnUniformAndEquilibrium) {
  const auto kuhn = LoadGame("kuhn_poker");
  const auto uniform = NashConv(kuhn, UniformPolicy());
  EXPECT_NEAR(uniform.total, 11.0 / 12.0, 1e-12);
  EXPECT_NEAR(uniform.deltas[0], 0.375, 1e-12);
  EXPECT_NEAR(uniform.deltas[1], 13.0 / 24.0, 1e-12);
  const auto eq = NashConv(kuhn, KuhnEquilibrium());
  EXPECT_NEAR(eq.total, 0.0, 1e-12);
  EXPECT_NEAR(eq.on_policy[0], -1.0 / 18.0, 1e-12);
  for (double d : eq.deltas) EXPECT_GE(d, -1e-12);
}

TEST(Exploitability, HalfNashConvAndConstantSumOnly) {
  const auto kuhn = LoadGame("kuhn_poker");
  EXPECT_NEAR(Exploitability(kuhn, UniformPolicy()), 11.0 / 24.0, 1e-12);
  EXPECT_GAME_ERROR(Exploitability(LoadGame("matrix_pd"), UniformPolicy()), ErrorKind::kNotConstantSum);
  // NashConv itself is defined for general-sum games.
  EXPECT_GE(NashConv(LoadGame("matrix_pd"), UniformPolicy()).total, 0.0);
}

TEST(Trajectories, DeterministicAndUnbiased) {
  const auto kuhn = LoadGame("kuhn_poker");
  const UniformPolicy uniform;
  const auto a = SampleTrajectories(*kuhn, uniform, 200, 11);
  const auto b = SampleTrajectories(*kuhn, uniform, 200, 11);
  ASSERT_EQ(a.episodes.size(), 200u);
  for (std::size_t e = 0; e < a.episodes.size(); ++e) {
    EXPECT_EQ(a.episodes[e].transitions, b.episodes[e].transitions);
    EXPECT_EQ(a.episodes[e].length, static_cast<int>(a.episodes[e].transitions.size()));
    EXPECT_LE(a.episodes[e].length, kuhn->Descriptor().max_game_length);
    const State end = StateFromHistory(*kuhn, a.episodes[e].transitions);
    EXPECT_TRUE(end.IsTerminal());
    EXPECT_EQ(end.Returns(), a.episodes[e].returns);
    for (const auto& step : a.episodes[e].decisions) {
      EXPECT_EQ(step.info_state_key.rfind("p" + std::to_string(step.player) + "|", 0), 0u);
    }
  }
  const auto big = SampleTrajectories(*kuhn, uniform, 100000, 7);
  // Returns lie in [-2, 2]; 0.02 is more than four standard errors.
  EXPECT_NEAR(big.MeanReturns()[0], 0.125, 0.02);
  EXPECT_GAME_ERROR(SampleTrajectories(*kuhn, uniform, 0, 1), ErrorKind::kInvalidArgument);
}

TEST(Trajectories, SimultaneousStepsShareTransition) {
  const auto rps = LoadGame("matrix_rps");
  const auto batch = SampleTrajectories(*rps, UniformPolicy(), 5, 3);
  for (const auto& e : batch.episodes) {
    ASSERT_EQ(e.decisions.size(), 2u);
    EXPECT_EQ(e.decisions[0].transition, e.decisions[1].transition);
    EXPECT_EQ(e.length, 1);
  }
}

TEST(ValueIteration, TicTacToeIsADraw) {
  const auto ttt = LoadGame("tic_tac_toe");
  const auto result = ValueIteration(*ttt);
  EXPECT_EQ(result.values.size(), 5478u);
  EXPECT_EQ(result.Value(ttt->NewInitialState()), 0.0);
  // X to move with two in a row wins; the value is in the mover's view.
  const State threat = StateFromHistoryString(*ttt, "0 3 1 4");
  EXPECT_EQ(result.Value(threat), 1.0);
  EXPECT_EQ(result.Player0Value(StateFromHistoryString(*ttt, "0 3 1 4 8")), -1.0);
}

TEST(ValueIteration, RejectsImperfectInformationAndGeneralSum) {
  EXPECT_GAME_ERROR(ValueIteration(*LoadGame("kuhn_poker")), ErrorKind::kUnsupportedGameClass);
  EXPECT_GAME_ERROR(ValueIteration(*LoadGame("matrix_pd")), ErrorKind::kUnsupportedGameClass);
}

std::vector<State> RandomPositions(const Game& game, int count, std::uint64_t seed, int min_moves) {
  Rng rng(seed);
  std::vector<State> out;
  while (static_cast<int>(out.size()) < count) {
    State s = game.NewInitialState();
    const int moves = min_moves + static_cast<int>(rng.Below(9 - min_moves));
    for (int m = 0; m < moves && !s.IsTerminal(); ++m) {
      const auto legal = s.LegalActions();
      s = s.Child(legal[rng.Below(legal.size())]);
    }
    if (!s.IsTerminal()) out.push_back(s);
  }
  return out;
}

TEST(Search, MinimaxAndAlphaBetaAgreeWithNaiveOracle) {
  const auto ttt = LoadGame("tic_tac_toe");
  for (const State& s : RandomPositions(*ttt, 150, 5, 2)) {
    const int mover = s.CurrentPlayer().index();
    const double oracle_value = oracle::NaiveMinimax(s, mover);
    const auto mm = Minimax(s, -1);
    const auto ab = AlphaBeta(s, -1);
    EXPECT_EQ(mm.value, oracle_value) << s.HistoryString();
    EXPECT_EQ(ab.value, oracle_value) << s.HistoryString();
    EXPECT_EQ(mm.best_action, ab.best_action) << s.HistoryString();
    EXPECT_LE(ab.nodes_visited, mm.nodes_visited);
    EXPECT_EQ(oracle::NaiveMinimax(s.Child(*ab.best_action), mover), oracle_value);
  }
}

TEST(Search, FullDepthRootAndTieBreak) {
  const auto ttt = LoadGame("tic_tac_toe");
  const auto ab = AlphaBeta(ttt->NewInitialState(), -1);
  EXPECT_EQ(ab.value, 0.0);
  EXPECT_EQ(ab.best_action, 0);  // every opening draws; lowest id wins
}

TEST(Search, DepthLimitUsesValueFunction) {
  const auto ttt = LoadGame("tic_tac_toe");
  int calls = 0;
  const ValueFunction heuristic = [&](const State&, int) {
    ++calls;
    return 0.5;
  };
  const auto r = Minimax(ttt->NewInitialState(), 1, heuristic);
  EXPECT_EQ(calls, 9);
  EXPECT_EQ(r.value, 0.5);
  EXPECT_EQ(AlphaBeta(ttt->NewInitialState(), 0, heuristic).value, 0.5);
}

TEST(Search, ChanceRequiresExpectiminimax) {
  const auto pig = LoadGame("pig(target_score=6,horizon=4)");
  const State root = pig->NewInitialState();
  EXPECT_GAME_ERROR(Minimax(root, -1), ErrorKind::kChanceNodeEncountered);
  EXPECT_GAME_ERROR(AlphaBeta(root, -1), ErrorKind::kChanceNodeEncountered);
  const auto vi = ValueIteration(*pig);
  EXPECT_NEAR(Expectiminimax(root, -1).value, vi.Value(root), 1e-9);
}

TEST(Mcts, ContractsAndDeterminism) {
  const auto ttt = LoadGame("tic_tac_toe");
  const State s = StateFromHistoryString(*ttt, "0 4");
  MctsConfig config;
  config.num_simulations = 500;
  config.seed = 3;
  const auto a = MctsSearch(s, config);
  const auto b = MctsSearch(s, config);
  EXPECT_EQ(a.search.best_action, b.search.best_action);
  EXPECT_EQ(a.root_visits, 500);
  int child_visits = 0;
  for (const auto& c : a.children) child_visits += c.visits;
  EXPECT_EQ(child_visits, a.root_visits);
  EXPECT_GAME_ERROR(MctsSearch(StateFromHistoryString(*ttt, "0 3 1 4 2"), config), ErrorKind::kTerminalRoot);
  EXPECT_NEAR(DefaultUctConstant(ttt->Descriptor()), 4.0 * std::sqrt(2.0), 1e-12);
}

TEST(Mcts, TakesWinsAndBlocksLosses) {
  const auto ttt = LoadGame("tic_tac_toe");
  MctsConfig config;
  config.num_simulations = 2000;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    config.seed = seed;
    // X holds 0 and 1: X wins at 2, O must block at 2.
    EXPECT_EQ(MctsSearch(StateFromHistoryString(*ttt, "0 4 1 8"), config).search.best_action, 2);
    EXPECT_EQ(MctsSearch(StateFromHistoryString(*ttt, "0 4 1"), config).search.best_action, 2);
  }
}

TEST(Mcts, HandlesChanceNodes) {
  const auto pig = LoadGame("pig(target_score=6,horizon=4)");
  MctsConfig config;
  config.num_simulations = 300;
  const auto result = MctsSearch(pig->NewInitialState(), config);
  EXPECT_TRUE(result.search.best_action.has_value());
}

}  // namespace
}  // namespace gamelab
