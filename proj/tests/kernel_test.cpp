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

#include <sstream>

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

void ExpectConformant(const oracle::Conformance& report, const std::string& game) {
  EXPECT_TRUE(report.failures.empty()) << game << ": " << report.failures.front();
}

class HistoryConformance : public ::testing::TestWithParam<std::string> {};

TEST_P(HistoryConformance, EveryHistoryPassesKernelSuites) {
  const auto game = LoadGame(GetParam());
  const auto report = oracle::CheckAllHistories(*game);
  ExpectConformant(report, GetParam());
  EXPECT_LE(report.longest, game->Descriptor().max_game_length);
  EXPECT_GT(report.visited, 1u);
}

INSTANTIATE_TEST_SUITE_P(
    ShippedGames, HistoryConformance,
    ::testing::Values("kuhn_poker", "leduc_poker", "tic_tac_toe", "goofspiel", "goofspiel(num_cards=3)",
                      "matrix_rps", "matrix_mp", "matrix_pd", "matrix_sh", "pig(target_score=4,horizon=3)",
                      "pig(target_score=6,dice_sides=3,horizon=2)", "turn_based(game=matrix_rps)",
                      "turn_based(game=goofspiel(num_cards=3))"),
    [](const auto& info) {
      std::string name = info.param;
      for (char& c : name) {
        if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
      }
      return name;
    });

TEST(StateConformance, DefaultPigEveryDistinctState) {
  const auto game = LoadGame("pig");
  const auto report = oracle::CheckAllStates(*game);
  ExpectConformant(report, "pig");
  EXPECT_EQ(report.visited, GetAllStates(*game, {true, true}).size());
}

TEST(StructuralCounts, KuhnMatchesRulesOracle) {
  const auto game = LoadGame("kuhn_poker");
  const GameTree tree(game);
  const auto oracle_counts = oracle::CountKuhnFromRules();
  int terminals = 0;
  for (const auto& node : tree.nodes()) terminals += node.kind == NodeKind::kTerminal;
  EXPECT_EQ(oracle_counts.terminals, 30);
  EXPECT_EQ(oracle_counts.information_states, 12);
  EXPECT_EQ(oracle_counts.tree_nodes, 58);
  EXPECT_EQ(terminals, oracle_counts.terminals);
  EXPECT_EQ(static_cast<int>(tree.infosets().size()), oracle_counts.information_states);
  EXPECT_EQ(static_cast<int>(tree.nodes().size()), oracle_counts.tree_nodes);
}

TEST(StructuralCounts, TicTacToeDistinctPositions) {
  const auto game = LoadGame("tic_tac_toe");
  EXPECT_EQ(oracle::CountTicTacToePositions(), 5478);
  EXPECT_EQ(GetAllStates(*game, {true, true}).size(), 5478u);
}

TEST(Kernel, ChildLeavesParentUntouched) {
  const auto game = LoadGame("tic_tac_toe");
  const State root = game->NewInitialState();
  const std::string before = root.ToString();
  const State child = root.Child(4);
  EXPECT_EQ(root.ToString(), before);
  EXPECT_EQ(root.MoveNumber(), 0);
  EXPECT_EQ(child.MoveNumber(), 1);
  EXPECT_EQ(child.HistoryString(), "4");
}

TEST(Kernel, ErrorKinds) {
  const auto ttt = LoadGame("tic_tac_toe");
  const State root = ttt->NewInitialState();
  EXPECT_GAME_ERROR(root.Child(9), ErrorKind::kIllegalAction);
  EXPECT_GAME_ERROR(root.Child(4).Child(4), ErrorKind::kIllegalAction);
  EXPECT_GAME_ERROR(root.LegalActions(1), ErrorKind::kWrongPlayer);
  EXPECT_GAME_ERROR(root.ChanceOutcomes(), ErrorKind::kNotChanceNode);
  EXPECT_GAME_ERROR(root.Returns(), ErrorKind::kNotTerminal);
  EXPECT_GAME_ERROR(root.InformationStateKey(2), ErrorKind::kInvalidPlayer);
  const State won = StateFromHistoryString(*ttt, "0 3 1 4 2");
  ASSERT_TRUE(won.IsTerminal());
  EXPECT_GAME_ERROR(won.Child(5), ErrorKind::kTerminalState);
  EXPECT_GAME_ERROR(won.LegalActions(), ErrorKind::kTerminalState);
  EXPECT_GAME_ERROR(StateFromHistoryString(*ttt, "0 x"), ErrorKind::kParseError);

  const auto rps = LoadGame("matrix_rps");
  const State joint = rps->NewInitialState();
  EXPECT_GAME_ERROR(joint.Child(0), ErrorKind::kIllegalAction);
  EXPECT_GAME_ERROR(joint.Child({0}), ErrorKind::kIllegalAction);
  EXPECT_GAME_ERROR(joint.Child({0, 3}), ErrorKind::kIllegalAction);
  EXPECT_GAME_ERROR(joint.LegalActions(), ErrorKind::kWrongPlayer);
}

TEST(Registry, GameStrings) {
  EXPECT_GAME_ERROR(LoadGame("no_such_game"), ErrorKind::kUnknownGame);
  EXPECT_GAME_ERROR(LoadGame("pig(colour=red)"), ErrorKind::kInvalidParameter);
  EXPECT_GAME_ERROR(LoadGame("pig(target_score=x)"), ErrorKind::kInvalidParameter);
  EXPECT_GAME_ERROR(LoadGame("pig(target_score=0)"), ErrorKind::kInvalidParameter);
  for (const auto& name : RegisteredGames()) {
    if (name == "turn_based") continue;
    const auto game = LoadGame(name);
    EXPECT_EQ(LoadGame(game->ToString())->ToString(), game->ToString());
  }
  const auto pig = LoadGame("pig(target_score=10)");
  EXPECT_EQ(pig->ToString(), "pig(target_score=10)");
}

TEST(Games, KnownOutcomes) {
  const auto ttt = LoadGame("tic_tac_toe");
  EXPECT_EQ(StateFromHistoryString(*ttt, "0 3 1 4 2").Returns(), (std::vector<double>{1, -1}));
  EXPECT_EQ(StateFromHistoryString(*ttt, "4 0 1 7 2 6 3 5 8").Returns(), (std::vector<double>{0, 0}));

  const auto kuhn = LoadGame("kuhn_poker");
  // Jack vs queen: pass-pass shows down for the ante; bet-fold wins it.
  EXPECT_EQ(StateFromHistoryString(*kuhn, "0 1 0 0").Returns(), (std::vector<double>{-1, 1}));
  EXPECT_EQ(StateFromHistoryString(*kuhn, "0 1 1 0").Returns(), (std::vector<double>{1, -1}));
  EXPECT_EQ(StateFromHistoryString(*kuhn, "0 1 1 1").Returns(), (std::vector<double>{-2, 2}));
  EXPECT_EQ(StateFromHistoryString(*kuhn, "2 1 0 1 1").Returns(), (std::vector<double>{2, -2}));

  const auto rps = LoadGame("matrix_rps");
  EXPECT_EQ(rps->NewInitialState().Child({1, 0}).Returns(), (std::vector<double>{1, -1}));
  EXPECT_EQ(rps->NewInitialState().Child({2, 2}).Returns(), (std::vector<double>{0, 0}));
}

TEST(Games, KeysArePlayerTagged) {
  const auto kuhn = LoadGame("kuhn_poker");
  const State s = StateFromHistoryString(*kuhn, "0 1");
  EXPECT_EQ(s.InformationStateKey(0).rfind("p0|", 0), 0u);
  EXPECT_EQ(s.InformationStateKey(1).rfind("p1|", 0), 0u);
  // Player 0 cannot see player 1's card.
  EXPECT_EQ(s.InformationStateKey(0), StateFromHistoryString(*kuhn, "0 2").InformationStateKey(0));
  EXPECT_NE(s.InformationStateKey(1), StateFromHistoryString(*kuhn, "0 2").InformationStateKey(1));
}

TEST(TurnBased, PreservesExpectedReturnsAndRejectsDoubleWrap) {
  for (const std::string name : {"matrix_rps", "matrix_pd", "goofspiel(num_cards=3)"}) {
    const auto game = LoadGame(name);
    const auto seq = ToTurnBased(game);
    EXPECT_EQ(seq->Descriptor().dynamics, Dynamics::kSequential);
    const UniformPolicy uniform;
    const auto a = oracle::TerminalEnumerationReturns(*game, uniform);
    const auto b = oracle::TerminalEnumerationReturns(*seq, uniform);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12) << name;
    EXPECT_GAME_ERROR(ToTurnBased(seq), ErrorKind::kAlreadyTurnBased);
  }
}

// Player 0 moves twice; the second decision forgets the first.
class ForgetfulState : public StateImpl {
 public:
  PlayerRef CurrentPlayer() const override {
    return moves_.size() < 2 ? PlayerRef::Decision(0) : PlayerRef::Terminal();
  }
  std::vector<Action> LegalActions(int) const override { return {0, 1}; }
  void ApplyActions(std::span<const Action> a) override { moves_ += static_cast<char>('0' + a[0]); }
  std::vector<double> Returns() const override { return {moves_ == "01" || moves_ == "10" ? 1.0 : 0.0}; }
  std::string InformationStateKey(int) const override { return "p0|" + std::to_string(moves_.size()); }
  std::string ToString() const override { return moves_; }
  std::unique_ptr<StateImpl> Clone() const override { return std::make_unique<ForgetfulState>(*this); }

 private:
  std::string moves_;
};

class ForgetfulGame : public Game {
 public:
  ForgetfulGame() : Game(Describe(), {}) {}

 protected:
  std::unique_ptr<StateImpl> NewInitialImpl() const override { return std::make_unique<ForgetfulState>(); }

 private:
  static GameDescriptor Describe() {
    GameDescriptor d;
    d.short_name = "forgetful";
    d.num_players = 1;
    d.utility_min = 0.0;
    d.max_game_length = 2;
    d.utility_class = UtilityClass::kGeneralSum;
    return d;
  }
};

TEST(PerfectRecall, ViolationIsDetectedAndRejected) {
  const auto game = std::make_shared<ForgetfulGame>();
  const auto report = VerifyPerfectRecall(*game);
  EXPECT_FALSE(report.ok());
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0], "p0|1");
  const GameTree tree(game);
  EXPECT_FALSE(tree.perfect_recall());
  EXPECT_GAME_ERROR(BestResponseOnTree(tree, tree.UniformTable(), 0), ErrorKind::kImperfectRecall);
  EXPECT_GAME_ERROR(CfrSolver(std::make_shared<const GameTree>(game), CfrConfig::Vanilla()),
                    ErrorKind::kImperfectRecall);
}

TEST(PolicyFile, RoundTripIsBitExact) {
  CfrSolver solver(LoadGame("kuhn_poker"), CfrConfig::Vanilla());
  solver.Run(37);
  const TabularPolicy policy = solver.AveragePolicy();
  std::ostringstream first;
  WritePolicy(first, policy);
  std::istringstream in(first.str());
  const TabularPolicy back = ReadPolicy(in);
  EXPECT_EQ(back, policy);
  std::ostringstream second;
  WritePolicy(second, back);
  EXPECT_EQ(first.str(), second.str());
  for (const auto& [key, dist] : policy.table()) {
    for (std::size_t i = 0; i < dist.size(); ++i) {
      EXPECT_EQ(dist[i].second, back.At(key)[i].second);  // bit-exact doubles
    }
  }
}

TEST(PolicyFile, EscapesAndSortsKeys) {
  TabularPolicy policy;
  policy.Set("b\tkey", {{1, 0.25}, {0, 0.75}});
  policy.Set("a%\nkey\r", {{3, 1.0}});
  std::ostringstream out;
  WritePolicy(out, policy);
  EXPECT_EQ(out.str(), "a%25%0Akey%0D\t3=1\nb%09key\t0=0.75,1=0.25\n");
  std::istringstream in(out.str());
  EXPECT_EQ(ReadPolicy(in), policy);
}

TEST(PolicyFile, RejectsMalformedInput) {
  for (const std::string text : {"key 0=1\n", "key\t0=0.5\n", "key\tx=1\n", "key\t0=-1,1=2\n",
                                 "key\t0=1;\n", "k%zz\t0=1\n"}) {
    std::istringstream in(text);
    EXPECT_GAME_ERROR(ReadPolicy(in), ErrorKind::kParseError);
  }
}

TEST(PolicyFile, CheckAgainstGame) {
  const auto game = LoadGame("kuhn_poker");
  TabularPolicy policy = UniformRandomPolicy(*game);
  EXPECT_EQ(policy.size(), 12u);
  EXPECT_TRUE(CheckPolicyAgainstGame(*game, policy).empty());
  const std::string key = policy.table().begin()->first;
  policy.Set(key, {{0, 0.5}, {7, 0.5}});
  const auto problems = CheckPolicyAgainstGame(*game, policy);
  ASSERT_EQ(problems.size(), 1u);
  EXPECT_NE(problems[0].find("illegal action 7"), std::string::npos);
}

TEST(Policy, MissingEntryRaises) {
  const auto game = LoadGame("kuhn_poker");
  const TabularPolicy empty;
  const State s = StateFromHistoryString(*game, "0 1");
  EXPECT_GAME_ERROR(empty.ActionProbabilities(s), ErrorKind::kMissingPolicyEntry);
}

}  // namespace
}  // namespace gamelab
