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

// Independent oracles and small fixtures shared by the test binaries. Nothing
// here calls the library code it is used to check.

#ifndef GAMELAB_TESTS_ORACLES_HPP_
#define GAMELAB_TESTS_ORACLES_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "gamelab/analysis.hpp"
#include "gamelab/cli.hpp"
#include "gamelab/games/registry.hpp"
#include "gamelab/kernel.hpp"
#include "gamelab/rng.hpp"

namespace gamelab::oracle {

// ---------------------------------------------------------------------------
// Kernel conformance.

struct Conformance {
  std::vector<std::string> failures;
  std::size_t visited = 0;
  int longest = 0;

  void Expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 20) failures.push_back(what);
  }
};

inline void CheckNode(const Game& game, const State& s, Conformance& report) {
  const GameDescriptor& d = game.Descriptor();
  const State replay = StateFromHistoryString(game, s.HistoryString());
  report.Expect(replay.ToString() == s.ToString(), "round trip string at [" + s.HistoryString() + "]");
  report.Expect(replay.History() == s.History(), "round trip history at [" + s.HistoryString() + "]");
  report.Expect(s.MoveNumber() <= d.max_game_length, "too long at [" + s.HistoryString() + "]");
  const PlayerRef p = s.CurrentPlayer();
  if (p.is_terminal()) {
    const auto r = s.Returns();
    report.Expect(static_cast<int>(r.size()) == d.num_players, "returns size");
    double sum = 0.0;
    for (double x : r) {
      sum += x;
      report.Expect(x >= d.utility_min - 1e-12 && x <= d.utility_max + 1e-12,
                    "utility out of bounds at [" + s.HistoryString() + "]");
    }
    if (d.IsConstantSum()) {
      report.Expect(std::abs(sum - d.constant_sum) <= 1e-12,
                    "returns do not sum to the constant at [" + s.HistoryString() + "]");
    }
    return;
  }
  if (p.is_chance()) {
    double total = 0.0;
    std::set<Action> ids;
    for (const auto& o : s.ChanceOutcomes()) {
      report.Expect(o.probability > 0.0, "non-positive chance probability");
      total += o.probability;
      ids.insert(o.action);
    }
    report.Expect(std::abs(total - 1.0) <= 1e-12, "chance probabilities sum to " + std::to_string(total));
    report.Expect(ids.size() == s.ChanceOutcomes().size(), "duplicate chance outcome ids");
    return;
  }
  const int first = p.is_decision() ? p.index() : 0;
  const int last = p.is_decision() ? p.index() : d.num_players - 1;
  for (int i = first; i <= last; ++i) {
    const auto legal = s.LegalActions(i);
    report.Expect(!legal.empty(), "empty legal action set");
    report.Expect(std::adjacent_find(legal.begin(), legal.end(),
                                     [](Action a, Action b) { return a >= b; }) == legal.end(),
                  "legal actions not strictly ascending");
  }
}

// Every history: round trip, normalization, sums, length, and perfect recall.
inline Conformance CheckAllHistories(const Game& game) {
  Conformance report;
  WalkHistories(game.NewInitialState(), [&](const State& s) {
    ++report.visited;
    report.longest = std::max(report.longest, s.MoveNumber());
    CheckNode(game, s, report);
  });
  const PerfectRecallReport recall = VerifyPerfectRecall(game);
  for (const auto& key : recall.violations) report.Expect(false, "perfect recall violated at " + key);
  return report;
}

// Every distinct state (by ToString, which fixes the future): the same node
// checks plus the longest remaining path from the root.
inline Conformance CheckAllStates(const Game& game) {
  Conformance report;
  std::unordered_map<std::string, int> remaining;
  std::function<int(const State&)> visit = [&](const State& s) -> int {
    const std::string key = s.ToString();
    if (auto it = remaining.find(key); it != remaining.end()) return it->second;
    ++report.visited;
    CheckNode(game, s, report);
    int below = 0;
    for (auto& [actions, child] : Children(s)) below = std::max(below, 1 + visit(child));
    remaining[key] = below;
    return below;
  };
  report.longest = visit(game.NewInitialState());
  report.Expect(report.longest <= game.Descriptor().max_game_length, "longest path exceeds max_game_length");
  return report;
}

// ---------------------------------------------------------------------------
// Structural counts from rules written out independently of the kernel.

struct KuhnCounts {
  int terminals = 0;
  int information_states = 0;
  int tree_nodes = 0;
};

inline KuhnCounts CountKuhnFromRules() {
  const std::vector<std::string> terminal_bets{"pp", "pbp", "pbb", "bp", "bb"};
  const std::vector<std::string> open_bets{"", "p", "b", "pb"};
  KuhnCounts counts;
  std::set<std::string> infosets;
  int deals = 0;
  for (int c0 = 0; c0 < 3; ++c0) {
    for (int c1 = 0; c1 < 3; ++c1) {
      if (c0 == c1) continue;
      ++deals;
      counts.terminals += static_cast<int>(terminal_bets.size());
      for (const auto& h : open_bets) {
        const int mover = static_cast<int>(h.size()) % 2;
        infosets.insert(std::to_string(mover) + std::to_string(mover == 0 ? c0 : c1) + h);
      }
    }
  }
  counts.information_states = static_cast<int>(infosets.size());
  // Root deal, three second-card deals, then betting nodes per deal.
  counts.tree_nodes = 1 + 3 + deals * static_cast<int>(open_bets.size() + terminal_bets.size());
  return counts;
}

inline int CountTicTacToePositions() {
  std::set<std::string> seen;
  const int lines[8][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6},
                           {1, 4, 7}, {2, 5, 8}, {0, 4, 8}, {2, 4, 6}};
  std::function<void(std::string&, char)> walk = [&](std::string& board, char mover) {
    if (!seen.insert(board).second) return;
    for (const auto& l : lines) {
      if (board[l[0]] != '.' && board[l[0]] == board[l[1]] && board[l[1]] == board[l[2]]) return;
    }
    for (int cell = 0; cell < 9; ++cell) {
      if (board[cell] != '.') continue;
      board[cell] = mover;
      walk(board, mover == 'x' ? 'o' : 'x');
      board[cell] = '.';
    }
  };
  std::string empty(9, '.');
  walk(empty, 'x');
  return static_cast<int>(seen.size());
}

// ---------------------------------------------------------------------------
// Policy evaluation and best responses by brute force.

// Expected returns by enumerating every terminal history with its probability.
inline std::vector<double> TerminalEnumerationReturns(const Game& game, const Policy& policy) {
  const int n = game.NumPlayers();
  std::vector<double> total(n, 0.0);
  std::function<void(const State&, double)> walk = [&](const State& s, double prob) {
    if (prob == 0.0) return;
    if (s.IsTerminal()) {
      const auto r = s.Returns();
      for (int i = 0; i < n; ++i) total[i] += prob * r[i];
      return;
    }
    if (s.IsChanceNode()) {
      for (const auto& o : s.ChanceOutcomes()) walk(s.Child(o.action), prob * o.probability);
      return;
    }
    if (s.IsSimultaneousNode()) {
      for (const auto& joint : JointActions(s)) {
        double p = prob;
        for (int i = 0; i < n; ++i) {
          double pi = 0.0;
          for (const auto& [a, q] : policy.ActionProbabilities(s, i)) {
            if (a == joint[i]) pi = q;
          }
          p *= pi;
        }
        walk(s.Child(std::span<const Action>(joint)), p);
      }
      return;
    }
    for (const auto& [a, q] : policy.ActionProbabilities(s, s.CurrentPlayer().index())) {
      walk(s.Child(a), prob * q);
    }
  };
  walk(game.NewInitialState(), 1.0);
  return total;
}

// The best value `responder` can reach with any pure strategy, by trying all
// of them. Returns the maximizing strategy's table through `best_table`.
inline double BruteForceBestResponse(const GameTree& tree, const PolicyTable& table, int responder,
                                     PolicyTable* best_table = nullptr) {
  std::vector<int> owned;
  for (std::size_t s = 0; s < tree.infosets().size(); ++s) {
    if (tree.infoset(static_cast<int>(s)).player == responder) owned.push_back(static_cast<int>(s));
  }
  std::vector<int> digit(owned.size(), 0);
  double best = -1e300;
  PolicyTable trial = table;
  while (true) {
    for (std::size_t k = 0; k < owned.size(); ++k) {
      auto& row = trial[owned[k]];
      std::fill(row.begin(), row.end(), 0.0);
      row[digit[k]] = 1.0;
    }
    const double value = tree.ExpectedValues(trial)[responder];
    if (value > best) {
      best = value;
      if (best_table != nullptr) *best_table = trial;
    }
    std::size_t k = 0;
    while (k < owned.size() && ++digit[k] == static_cast<int>(tree.infoset(owned[k]).actions.size())) {
      digit[k++] = 0;
    }
    if (k == owned.size()) break;
  }
  return best;
}

inline PolicyTable RandomTable(const GameTree& tree, std::uint64_t seed) {
  Rng rng(seed);
  PolicyTable table = tree.UniformTable();
  for (auto& row : table) {
    double total = 0.0;
    for (double& p : row) total += p = rng.Uniform() + 0.05;
    for (double& p : row) p /= total;
  }
  return table;
}

// Plain minimax without pruning or memoization; value for the player to move
// at the root of a two-player zero-sum perfect-information game.
inline double NaiveMinimax(const State& s, int root_player) {
  if (s.IsTerminal()) return s.Returns()[root_player];
  const bool maximizing = s.CurrentPlayer().index() == root_player;
  double best = maximizing ? -1e300 : 1e300;
  for (Action a : s.LegalActions()) {
    const double v = NaiveMinimax(s.Child(a), root_player);
    best = maximizing ? std::max(best, v) : std::min(best, v);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Graphviz DOT grammar for the exporter's subset: one statement per line.

inline std::vector<std::string> CheckDotGrammar(const std::string& dot) {
  static const std::string id = R"((?:[A-Za-z_][A-Za-z0-9_]*|"(?:[^"\\]|\\.)*"|-?[0-9.]+))";
  static const std::string attr = id + "=" + id;
  static const std::string attrs = R"(\[)" + attr + "(?:, " + attr + R"()*\])";
  static const std::regex header("digraph " + id + " \\{");
  static const std::regex default_stmt(" *(?:node|edge|graph) " + attrs + ";");
  static const std::regex node_stmt(" *(" + id + ")(?: " + attrs + ")?;");
  static const std::regex edge_stmt(" *(" + id + ") -> (" + id + ")(?: " + attrs + ")?;");
  static const std::regex subgraph(" *subgraph " + id + " \\{");
  static const std::regex assign(" *" + attr + ";");
  static const std::regex close(" *\\}");

  std::vector<std::string> errors;
  std::istringstream in(dot);
  std::string line;
  int depth = 0;
  int line_no = 0;
  std::set<std::string> declared;
  std::vector<std::pair<std::string, std::string>> edges;
  std::smatch m;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = "line " + std::to_string(line_no) + ": " + line;
    if (line_no == 1) {
      if (!std::regex_match(line, header)) errors.push_back("bad header " + where);
      depth = 1;
      continue;
    }
    if (depth == 0) {
      errors.push_back("text after closing brace " + where);
    } else if (std::regex_match(line, close)) {
      --depth;
    } else if (std::regex_match(line, subgraph)) {
      ++depth;
    } else if (std::regex_match(line, default_stmt) || std::regex_match(line, assign)) {
    } else if (std::regex_match(line, m, edge_stmt)) {
      edges.emplace_back(m[1], m[2]);
    } else if (std::regex_match(line, m, node_stmt)) {
      if (depth == 1) declared.insert(m[1]);
    } else {
      errors.push_back("unrecognized statement " + where);
    }
  }
  if (depth != 0) errors.push_back("unbalanced braces");
  for (const auto& [from, to] : edges) {
    if (!declared.count(from) || !declared.count(to)) {
      errors.push_back("edge between undeclared nodes " + from + " -> " + to);
      break;
    }
  }
  return errors;
}

// ---------------------------------------------------------------------------
// A one-decision bandit: action 0 pays 1, action 1 pays 0.

class BanditState : public StateImpl {
 public:
  PlayerRef CurrentPlayer() const override {
    return chosen_ < 0 ? PlayerRef::Decision(0) : PlayerRef::Terminal();
  }
  std::vector<Action> LegalActions(int) const override { return {0, 1}; }
  void ApplyActions(std::span<const Action> actions) override { chosen_ = static_cast<int>(actions[0]); }
  std::vector<double> Returns() const override { return {chosen_ == 0 ? 1.0 : 0.0}; }
  std::string InformationStateKey(int) const override { return "p0|" + std::to_string(chosen_); }
  std::string ToString() const override { return "bandit:" + std::to_string(chosen_); }
  std::unique_ptr<StateImpl> Clone() const override { return std::make_unique<BanditState>(*this); }

 private:
  int chosen_ = -1;
};

class BanditGame : public Game {
 public:
  BanditGame() : Game(Describe(), {}) {}

 protected:
  std::unique_ptr<StateImpl> NewInitialImpl() const override { return std::make_unique<BanditState>(); }

 private:
  static GameDescriptor Describe() {
    GameDescriptor d;
    d.short_name = "bandit";
    d.num_players = 1;
    d.utility_min = 0.0;
    d.utility_max = 1.0;
    d.max_game_length = 1;
    d.utility_class = UtilityClass::kGeneralSum;
    d.num_distinct_actions = 2;
    return d;
  }
};

// ---------------------------------------------------------------------------
// CLI driver.

struct CliOutcome {
  int code = 0;
  std::string out;
  std::string err;
};

inline CliOutcome RunCli(const std::vector<std::string>& args, const std::string& input = "") {
  std::ostringstream out, err;
  std::istringstream in(input);
  CliOutcome outcome;
  outcome.code = cli::Run(args, out, err, in);
  outcome.out = out.str();
  outcome.err = err.str();
  return outcome;
}

}  // namespace gamelab::oracle

#endif  // GAMELAB_TESTS_ORACLES_HPP_
