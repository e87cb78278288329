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

// The gamelab command-line interface. Run() takes the arguments after the
// program name and explicit streams so it can be driven from tests.

#ifndef GAMELAB_CLI_HPP_
#define GAMELAB_CLI_HPP_

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gamelab/analysis.hpp"
#include "gamelab/br_iter.hpp"
#include "gamelab/egt.hpp"
#include "gamelab/games/registry.hpp"
#include "gamelab/io.hpp"
#include "gamelab/regret.hpp"
#include "gamelab/rl.hpp"
#include "gamelab/search.hpp"
#include "gamelab/viz.hpp"

namespace gamelab {
namespace cli {

// Seat controller for `play`.
struct Agent {
  std::string kind;  // human, random, mcts, policy
  std::shared_ptr<TabularPolicy> policy;
};

inline Agent ParseAgent(const std::string& spec) {
  Agent agent;
  if (spec == "human" || spec == "random" || spec == "mcts") {
    agent.kind = spec;
  } else if (spec.rfind("policy:", 0) == 0) {
    agent.kind = "policy";
    std::istringstream in(ReadFile(spec.substr(7)));
    agent.policy = std::make_shared<TabularPolicy>(ReadPolicy(in));
  } else {
    Fail(ErrorKind::kInvalidArgument,
         "unknown agent '" + spec + "' (human, random, mcts or policy:FILE)");
  }
  return agent;
}

inline Action AskHuman(const State& state, std::ostream& out, std::istream& in) {
  const std::vector<Action> legal = state.LegalActions();
  while (true) {
    out << "legal actions:\n";
    for (std::size_t i = 0; i < legal.size(); ++i) {
      out << "  [" << i << "] " << legal[i] << " (" << state.ActionToString(state.CurrentPlayer(), legal[i])
          << ")\n";
    }
    out << "choose index: " << std::flush;
    std::string line;
    if (!std::getline(in, line)) Fail(ErrorKind::kEndOfInput, "input ended before a choice");
    std::size_t used = 0;
    long long choice = -1;
    try {
      choice = std::stoll(line, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used > 0 && used == line.size() && choice >= 0 &&
        choice < static_cast<long long>(legal.size())) {
      return legal[choice];
    }
    out << "invalid choice '" << line << "'\n";
  }
}

// Plays one game and writes the transcript. Simultaneous games are played on
// their turn-based view.
inline std::vector<double> PlayGame(std::shared_ptr<const Game> game,
                                    const std::vector<Agent>& agents, std::uint64_t seed,
                                    int mcts_simulations, std::ostream& out, std::istream& in) {
  game = AsSequential(std::move(game));
  if (static_cast<int>(agents.size()) != game->NumPlayers()) {
    Fail(ErrorKind::kInvalidArgument, "need one agent per player");
  }
  Rng rng(seed);
  out << "# seed=" << seed << "\n";
  out << "game: " << game->ToString() << "\n";
  State state = game->NewInitialState();
  while (!state.IsTerminal()) {
    out << "state:\n" << state.ToString() << "\n";
    const PlayerRef current = state.CurrentPlayer();
    Action action;
    if (current.is_chance()) {
      const auto outcomes = state.ChanceOutcomes();
      std::vector<double> weights;
      for (const auto& o : outcomes) weights.push_back(o.probability);
      action = outcomes[rng.Sample(weights)].action;
      out << "chance: " << action << " (" << state.ActionToString(current, action) << ")\n";
    } else {
      const int p = current.index();
      const Agent& agent = agents[p];
      if (agent.kind == "human") {
        action = AskHuman(state, out, in);
      } else if (agent.kind == "random") {
        const auto legal = state.LegalActions();
        action = legal[rng.Below(legal.size())];
      } else if (agent.kind == "mcts") {
        MctsConfig config;
        config.num_simulations = mcts_simulations;
        config.seed = rng.engine()();
        action = *MctsSearch(state, config).search.best_action;
      } else {
        action = SampleAction(agent.policy->ActionProbabilities(state, p), rng);
      }
      out << "player " << p << " (" << agent.kind << "): " << action << " ("
          << state.ActionToString(current, action) << ")\n";
    }
    state = state.Child(action);
  }
  out << "final state:\n" << state.ToString() << "\n";
  const auto returns = state.Returns();
  out << "returns:";
  for (double r : returns) out << " " << FormatDouble(r);
  out << "\n";
  return returns;
}

inline std::string Usage() {
  return "usage: gamelab <subcommand> [options]\n"
         "subcommands:\n"
         "  list              registered games\n"
         "  play              play a game between human, random, mcts or policy agents\n"
         "  solve             cfr, cfrplus, mccfr-outcome, mccfr-external, xfp or ed\n"
         "  search            minimax, alphabeta, expectiminimax or mcts from a state\n"
         "  qlearn            tabular Q-learning with independent learners\n"
         "  nashconv          NashConv of a policy file\n"
         "  expected-returns  exact expected returns of a policy file\n"
         "  enumerate         enumerate states\n"
         "  tree              Graphviz DOT export of the game tree\n"
         "  alpharank         alpha-Rank of a payoff table\n"
         "  phase-portrait    replicator-dynamics samples of a payoff table\n"
         "  policy            export or import policy files\n"
         "run 'gamelab <subcommand> --help' for options\n";
}

inline void PrintGames(std::ostream& out) {
  out << "registered games:\n";
  for (const auto& name : RegisteredGames()) out << "  " << name << "\n";
}

inline TabularPolicy LoadPolicyFile(const std::string& path) {
  std::istringstream in(ReadFile(path));
  return ReadPolicy(in);
}

// The resolved configuration goes next to the first output, if any.
inline void WriteConfig(const RunConfig& config) {
  if (config.outputs.empty()) return;
  AtomicWrite(ConfigPathFor(config.outputs.begin()->second), config.Serialize());
}

struct SolveOptions {
  std::string game;
  std::string algorithm;
  int iterations = 1000;
  std::uint64_t seed = 0;
  int report_every = 0;
  std::string out;
  std::string trace;
  double epsilon = 0.6;
  double learning_rate = 0.1;
  std::string lr_schedule = "constant";
  std::string ed_values = "conditional";
  bool alternating = false;
};

inline int Solve(const SolveOptions& o, std::ostream& out) {
  const auto game = LoadGame(o.game);
  const auto tree = std::make_shared<const GameTree>(game);
  if (o.iterations < 1) Fail(ErrorKind::kInvalidArgument, "--iterations must be >= 1");
  const int every = o.report_every > 0 ? o.report_every : o.iterations;

  std::unique_ptr<CfrSolver> cfr;
  std::unique_ptr<XfpSolver> xfp;
  std::unique_ptr<EdSolver> ed;
  RunConfig config;
  config.subcommand = "solve";
  config.game = game->ToString();
  config.algorithm = o.algorithm;
  config.seed = o.seed;
  config.report_every = every;
  config.hyperparameters["iterations"] = std::to_string(o.iterations);
  if (o.algorithm == "cfr") {
    cfr = std::make_unique<CfrSolver>(tree, CfrConfig::Vanilla());
  } else if (o.algorithm == "cfrplus") {
    cfr = std::make_unique<CfrSolver>(tree, CfrConfig::Plus());
  } else if (o.algorithm == "mccfr-outcome") {
    cfr = std::make_unique<CfrSolver>(tree, CfrConfig::OutcomeSampling(o.seed, o.epsilon));
    config.hyperparameters["epsilon"] = FormatDouble(o.epsilon);
  } else if (o.algorithm == "mccfr-external") {
    cfr = std::make_unique<CfrSolver>(tree, CfrConfig::ExternalSampling(o.seed));
  } else if (o.algorithm == "xfp") {
    xfp = std::make_unique<XfpSolver>(tree, o.alternating);
    config.hyperparameters["alternating"] = o.alternating ? "true" : "false";
  } else if (o.algorithm == "ed") {
    if (o.lr_schedule != "constant" && o.lr_schedule != "inv-sqrt") {
      Fail(ErrorKind::kInvalidArgument, "--lr-schedule must be constant or inv-sqrt");
    }
    if (o.ed_values != "conditional" && o.ed_values != "counterfactual") {
      Fail(ErrorKind::kInvalidArgument, "--ed-values must be conditional or counterfactual");
    }
    ed = std::make_unique<EdSolver>(
        tree, o.learning_rate,
        o.lr_schedule == "constant" ? LearningRateSchedule::kConstant
                                    : LearningRateSchedule::kInverseSqrt,
        o.ed_values == "conditional" ? EdNormalization::kConditional
                                     : EdNormalization::kCounterfactual);
    config.hyperparameters["learning_rate"] = FormatDouble(o.learning_rate);
    config.hyperparameters["lr_schedule"] = o.lr_schedule;
    config.hyperparameters["ed_values"] = o.ed_values;
  } else {
    Fail(ErrorKind::kInvalidArgument, "unknown algorithm '" + o.algorithm + "'");
  }
  if (!o.out.empty()) config.outputs["policy"] = o.out;
  if (!o.trace.empty()) config.outputs["trace"] = o.trace;

  ConvergenceTrace trace(ed ? "current" : "average");
  out << "# seed=" << o.seed << "\n" << trace.Preamble();
  Stopwatch clock;
  PolicyTable evaluated;
  for (int t = 1; t <= o.iterations; ++t) {
    if (cfr) cfr->Iterate();
    if (xfp) xfp->Iterate();
    if (ed) ed->Iterate();
    if (t % every == 0 || t == o.iterations) {
      evaluated = cfr ? cfr->AverageTable() : xfp ? xfp->AverageTable() : ed->CurrentTable();
      const double seconds = clock.Seconds();
      const double nc = NashConvOnTree(*tree, evaluated).total;
      out << ConvergenceTrace::FormatRow(trace.Add(t, "nashconv", nc, seconds)) << "\n"
          << std::flush;
    }
  }
  if (!o.out.empty()) {
    std::ostringstream text;
    WritePolicy(text, tree->ToTabularPolicy(evaluated));
    AtomicWrite(o.out, text.str());
  }
  if (!o.trace.empty()) AtomicWrite(o.trace, trace.ToCsv());
  WriteConfig(config);
  return 0;
}

inline State ParseStateArg(const Game& game, const std::string& history) {
  return StateFromHistoryString(game, history);
}

inline void PrintCounts(const Game& game, std::ostream& out) {
  std::size_t histories = 0, terminals = 0, decisions = 0, chance = 0;
  WalkHistories(game.NewInitialState(), [&](const State& s) {
    ++histories;
    if (s.IsTerminal()) ++terminals;
    else if (s.IsChanceNode()) ++chance;
    else ++decisions;
  });
  StateEnumerationOptions all;
  all.include_chance = all.include_terminals = true;
  const std::size_t distinct = GetAllStates(game, all).size();
  std::set<std::string> infosets;
  WalkHistories(game.NewInitialState(), [&](const State& s) {
    const PlayerRef p = s.CurrentPlayer();
    if (p.is_decision()) infosets.insert(s.InformationStateKey(p.index()));
    if (p.is_simultaneous()) {
      for (int i = 0; i < s.NumPlayers(); ++i) infosets.insert(s.InformationStateKey(i));
    }
  });
  out << "histories " << histories << "\n"
      << "terminal_histories " << terminals << "\n"
      << "decision_histories " << decisions << "\n"
      << "chance_histories " << chance << "\n"
      << "distinct_states " << distinct << "\n"
      << "information_states " << infosets.size() << "\n";
}

// Runs the CLI. Returns the process exit code: 0 success, 1 runtime error,
// 2 usage error.
inline int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               std::istream& in) {
  if (args.empty()) {
    PrintGames(out);
    out << Usage();
    return 0;
  }
  CLI::App app{"gamelab: computational game theory toolkit", "gamelab"};
  app.require_subcommand(1);
  app.footer("Game strings take parameters, e.g. \"goofspiel(num_cards=3)\".");

  auto* list = app.add_subcommand("list", "List registered games");

  std::string game = "tic_tac_toe";
  auto add_game = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--game", game, "Game string, e.g. kuhn_poker or pig(target_score=10)");
    if (required) opt->required();
  };

  auto* play = app.add_subcommand("play", "Play one game");
  std::string p0 = "random", p1 = "random";
  std::uint64_t seed = 0;
  int sims = 1000;
  add_game(play, true);
  play->add_option("--p0", p0, "Agent for player 0: human, random, mcts or policy:FILE");
  play->add_option("--p1", p1, "Agent for player 1");
  play->add_option("--seed", seed, "Random seed");
  play->add_option("--sims", sims, "MCTS simulations per move");

  auto* solve = app.add_subcommand("solve", "Run an equilibrium solver");
  SolveOptions so;
  solve->add_option("--game", so.game, "Game string")->required();
  solve->add_option("--algorithm", so.algorithm,
                    "cfr, cfrplus, mccfr-outcome, mccfr-external, xfp or ed")
      ->required();
  solve->add_option("--iterations", so.iterations, "Iterations");
  solve->add_option("--seed", so.seed, "Random seed for sampling variants");
  solve->add_option("--report-every", so.report_every, "Trace interval (default: end only)");
  solve->add_option("--out", so.out, "Policy output file");
  solve->add_option("--trace", so.trace, "Trace CSV output file");
  solve->add_option("--epsilon", so.epsilon, "Outcome-sampling exploration");
  solve->add_option("--lr", so.learning_rate, "ED learning rate");
  solve->add_option("--lr-schedule", so.lr_schedule, "ED schedule: constant or inv-sqrt");
  solve->add_option("--ed-values", so.ed_values, "ED step values: conditional or counterfactual");
  solve->add_flag("--alternating", so.alternating, "XFP: alternate the players' updates");

  auto* search = app.add_subcommand("search", "Search from a state");
  std::string algorithm = "alphabeta", history;
  int depth = -1;
  double uct_c = -1.0;
  add_game(search, true);
  search->add_option("--algorithm", algorithm, "minimax, alphabeta, expectiminimax or mcts");
  search->add_option("--state", history, "History of action ids, e.g. \"0 4 1\"");
  search->add_option("--depth", depth, "Depth limit (-1: unlimited)");
  search->add_option("--sims", sims, "MCTS simulations");
  search->add_option("--seed", seed, "MCTS seed");
  search->add_option("--uct-c", uct_c, "UCT exploration constant (default: scaled to utilities)");

  auto* qlearn = app.add_subcommand("qlearn", "Tabular Q-learning");
  QLearnConfig qc;
  int q_report = 0;
  std::string q_trace, q_out;
  add_game(qlearn, true);
  qlearn->add_option("--episodes", qc.episodes, "Episodes");
  qlearn->add_option("--alpha", qc.alpha, "Step size");
  qlearn->add_option("--gamma", qc.gamma, "Discount");
  qlearn->add_option("--epsilon", qc.epsilon, "Exploration");
  qlearn->add_option("--seed", qc.seed, "Random seed");
  qlearn->add_option("--report-every", q_report, "Trace interval in episodes");
  qlearn->add_option("--trace", q_trace, "Trace CSV output file");
  qlearn->add_option("--out", q_out, "Greedy policy output file");

  std::string policy_path;
  auto* nashconv = app.add_subcommand("nashconv", "NashConv of a policy");
  add_game(nashconv, true);
  nashconv->add_option("--policy", policy_path, "Policy file (default: uniform random)");

  auto* expected = app.add_subcommand("expected-returns", "Expected returns of a policy");
  add_game(expected, true);
  expected->add_option("--policy", policy_path, "Policy file (default: uniform random)");

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate states");
  bool counts = false;
  add_game(enumerate, true);
  enumerate->add_flag("--counts", counts, "Print counts instead of state keys");

  auto* tree_cmd = app.add_subcommand("tree", "Export the game tree as DOT");
  bool no_clusters = false;
  std::string out_path;
  add_game(tree_cmd, true);
  tree_cmd->add_option("--depth", depth, "Maximum depth (0 or -1: unlimited)");
  tree_cmd->add_flag("--no-clusters", no_clusters, "Do not group information states");
  tree_cmd->add_option("--out", out_path, "Output file (default: stdout)");

  auto* alpharank = app.add_subcommand("alpharank", "alpha-Rank of a payoff table");
  std::string payoffs;
  double alpha = 1.0;
  std::vector<double> sweep;
  int pop_size = 50;
  alpharank->add_option("--payoffs", payoffs, "Payoff table or HPT file")->required();
  auto* alpha_opt = alpharank->add_option("--alpha", alpha, "Ranking intensity");
  alpharank->add_option("--alpha-sweep", sweep, "lo hi steps: log-spaced sweep")
      ->expected(3)
      ->excludes(alpha_opt);
  alpharank->add_option("--pop-size", pop_size, "Population size m");
  alpharank->add_option("--out", out_path, "CSV output file (alpha,profile,mass)");

  auto* portrait = app.add_subcommand("phase-portrait", "Replicator dynamics samples");
  int resolution = 10;
  portrait->add_option("--payoffs", payoffs, "Payoff table file")->required();
  portrait->add_option("--resolution", resolution, "Grid resolution");
  portrait->add_option("--out", out_path, "CSV output file (default: stdout)");

  auto* policy = app.add_subcommand("policy", "Policy files");
  policy->require_subcommand(1);
  auto* policy_export = policy->add_subcommand("export", "Write the uniform random policy");
  add_game(policy_export, true);
  policy_export->add_option("--out", out_path, "Output file")->required();
  auto* policy_import = policy->add_subcommand("import", "Validate a policy file");
  add_game(policy_import, true);
  policy_import->add_option("--policy", policy_path, "Policy file")->required();
  policy_import->add_option("--out", out_path, "Write the canonical form here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << Usage();
    return 2;
  }

  try {
    if (*list) {
      for (const auto& name : RegisteredGames()) out << name << "\n";
    } else if (*play) {
      const auto g = LoadGame(game);
      std::vector<Agent> agents{ParseAgent(p0), ParseAgent(p1)};
      agents.resize(g->NumPlayers(), ParseAgent("random"));
      PlayGame(g, agents, seed, sims, out, in);
    } else if (*solve) {
      return Solve(so, out);
    } else if (*search) {
      const auto g = LoadGame(game);
      const State state = ParseStateArg(*g, history);
      SearchResult result;
      if (algorithm == "minimax") {
        result = Minimax(state, depth);
      } else if (algorithm == "alphabeta") {
        result = AlphaBeta(state, depth);
      } else if (algorithm == "expectiminimax") {
        result = Expectiminimax(state, depth);
      } else if (algorithm == "mcts") {
        MctsConfig config;
        config.num_simulations = sims;
        config.seed = seed;
        if (uct_c >= 0.0) config.uct_c = uct_c;
        out << "# seed=" << seed << "\n";
        result = MctsSearch(state, config).search;
      } else {
        Fail(ErrorKind::kInvalidArgument, "unknown search algorithm '" + algorithm + "'");
      }
      if (result.best_action) {
        out << "action " << *result.best_action << " ("
            << state.ActionToString(state.CurrentPlayer(), *result.best_action) << ")\n";
      } else {
        out << "action none\n";
      }
      out << "value " << FormatDouble(result.value) << "\n";
      out << "nodes " << result.nodes_visited << "\n";
    } else if (*qlearn) {
      const auto g = LoadGame(game);
      const int every = q_report > 0 ? q_report : std::max(qc.episodes, 1);
      out << "# seed=" << qc.seed << "\n";
      ConvergenceTrace trace("current");
      out << trace.Preamble();
      Stopwatch clock;
      double window = 0.0;
      const QLearnResult result =
          QLearningRun(*g, qc, {}, [&](int episode, const QLearnResult& partial) {
            window += partial.returns.back()[0];
            if (episode % every == 0 || episode == qc.episodes) {
              const int span = (episode - 1) % every + 1;
              out << ConvergenceTrace::FormatRow(
                         trace.Add(episode, "mean_return", window / span, clock.Seconds()))
                  << "\n";
              window = 0.0;
            }
          });
      RunConfig config{"qlearn", g->ToString(), "q-learning", qc.seed, every, {}, {}};
      config.hyperparameters = {{"alpha", FormatDouble(qc.alpha)},
                                {"gamma", FormatDouble(qc.gamma)},
                                {"epsilon", FormatDouble(qc.epsilon)},
                                {"episodes", std::to_string(qc.episodes)}};
      if (!q_trace.empty()) {
        config.outputs["trace"] = q_trace;
        AtomicWrite(q_trace, trace.ToCsv());
      }
      if (!q_out.empty()) {
        config.outputs["policy"] = q_out;
        TabularPolicy greedy;
        for (const auto& table : result.tables) {
          for (const auto& [key, row] : table.rows()) {
            std::vector<Action> legal;
            std::vector<double> q;
            for (const auto& [a, v] : row) {
              legal.push_back(a);
              q.push_back(v);
            }
            greedy.Set(key, EpsilonGreedy(q, legal, 0.0));
          }
        }
        std::ostringstream text;
        WritePolicy(text, greedy);
        AtomicWrite(q_out, text.str());
      }
      WriteConfig(config);
    } else if (*nashconv || *expected) {
      const auto g = LoadGame(game);
      std::unique_ptr<Policy> pol;
      if (policy_path.empty()) {
        pol = std::make_unique<UniformPolicy>();
      } else {
        pol = std::make_unique<TabularPolicy>(LoadPolicyFile(policy_path));
      }
      if (*nashconv) {
        const auto result = NashConv(g, *pol);
        out << FormatDouble(result.total) << "\n";
        for (double d : result.deltas) out << FormatDouble(d) << "\n";
      } else {
        for (double v : ExpectedReturns(g->NewInitialState(), *pol)) {
          out << FormatDouble(v) << "\n";
        }
      }
    } else if (*enumerate) {
      const auto g = LoadGame(game);
      if (counts) {
        PrintCounts(*g, out);
      } else {
        const StateMap states = GetAllStates(*g);
        for (const auto& key : states.keys()) out << EscapeKey(key) << "\n";
      }
    } else if (*tree_cmd) {
      const auto g = LoadGame(game);
      DotExportConfig config;
      config.max_depth = std::max(depth, 0);
      config.group_information_states = !no_clusters;
      const std::string dot = ExportDot(*g, config);
      if (out_path.empty()) {
        out << dot;
      } else {
        AtomicWrite(out_path, dot);
      }
    } else if (*alpharank) {
      std::istringstream text(ReadFile(payoffs));
      const PayoffTable table = ReadPayoffTable(text);
      const std::vector<double> grid =
          sweep.empty() ? std::vector<double>{alpha}
                        : LogSpace(sweep[0], sweep[1], static_cast<int>(sweep[2]));
      const AlphaSweepResult result = AlphaRankSweep(table, grid, pop_size);
      const AlphaRankResult& last = result.results.back();
      out << "ranking at alpha=" << FormatDouble(grid.back()) << ":\n";
      for (std::size_t r = 0; r < last.ranking.size(); ++r) {
        out << r + 1 << " " << last.Label(last.ranking[r]) << " "
            << FormatDouble(last.stationary(last.ranking[r])) << "\n";
      }
      if (grid.size() > 1) out << "stabilized " << (result.stabilized ? "yes" : "no") << "\n";
      if (!out_path.empty()) {
        std::ostringstream csv;
        WriteAlphaSweepCsv(csv, result);
        AtomicWrite(out_path, csv.str());
        RunConfig config{"alpharank", "", "alpharank", 0, 0, {}, {{"csv", out_path}}};
        config.hyperparameters = {{"payoffs", payoffs}, {"pop_size", std::to_string(pop_size)}};
        if (sweep.empty()) {
          config.hyperparameters["alpha"] = FormatDouble(alpha);
        } else {
          config.hyperparameters["alpha_sweep"] = FormatDouble(sweep[0]) + " " +
                                                  FormatDouble(sweep[1]) + " " +
                                                  FormatDouble(sweep[2]);
        }
        WriteConfig(config);
      }
    } else if (*portrait) {
      std::istringstream text(ReadFile(payoffs));
      const PhasePortrait grid = PhasePortraitGrid(ReadPayoffTable(text), resolution);
      std::ostringstream csv;
      WritePhasePortraitCsv(csv, grid);
      if (out_path.empty()) {
        out << csv.str();
      } else {
        AtomicWrite(out_path, csv.str());
      }
    } else if (*policy_export) {
      const auto g = LoadGame(game);
      std::ostringstream text;
      WritePolicy(text, UniformRandomPolicy(*g));
      AtomicWrite(out_path, text.str());
    } else if (*policy_import) {
      const auto g = LoadGame(game);
      const TabularPolicy pol = LoadPolicyFile(policy_path);
      const auto problems = CheckPolicyAgainstGame(*g, pol);
      if (!problems.empty()) Fail(ErrorKind::kInvalidArgument, problems.front());
      out << "entries " << pol.size() << "\n";
      if (!out_path.empty()) {
        std::ostringstream text;
        WritePolicy(text, pol);
        AtomicWrite(out_path, text.str());
      }
    }
  } catch (const std::exception& e) {
    std::string message = e.what();
    std::replace(message.begin(), message.end(), '\n', ' ');
    err << "error: " << message << "\n";
    return 1;
  }
  return 0;
}

}  // namespace cli
}  // namespace gamelab

#endif  // GAMELAB_CLI_HPP_
