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

// Registry of shipped games, constructed by short name or by a game string
// such as "goofspiel(num_cards=3)" or "turn_based(game=matrix_rps)".

#ifndef GAMELAB_GAMES_REGISTRY_HPP_
#define GAMELAB_GAMES_REGISTRY_HPP_

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gamelab/games/goofspiel.hpp"
#include "gamelab/games/kuhn_poker.hpp"
#include "gamelab/games/leduc_poker.hpp"
#include "gamelab/games/matrix.hpp"
#include "gamelab/games/pig.hpp"
#include "gamelab/games/tic_tac_toe.hpp"
#include "gamelab/games/turn_based.hpp"
#include "gamelab/kernel.hpp"

namespace gamelab {

std::shared_ptr<const Game> LoadGame(const std::string& game_string);

namespace registry_detail {

using Factory = std::function<std::shared_ptr<const Game>(const GameParams&)>;

inline std::shared_ptr<const Game> NoParams(const std::string& name, const GameParams& params,
                                            std::shared_ptr<const Game> (*make)()) {
  CheckParamKeys(params, name, {});
  return make();
}

inline const std::map<std::string, Factory>& Factories() {
  static const auto* factories = new std::map<std::string, Factory>{
      {"matrix_rps", [](const GameParams& p) { return NoParams("matrix_rps", p, MakeRockPaperScissors); }},
      {"matrix_mp", [](const GameParams& p) { return NoParams("matrix_mp", p, MakeMatchingPennies); }},
      {"matrix_pd", [](const GameParams& p) { return NoParams("matrix_pd", p, MakePrisonersDilemma); }},
      {"matrix_sh", [](const GameParams& p) { return NoParams("matrix_sh", p, MakeStagHunt); }},
      {"kuhn_poker",
       [](const GameParams& p) -> std::shared_ptr<const Game> {
         return std::make_shared<kuhn_poker::KuhnGame>(p);
       }},
      {"leduc_poker",
       [](const GameParams& p) -> std::shared_ptr<const Game> {
         return std::make_shared<leduc_poker::LeducGame>(p);
       }},
      {"tic_tac_toe",
       [](const GameParams& p) -> std::shared_ptr<const Game> {
         return std::make_shared<tic_tac_toe::TicTacToeGame>(p);
       }},
      {"goofspiel",
       [](const GameParams& p) -> std::shared_ptr<const Game> {
         return std::make_shared<goofspiel::GoofspielGame>(p);
       }},
      {"pig",
       [](const GameParams& p) -> std::shared_ptr<const Game> {
         return std::make_shared<pig::PigGame>(p);
       }},
      {"turn_based",
       [](const GameParams& p) -> std::shared_ptr<const Game> {
         CheckParamKeys(p, "turn_based", {"game"});
         auto it = p.find("game");
         if (it == p.end()) Fail(ErrorKind::kInvalidParameter, "turn_based requires game=<name>");
         return ToTurnBased(LoadGame(it->second));
       }},
  };
  return *factories;
}

inline std::string Trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

}  // namespace registry_detail

inline std::vector<std::string> RegisteredGames() {
  std::vector<std::string> names;
  for (const auto& [name, factory] : registry_detail::Factories()) names.push_back(name);
  return names;
}

inline std::shared_ptr<const Game> MakeGame(const std::string& short_name,
                                            const GameParams& params = {}) {
  const auto& factories = registry_detail::Factories();
  auto it = factories.find(short_name);
  if (it == factories.end()) Fail(ErrorKind::kUnknownGame, "'" + short_name + "'");
  return it->second(params);
}

// Parses "name" or "name(k=v,k2=v2)"; values may themselves be game strings.
inline std::shared_ptr<const Game> LoadGame(const std::string& game_string) {
  const std::string text = registry_detail::Trim(game_string);
  const auto open = text.find('(');
  if (open == std::string::npos) return MakeGame(text);
  if (text.back() != ')') Fail(ErrorKind::kParseError, "unbalanced parentheses in '" + text + "'");
  const std::string name = registry_detail::Trim(text.substr(0, open));
  const std::string body = text.substr(open + 1, text.size() - open - 2);
  GameParams params;
  int depth = 0;
  std::string item;
  auto flush = [&]() {
    const std::string entry = registry_detail::Trim(item);
    item.clear();
    if (entry.empty()) return;
    const auto eq = entry.find('=');
    if (eq == std::string::npos) Fail(ErrorKind::kParseError, "expected key=value, got '" + entry + "'");
    params[registry_detail::Trim(entry.substr(0, eq))] = registry_detail::Trim(entry.substr(eq + 1));
  };
  for (char c : body) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      flush();
    } else {
      item += c;
    }
  }
  if (depth != 0) Fail(ErrorKind::kParseError, "unbalanced parentheses in '" + text + "'");
  flush();
  return MakeGame(name, params);
}

}  // namespace gamelab

#endif  // GAMELAB_GAMES_REGISTRY_HPP_
