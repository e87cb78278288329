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

// Graphviz DOT export of game trees. Edges are colored by the acting player,
// terminal nodes are diamonds labeled with player 0's utility, and the
// histories of one information state can share a dotted cluster.

#ifndef GAMELAB_VIZ_HPP_
#define GAMELAB_VIZ_HPP_

#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gamelab/kernel.hpp"
#include "gamelab/policy.hpp"

namespace gamelab {

struct DotExportConfig {
  int max_depth = 0;  // 0 exports the whole tree
  bool group_information_states = true;
  std::string chance_color = "black";
  std::string simultaneous_color = "darkgreen";
  // Player i uses player_colors[i % size].
  std::vector<std::string> player_colors = {"blue", "red", "orange", "purple", "brown", "cyan4"};
  std::size_t budget = kDefaultEnumerationBudget;
};

inline std::uint64_t Fnv1a64(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

inline std::string DotQuote(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (c == '\n') {
      out += "\\n";
    } else if (c != '\r') {
      out += c;
    }
  }
  return out + "\"";
}

inline std::string ExportDot(const Game& game, const DotExportConfig& config = {}) {
  std::ostringstream nodes, edges;
  std::map<std::string, std::vector<std::string>> infosets;  // key -> node ids
  std::set<std::string> ids;
  std::size_t count = 0;

  auto node_id = [&](const State& s) {
    char buffer[20];
    std::snprintf(buffer, sizeof(buffer), "h%016llx",
                  static_cast<unsigned long long>(Fnv1a64(s.HistoryString())));
    return std::string(buffer);
  };
  auto color_of = [&](PlayerRef p) {
    if (p.is_chance()) return config.chance_color;
    if (p.is_simultaneous()) return config.simultaneous_color;
    return config.player_colors[p.index() % config.player_colors.size()];
  };

  std::function<void(const State&, int)> visit = [&](const State& s, int depth) {
    if (++count > config.budget) {
      Fail(ErrorKind::kBudgetExceeded, "more than " + std::to_string(config.budget) + " histories");
    }
    const std::string id = node_id(s);
    if (!ids.insert(id).second) Fail(ErrorKind::kInvalidArgument, "history hash collision at " + id);
    const PlayerRef current = s.CurrentPlayer();
    if (current.is_terminal()) {
      nodes << "  " << id << " [shape=diamond, label=" << DotQuote(FormatDouble(s.Returns()[0]))
            << "];\n";
      return;
    }
    if (current.is_chance()) {
      nodes << "  " << id << " [shape=circle, label=\"chance\"];\n";
    } else if (current.is_simultaneous()) {
      nodes << "  " << id << " [shape=box, label=" << DotQuote(s.ToString()) << "];\n";
    } else {
      const std::string key = s.InformationStateKey(current.index());
      nodes << "  " << id << " [shape=box, label=" << DotQuote(key) << "];\n";
      infosets[key].push_back(id);
    }
    if (config.max_depth > 0 && depth >= config.max_depth) return;
    for (const auto& [joint, child] : Children(s)) {
      std::string label;
      if (current.is_simultaneous()) {
        for (std::size_t p = 0; p < joint.size(); ++p) {
          label += (p ? ":" : "") + s.ActionToString(PlayerRef::Decision(static_cast<int>(p)),
                                                     joint[p]);
        }
      } else {
        label = s.ActionToString(current, joint[0]);
      }
      edges << "  " << id << " -> " << node_id(child) << " [color=" << color_of(current)
            << ", label=" << DotQuote(label) << "];\n";
      visit(child, depth + 1);
    }
  };
  visit(game.NewInitialState(), 0);

  std::ostringstream out;
  out << "digraph " << DotQuote(game.ToString()) << " {\n";
  out << "  node [fontsize=10];\n";
  out << "  edge [fontsize=9];\n";
  out << nodes.str() << edges.str();
  if (config.group_information_states) {
    int cluster = 0;
    for (const auto& [key, members] : infosets) {
      if (members.size() < 2) continue;
      out << "  subgraph cluster_" << cluster++ << " {\n";
      out << "    style=dotted;\n";
      out << "    label=" << DotQuote(key) << ";\n";
      for (const auto& id : members) out << "    " << id << ";\n";
      out << "  }\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace gamelab

#endif  // GAMELAB_VIZ_HPP_
