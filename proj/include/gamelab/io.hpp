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

// Run artifacts: atomic file writes, convergence traces and resolved run
// configurations.

#ifndef GAMELAB_IO_HPP_
#define GAMELAB_IO_HPP_

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gamelab/error.hpp"
#include "gamelab/policy.hpp"

namespace gamelab {

// Writes `content` to a temporary sibling of `path` and renames it into
// place, so readers never see a partial file at `path`.
inline void AtomicWrite(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) Fail(ErrorKind::kIoError, "cannot open " + temp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) Fail(ErrorKind::kIoError, "failed writing " + temp.string());
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    fs::remove(temp, ec);
    Fail(ErrorKind::kIoError, "cannot move " + temp.string() + " to " + path);
  }
}

inline std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kIoError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct TraceRow {
  long long iteration = 0;
  std::string metric;
  double value = 0.0;
  double seconds = 0.0;
};

// Rows of (iteration, metric, value, elapsed seconds). The CSV starts with a
// comment naming the evaluated policy (average or current).
class ConvergenceTrace {
 public:
  static constexpr const char* kHeader = "iteration,metric,value,seconds";

  explicit ConvergenceTrace(std::string evaluated_policy = "average")
      : evaluated_policy_(std::move(evaluated_policy)) {}

  const TraceRow& Add(long long iteration, const std::string& metric, double value, double seconds) {
    if (metric != "nashconv" && metric != "exploitability" && metric != "mean_return") {
      Fail(ErrorKind::kInvalidArgument, "unknown trace metric '" + metric + "'");
    }
    if (!rows_.empty() && iteration <= rows_.back().iteration) {
      Fail(ErrorKind::kInvalidArgument, "trace iterations must increase");
    }
    rows_.push_back({iteration, metric, value, seconds});
    return rows_.back();
  }

  static std::string FormatRow(const TraceRow& row) {
    return std::to_string(row.iteration) + "," + row.metric + "," + FormatDouble(row.value) + "," +
           FormatDouble(row.seconds);
  }

  std::string Preamble() const {
    return "# evaluated_policy=" + evaluated_policy_ + "\n" + kHeader + "\n";
  }

  std::string ToCsv() const {
    std::string csv = Preamble();
    for (const auto& row : rows_) csv += FormatRow(row) + "\n";
    return csv;
  }

  static ConvergenceTrace FromCsv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string policy = "average";
    bool header = false;
    ConvergenceTrace trace;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (line.rfind("# evaluated_policy=", 0) == 0) {
        policy = line.substr(19);
        continue;
      }
      if (!header) {
        if (line != kHeader) Fail(ErrorKind::kParseError, "bad trace header '" + line + "'");
        header = true;
        continue;
      }
      std::vector<std::string> fields;
      std::istringstream fs(line);
      std::string f;
      while (std::getline(fs, f, ',')) fields.push_back(f);
      if (fields.size() != 4) Fail(ErrorKind::kParseError, "bad trace row '" + line + "'");
      trace.Add(std::stoll(fields[0]), fields[1], ParseDouble(fields[2]), ParseDouble(fields[3]));
    }
    trace.evaluated_policy_ = policy;
    return trace;
  }

  const std::vector<TraceRow>& rows() const { return rows_; }
  const std::string& evaluated_policy() const { return evaluated_policy_; }

 private:
  std::string evaluated_policy_;
  std::vector<TraceRow> rows_;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Fully resolved settings of one CLI run.
struct RunConfig {
  std::string subcommand;
  std::string game;  // canonical game string
  std::string algorithm;
  std::uint64_t seed = 0;
  long long report_every = 0;
  std::map<std::string, std::string> hyperparameters;
  std::map<std::string, std::string> outputs;

  bool operator==(const RunConfig&) const = default;

  nlohmann::json ToJson() const {
    return {{"subcommand", subcommand}, {"game", game},
            {"algorithm", algorithm},   {"seed", seed},
            {"report_every", report_every}, {"hyperparameters", hyperparameters},
            {"outputs", outputs}};
  }

  std::string Serialize() const { return ToJson().dump(2) + "\n"; }

  static RunConfig Parse(const std::string& text) {
    RunConfig c;
    try {
      const auto j = nlohmann::json::parse(text);
      c.subcommand = j.at("subcommand").get<std::string>();
      c.game = j.at("game").get<std::string>();
      c.algorithm = j.at("algorithm").get<std::string>();
      c.seed = j.at("seed").get<std::uint64_t>();
      c.report_every = j.at("report_every").get<long long>();
      c.hyperparameters = j.at("hyperparameters").get<std::map<std::string, std::string>>();
      c.outputs = j.at("outputs").get<std::map<std::string, std::string>>();
    } catch (const nlohmann::json::exception& e) {
      Fail(ErrorKind::kParseError, std::string("bad run config: ") + e.what());
    }
    return c;
  }
};

// Path of the resolved-config file written next to an output artifact.
inline std::string ConfigPathFor(const std::string& output) { return output + ".config.json"; }

}  // namespace gamelab

#endif  // GAMELAB_IO_HPP_
