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

#ifndef GAMELAB_ERROR_HPP_
#define GAMELAB_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace gamelab {

// Every failure raised by the library carries one of these kinds so callers
// (and tests) can branch on the category instead of parsing messages.
enum class ErrorKind {
  kUnknownGame,
  kInvalidParameter,
  kTerminalState,
  kWrongPlayer,
  kIllegalAction,
  kNotChanceNode,
  kNotTerminal,
  kInvalidPlayer,
  kBudgetExceeded,
  kShapeMismatch,
  kAlreadyTurnBased,
  kUnsupportedGameClass,
  kMissingPolicyEntry,
  kImperfectRecall,
  kNotConstantSum,
  kEmptyActionSet,
  kChanceNodeEncountered,
  kTerminalRoot,
  kDimensionMismatch,
  kUnsupportedDimension,
  kReducibleChain,
  kInvalidArgument,
  kParseError,
  kIoError,
  kEndOfInput,
};

inline std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUnknownGame: return "unknown-game";
    case ErrorKind::kInvalidParameter: return "invalid-parameter";
    case ErrorKind::kTerminalState: return "terminal-state";
    case ErrorKind::kWrongPlayer: return "wrong-player";
    case ErrorKind::kIllegalAction: return "illegal-action";
    case ErrorKind::kNotChanceNode: return "not-chance-node";
    case ErrorKind::kNotTerminal: return "not-terminal";
    case ErrorKind::kInvalidPlayer: return "invalid-player";
    case ErrorKind::kBudgetExceeded: return "enumeration-budget-exceeded";
    case ErrorKind::kShapeMismatch: return "shape-mismatch";
    case ErrorKind::kAlreadyTurnBased: return "already-turn-based";
    case ErrorKind::kUnsupportedGameClass: return "unsupported-game-class";
    case ErrorKind::kMissingPolicyEntry: return "missing-policy-entry";
    case ErrorKind::kImperfectRecall: return "imperfect-recall-detected";
    case ErrorKind::kNotConstantSum: return "not-constant-sum";
    case ErrorKind::kEmptyActionSet: return "empty-action-set";
    case ErrorKind::kChanceNodeEncountered: return "chance-node-encountered";
    case ErrorKind::kTerminalRoot: return "terminal-root";
    case ErrorKind::kDimensionMismatch: return "dimension-mismatch";
    case ErrorKind::kUnsupportedDimension: return "unsupported-dimension";
    case ErrorKind::kReducibleChain: return "reducible-chain";
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kParseError: return "parse-error";
    case ErrorKind::kIoError: return "io-error";
    case ErrorKind::kEndOfInput: return "end-of-input";
  }
  return "unknown";
}

class GameError : public std::runtime_error {
 public:
  GameError(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void Fail(ErrorKind kind, const std::string& message) {
  throw GameError(kind, message);
}

}  // namespace gamelab

#endif  // GAMELAB_ERROR_HPP_
