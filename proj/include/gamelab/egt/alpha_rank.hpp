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

// Alpha-Rank: the small-mutation-limit Markov chain over pure strategy
// profiles with Fermi-selection fixation probabilities, its stationary
// distribution, and sweeps over the ranking intensity.

#ifndef GAMELAB_EGT_ALPHA_RANK_HPP_
#define GAMELAB_EGT_ALPHA_RANK_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "gamelab/egt/payoff_table.hpp"
#include "gamelab/error.hpp"
#include "gamelab/policy.hpp"

namespace gamelab {

struct AlphaRankParams {
  double alpha = 1.0;        // ranking intensity
  int population_size = 50;  // m
};

struct AlphaRankResult {
  std::vector<std::vector<int>> profiles;  // lexicographic order
  Eigen::MatrixXd transitions;             // row-stochastic, indexed like `profiles`
  Eigen::VectorXd stationary;
  std::vector<int> ranking;                // profile indices by descending mass
  double residual = 0.0;                   // max |pi C - pi|

  std::string Label(int profile) const {
    std::string label;
    for (std::size_t i = 0; i < profiles[profile].size(); ++i) {
      label += (i ? ":" : "") + std::to_string(profiles[profile][i]);
    }
    return label;
  }
};

// Probability that one mutant with payoff advantage `advantage` over the
// residents takes over a population of m. Constant advantage across mutant
// counts: (1 - e^{-x}) / (1 - e^{-m x}) with x = alpha * advantage.
inline double FixationProbability(double alpha, double advantage, int m) {
  const double x = alpha * advantage;
  if (x == 0.0) return 1.0 / m;
  if (x > 0.0) return std::expm1(-x) / std::expm1(-m * x);
  const double y = -x;
  return std::exp((1.0 - m) * y) * std::expm1(-y) / std::expm1(-m * y);
}

// Single-population fixation probability of mutant `tau` among residents
// `sigma`, where payoffs depend on the current mutant count:
// rho = 1 / sum_{l=0}^{m-1} prod_{p=1}^{l} exp(-alpha (f_tau(p) - f_sigma(p))).
inline double SinglePopulationFixation(const PayoffTable& table, int tau, int sigma, double alpha,
                                       int m) {
  const int k = table.strategies[0];
  const auto& M = table.payoffs[0];
  auto payoff = [&](int a, int b) { return M[a * k + b]; };
  std::vector<double> logs{0.0};
  double cumulative = 0.0;
  for (int p = 1; p < m; ++p) {
    const double f_tau = ((p - 1) * payoff(tau, tau) + (m - p) * payoff(tau, sigma)) / (m - 1.0);
    const double f_sigma = (p * payoff(sigma, tau) + (m - p - 1) * payoff(sigma, sigma)) / (m - 1.0);
    cumulative -= alpha * (f_tau - f_sigma);
    logs.push_back(cumulative);
  }
  const double top = *std::max_element(logs.begin(), logs.end());
  double sum = 0.0;
  for (double l : logs) sum += std::exp(l - top);
  return std::exp(-(top + std::log(sum)));
}

inline std::vector<std::vector<int>> EnumerateProfiles(const PayoffTable& table) {
  std::vector<int> sizes = table.single_population()
                               ? std::vector<int>{table.strategies[0]}
                               : table.strategies;
  std::vector<std::vector<int>> profiles;
  std::vector<int> current(sizes.size(), 0);
  while (true) {
    profiles.push_back(current);
    int d = static_cast<int>(sizes.size()) - 1;
    for (; d >= 0; --d) {
      if (++current[d] < sizes[d]) break;
      current[d] = 0;
    }
    if (d < 0) break;
  }
  return profiles;
}

inline Eigen::MatrixXd AlphaRankTransitions(const PayoffTable& table,
                                            const std::vector<std::vector<int>>& profiles,
                                            const AlphaRankParams& params) {
  const int n = static_cast<int>(profiles.size());
  const int m = params.population_size;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  if (n == 1) {
    C(0, 0) = 1.0;
    return C;
  }
  auto index_of = [&](const std::vector<int>& profile) {
    int offset = 0;
    for (std::size_t d = 0; d < profile.size(); ++d) {
      const int size = table.single_population() ? table.strategies[0] : table.strategies[d];
      offset = offset * size + profile[d];
    }
    return offset;
  };
  if (table.single_population()) {
    const double eta = 1.0 / (table.strategies[0] - 1);
    for (int s = 0; s < n; ++s) {
      for (int t = 0; t < n; ++t) {
        if (s != t) C(s, t) = eta * SinglePopulationFixation(table, t, s, params.alpha, m);
      }
    }
  } else {
    int deviations = 0;
    for (int k : table.strategies) deviations += k - 1;
    const double eta = 1.0 / deviations;
    for (int s = 0; s < n; ++s) {
      const std::vector<int>& sigma = profiles[s];
      for (int p = 0; p < table.populations(); ++p) {
        for (int alt = 0; alt < table.strategies[p]; ++alt) {
          if (alt == sigma[p]) continue;
          std::vector<int> tau = sigma;
          tau[p] = alt;
          const double advantage = table.At(p, tau) - table.At(p, sigma);
          C(s, index_of(tau)) = eta * FixationProbability(params.alpha, advantage, m);
        }
      }
    }
  }
  for (int s = 0; s < n; ++s) C(s, s) = 1.0 - (C.row(s).sum() - C(s, s));
  return C;
}

// Closed communicating classes of the chain (strongly connected components
// with no outgoing transition).
inline std::vector<std::vector<int>> ClosedClasses(const Eigen::MatrixXd& C) {
  const int n = static_cast<int>(C.rows());
  std::vector<int> index(n, -1), low(n, 0), component(n, -1), stack;
  std::vector<char> on_stack(n, 0);
  std::vector<std::vector<int>> components;
  int counter = 0;
  std::function<void(int)> connect = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = 1;
    for (int w = 0; w < n; ++w) {
      if (w == v || C(v, w) <= 0.0) continue;
      if (index[w] < 0) {
        connect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<int> members;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        component[w] = static_cast<int>(components.size());
        members.push_back(w);
      } while (w != v);
      std::sort(members.begin(), members.end());
      components.push_back(std::move(members));
    }
  };
  for (int v = 0; v < n; ++v) {
    if (index[v] < 0) connect(v);
  }
  std::vector<std::vector<int>> closed;
  for (std::size_t c = 0; c < components.size(); ++c) {
    bool leaves = false;
    for (int v : components[c]) {
      for (int w = 0; w < n && !leaves; ++w) {
        if (C(v, w) > 0.0 && component[w] != static_cast<int>(c)) leaves = true;
      }
    }
    if (!leaves) closed.push_back(components[c]);
  }
  std::sort(closed.begin(), closed.end());
  return closed;
}

// Stationary distribution of an irreducible-on-its-closed-class chain via a
// direct linear solve of pi (C - I) = 0, sum(pi) = 1, plus refinement.
inline Eigen::VectorXd StationaryDistribution(const Eigen::MatrixXd& C) {
  const int n = static_cast<int>(C.rows());
  Eigen::MatrixXd A = C.transpose() - Eigen::MatrixXd::Identity(n, n);
  A.row(n - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(n - 1) = 1.0;
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  Eigen::VectorXd pi = lu.solve(b);
  for (int round = 0; round < 3; ++round) pi += lu.solve(b - A * pi);
  for (int i = 0; i < n; ++i) pi(i) = std::max(pi(i), 0.0);
  pi /= pi.sum();
  return pi;
}

inline AlphaRankResult AlphaRank(const PayoffTable& table, const AlphaRankParams& params) {
  table.Validate();
  if (!(params.alpha > 0.0)) Fail(ErrorKind::kInvalidArgument, "alpha must be > 0");
  if (params.population_size < 2) Fail(ErrorKind::kInvalidArgument, "population size must be >= 2");
  AlphaRankResult result;
  result.profiles = EnumerateProfiles(table);
  result.transitions = AlphaRankTransitions(table, result.profiles, params);
  const auto closed = ClosedClasses(result.transitions);
  if (closed.size() != 1) {
    std::string classes;
    for (const auto& c : closed) {
      classes += " {";
      for (std::size_t i = 0; i < c.size(); ++i) classes += (i ? " " : "") + result.Label(c[i]);
      classes += "}";
    }
    Fail(ErrorKind::kReducibleChain,
         "no unique stationary distribution; closed classes:" + classes);
  }
  result.stationary = StationaryDistribution(result.transitions);
  const Eigen::VectorXd drift =
      (result.stationary.transpose() * result.transitions).transpose() - result.stationary;
  result.residual = drift.cwiseAbs().maxCoeff();
  result.ranking.resize(result.profiles.size());
  for (std::size_t i = 0; i < result.ranking.size(); ++i) result.ranking[i] = static_cast<int>(i);
  std::stable_sort(result.ranking.begin(), result.ranking.end(), [&](int a, int b) {
    return result.stationary(a) > result.stationary(b) + 1e-12;
  });
  return result;
}

struct AlphaSweepResult {
  std::vector<double> alphas;
  std::vector<AlphaRankResult> results;
  bool stabilized = false;  // top profile constant over the final decade of alpha
  int top_profile = -1;     // top profile at the largest alpha
};

inline AlphaSweepResult AlphaRankSweep(const PayoffTable& table, const std::vector<double>& alphas,
                                       int population_size = 50) {
  if (alphas.empty()) Fail(ErrorKind::kInvalidArgument, "empty alpha grid");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0) || (i > 0 && !(alphas[i] > alphas[i - 1]))) {
      Fail(ErrorKind::kInvalidArgument, "alpha grid must be positive and strictly increasing");
    }
  }
  AlphaSweepResult sweep;
  sweep.alphas = alphas;
  for (double alpha : alphas) sweep.results.push_back(AlphaRank(table, {alpha, population_size}));
  sweep.top_profile = sweep.results.back().ranking.front();
  sweep.stabilized = true;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (alphas[i] >= alphas.back() / 10.0 &&
        sweep.results[i].ranking.front() != sweep.top_profile) {
      sweep.stabilized = false;
    }
  }
  return sweep;
}

inline void WriteAlphaSweepCsv(std::ostream& out, const AlphaSweepResult& sweep) {
  out << "alpha,profile,mass\n";
  for (std::size_t i = 0; i < sweep.alphas.size(); ++i) {
    const AlphaRankResult& r = sweep.results[i];
    for (std::size_t p = 0; p < r.profiles.size(); ++p) {
      out << FormatDouble(sweep.alphas[i]) << "," << r.Label(static_cast<int>(p)) << ","
          << FormatDouble(r.stationary(static_cast<int>(p))) << "\n";
    }
  }
}

inline std::vector<double> LogSpace(double lo, double hi, int steps) {
  if (!(lo > 0.0) || !(hi > lo) || steps < 2) {
    Fail(ErrorKind::kInvalidArgument, "log grid needs 0 < lo < hi and at least 2 steps");
  }
  std::vector<double> grid;
  const double a = std::log10(lo), b = std::log10(hi);
  for (int i = 0; i < steps; ++i) grid.push_back(std::pow(10.0, a + (b - a) * i / (steps - 1)));
  return grid;
}

}  // namespace gamelab

#endif  // GAMELAB_EGT_ALPHA_RANK_HPP_
