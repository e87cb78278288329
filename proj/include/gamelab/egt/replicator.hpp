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

// Replicator dynamics for one symmetric population and for two populations,
// phase-portrait grids, and forward-Euler integration.

#ifndef GAMELAB_EGT_REPLICATOR_HPP_
#define GAMELAB_EGT_REPLICATOR_HPP_

#include <cmath>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "gamelab/egt/payoff_table.hpp"
#include "gamelab/error.hpp"
#include "gamelab/policy.hpp"

namespace gamelab {

using PayoffMatrix = std::vector<std::vector<double>>;

namespace replicator_internal {

inline std::vector<double> Fitness(const PayoffMatrix& payoffs, const std::vector<double>& mix) {
  std::vector<double> f(payoffs.size(), 0.0);
  for (std::size_t a = 0; a < payoffs.size(); ++a) {
    if (payoffs[a].size() != mix.size()) {
      Fail(ErrorKind::kDimensionMismatch, "payoff row length does not match the opponent mixture");
    }
    for (std::size_t b = 0; b < mix.size(); ++b) f[a] += payoffs[a][b] * mix[b];
  }
  return f;
}

inline std::vector<double> Replicate(const std::vector<double>& pi, const std::vector<double>& f) {
  double mean = 0.0;
  for (std::size_t a = 0; a < pi.size(); ++a) mean += pi[a] * f[a];
  std::vector<double> d(pi.size());
  for (std::size_t a = 0; a < pi.size(); ++a) d[a] = pi[a] * (f[a] - mean);
  return d;
}

inline PayoffMatrix Transpose(const PayoffMatrix& m) {
  PayoffMatrix t(m.empty() ? 0 : m[0].size(), std::vector<double>(m.size()));
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = 0; c < m[r].size(); ++c) t[c][r] = m[r][c];
  }
  return t;
}

}  // namespace replicator_internal

// d pi(a)/dt = pi(a) * (u(a, pi) - u(pi, pi)) for a symmetric k x k game.
inline std::vector<double> ReplicatorDerivative(const PayoffMatrix& payoffs,
                                                const std::vector<double>& pi) {
  if (payoffs.size() != pi.size()) {
    Fail(ErrorKind::kDimensionMismatch, "payoff matrix and mixture sizes differ");
  }
  return replicator_internal::Replicate(pi, replicator_internal::Fitness(payoffs, pi));
}

// Each population follows the replicator equation against the other
// population's current mixture. Both payoff matrices are indexed
// [row strategy][column strategy].
inline std::pair<std::vector<double>, std::vector<double>> TwoPopulationDerivative(
    const PayoffMatrix& row_payoffs, const PayoffMatrix& col_payoffs,
    const std::vector<double>& row_mix, const std::vector<double>& col_mix) {
  using namespace replicator_internal;
  if (row_payoffs.size() != row_mix.size() || col_payoffs.size() != row_mix.size()) {
    Fail(ErrorKind::kDimensionMismatch, "row payoffs and row mixture sizes differ");
  }
  const auto row_fitness = Fitness(row_payoffs, col_mix);
  const auto col_fitness = Fitness(Transpose(col_payoffs), row_mix);
  return {Replicate(row_mix, row_fitness), Replicate(col_mix, col_fitness)};
}

// Forward-Euler trajectory of the single-population dynamic, including the
// start point. Optional renormalization projects back onto the simplex.
inline std::vector<std::vector<double>> EulerIntegrate(const PayoffMatrix& payoffs,
                                                       std::vector<double> pi, double dt, int steps,
                                                       bool renormalize = false) {
  std::vector<std::vector<double>> path{pi};
  for (int s = 0; s < steps; ++s) {
    const auto d = ReplicatorDerivative(payoffs, pi);
    double total = 0.0;
    for (std::size_t a = 0; a < pi.size(); ++a) total += pi[a] += dt * d[a];
    if (renormalize) {
      for (double& p : pi) p /= total;
    }
    path.push_back(pi);
  }
  return path;
}

enum class PortraitKind { kInterval, kTriangle, kSquare };

struct PortraitPoint {
  std::vector<double> point;       // mixture (single population) or (x, y) on the square
  std::vector<double> derivative;  // aligned with `point`
  double speed = 0.0;              // Euclidean norm of the derivative
  double x = 0.0, y = 0.0;         // plotting coordinates
};

struct PhasePortrait {
  PortraitKind kind = PortraitKind::kTriangle;
  std::vector<PortraitPoint> points;
};

inline double Norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Evenly spaced samples of the dynamic. One population with 2 strategies
// gives resolution + 1 points on the interval; 3 strategies give the
// C(resolution + 2, 2) lattice points of the triangle, projected with
// vertices (0, 0), (1, 0), (1/2, sqrt(3)/2). Two 2-strategy populations give
// a resolution x resolution grid over (P(row plays 0), P(column plays 0)).
inline PhasePortrait PhasePortraitGrid(const PayoffTable& table, int resolution) {
  table.Validate();
  if (resolution < 1 || (table.populations() == 2 && resolution < 2)) {
    Fail(ErrorKind::kInvalidArgument, "resolution too small");
  }
  PhasePortrait portrait;
  if (table.single_population()) {
    const PayoffMatrix m = TableMatrix(table, 0);
    const int k = table.strategies[0];
    if (k == 2) {
      portrait.kind = PortraitKind::kInterval;
      for (int i = 0; i <= resolution; ++i) {
        PortraitPoint p;
        const double x = static_cast<double>(i) / resolution;
        p.point = {1.0 - x, x};
        p.derivative = ReplicatorDerivative(m, p.point);
        p.speed = Norm(p.derivative);
        p.x = x;
        portrait.points.push_back(std::move(p));
      }
      return portrait;
    }
    if (k == 3) {
      portrait.kind = PortraitKind::kTriangle;
      for (int i = resolution; i >= 0; --i) {
        for (int j = resolution - i; j >= 0; --j) {
          const int l = resolution - i - j;
          PortraitPoint p;
          p.point = {static_cast<double>(i) / resolution, static_cast<double>(j) / resolution,
                     static_cast<double>(l) / resolution};
          p.derivative = ReplicatorDerivative(m, p.point);
          p.speed = Norm(p.derivative);
          p.x = p.point[1] + 0.5 * p.point[2];
          p.y = std::sqrt(3.0) / 2.0 * p.point[2];
          portrait.points.push_back(std::move(p));
        }
      }
      return portrait;
    }
  } else if (table.populations() == 2 && table.strategies[0] == 2 && table.strategies[1] == 2) {
    portrait.kind = PortraitKind::kSquare;
    const PayoffMatrix row = TableMatrix(table, 0), col = TableMatrix(table, 1);
    for (int i = 0; i < resolution; ++i) {
      for (int j = 0; j < resolution; ++j) {
        const double x = static_cast<double>(i) / (resolution - 1);
        const double y = static_cast<double>(j) / (resolution - 1);
        const auto [dr, dc] = TwoPopulationDerivative(row, col, {x, 1.0 - x}, {y, 1.0 - y});
        PortraitPoint p;
        p.point = {x, y};
        p.derivative = {dr[0], dc[0]};
        p.speed = Norm(p.derivative);
        p.x = x;
        p.y = y;
        portrait.points.push_back(std::move(p));
      }
    }
    return portrait;
  }
  Fail(ErrorKind::kUnsupportedDimension,
       "phase portraits need 2 or 3 strategies in one population, or a 2x2 two-population game");
}

inline void WritePhasePortraitCsv(std::ostream& out, const PhasePortrait& portrait) {
  switch (portrait.kind) {
    case PortraitKind::kInterval: out << "p0,p1,d0,d1,speed,x\n"; break;
    case PortraitKind::kTriangle: out << "p0,p1,p2,d0,d1,d2,speed,x,y\n"; break;
    case PortraitKind::kSquare: out << "x,y,dx,dy,speed\n"; break;
  }
  for (const auto& p : portrait.points) {
    std::string line;
    for (double v : p.point) line += FormatDouble(v) + ",";
    for (double v : p.derivative) line += FormatDouble(v) + ",";
    line += FormatDouble(p.speed);
    if (portrait.kind == PortraitKind::kInterval) line += "," + FormatDouble(p.x);
    if (portrait.kind == PortraitKind::kTriangle) {
      line += "," + FormatDouble(p.x) + "," + FormatDouble(p.y);
    }
    out << line << "\n";
  }
}

}  // namespace gamelab

#endif  // GAMELAB_EGT_REPLICATOR_HPP_
