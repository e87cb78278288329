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

#ifndef GAMELAB_RNG_HPP_
#define GAMELAB_RNG_HPP_

#include <cstdint>
#include <random>
#include <span>

namespace gamelab {

// Seeded generator with platform-independent sampling. std:: distributions
// are implementation-defined, so uniform doubles are derived from the raw
// 64-bit engine output directly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  // Uniform in [0, 1) with 53 bits of precision.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n).
  std::uint64_t Below(std::uint64_t n) {
    const double u = Uniform();
    std::uint64_t r = static_cast<std::uint64_t>(u * static_cast<double>(n));
    return r < n ? r : n - 1;
  }

  // Index sampled proportionally to `weights` (need not be normalized).
  std::size_t Sample(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double u = Uniform() * total;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] <= 0.0) continue;
      last_positive = i;
      if (u < weights[i]) return i;
      u -= weights[i];
    }
    return last_positive;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gamelab

#endif  // GAMELAB_RNG_HPP_
