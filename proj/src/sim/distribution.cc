// Copyright 2026 The MASS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mass/sim/distribution.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mass::sim {

namespace {

constexpr int kMaxRejections = 1000;

double StandardNormal(Rng& rng) {
  // Box-Muller; 1 - u keeps the log argument in (0, 1].
  double u1 = 1.0 - UnitUniform(rng);
  double u2 = UnitUniform(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

double UnitUniform(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string DistributionProblem(const Distribution& d) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Deterministic>) {
          return "";
        } else if constexpr (std::is_same_v<T, TruncNormal>) {
          if (!(v.sd > 0)) return "trunc_normal sd must be positive";
          if (!(v.min <= v.max)) return "trunc_normal min must not exceed max";
          if (!std::isfinite(v.mean)) return "trunc_normal mean must be finite";
          return "";
        } else if constexpr (std::is_same_v<T, Exponential>) {
          return v.mean > 0 ? "" : "exponential mean must be positive";
        } else {
          return v.min <= v.max ? "" : "uniform min must not exceed max";
        }
      },
      d);
}

int SampleMinutes(const Distribution& d, Rng& rng) {
  return std::visit(
      [&rng](const auto& v) -> int {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Deterministic>) {
          return v.minutes;
        } else if constexpr (std::is_same_v<T, TruncNormal>) {
          for (int i = 0; i < kMaxRejections; ++i) {
            double x = v.mean + v.sd * StandardNormal(rng);
            if (x >= v.min && x <= v.max) return static_cast<int>(std::lround(x));
          }
          // Only reachable when [min, max] sits far in a tail.
          return static_cast<int>(std::lround(std::clamp(v.mean, v.min, v.max)));
        } else if constexpr (std::is_same_v<T, Exponential>) {
          double u = 1.0 - UnitUniform(rng);
          return static_cast<int>(std::lround(-v.mean * std::log(u)));
        } else {
          auto span = static_cast<unsigned long long>(v.max - v.min) + 1;
          return v.min + static_cast<int>(rng() % span);
        }
      },
      d);
}

}  // namespace mass::sim
