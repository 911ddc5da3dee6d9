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

#ifndef MASS_SIM_DISTRIBUTION_H_
#define MASS_SIM_DISTRIBUTION_H_

#include <random>
#include <string>
#include <variant>

namespace mass::sim {

struct Deterministic {
  int minutes = 0;
  friend bool operator==(const Deterministic&, const Deterministic&) = default;
};

// Normal(mean, sd) conditioned on [min, max] by rejection.
struct TruncNormal {
  double mean = 0;
  double sd = 1;
  double min = 0;
  double max = 0;
  friend bool operator==(const TruncNormal&, const TruncNormal&) = default;
};

struct Exponential {
  double mean = 1;
  friend bool operator==(const Exponential&, const Exponential&) = default;
};

// Integer uniform on [min, max]; used for symmetric punctuality jitter.
struct UniformInt {
  int min = 0;
  int max = 0;
  friend bool operator==(const UniformInt&, const UniformInt&) = default;
};

using Distribution = std::variant<Deterministic, TruncNormal, Exponential, UniformInt>;

using Rng = std::mt19937_64;

// Empty when well-formed, else the reason.
std::string DistributionProblem(const Distribution& d);

// One draw, rounded to whole minutes. Uses only the raw 64-bit engine output
// (no std:: distributions, whose algorithms vary by standard library), so a
// seed yields the same minutes on every platform.
int SampleMinutes(const Distribution& d, Rng& rng);

// Uniform in [0, 1) from the top 53 bits of one engine draw.
double UnitUniform(Rng& rng);

}  // namespace mass::sim

#endif  // MASS_SIM_DISTRIBUTION_H_
