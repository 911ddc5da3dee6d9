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

#ifndef MASS_SIM_CONFIG_JSON_H_
#define MASS_SIM_CONFIG_JSON_H_

#include <nlohmann/json.hpp>

#include "mass/sim/simulator.h"

namespace mass::sim {

// {
//   "policy": {"kind": "fcfs"}
//           | {"kind": "modified_wave", "slot_length": 10, "wave_size": 2,
//              "catchup_window": 10},
//   "doctors": 1, "horizon": 180, "patients": 18,
//   "service_time": {"kind": "deterministic", "minutes": 10}
//                 | {"kind": "trunc_normal", "mean", "sd", "min", "max"}
//                 | {"kind": "exponential", "mean"}
//                 | {"kind": "uniform", "min", "max"},
//   "punctuality_jitter": <distribution>,
//   "seed": 42, "no_show_probability": 0
// }
// Omitted keys take SimConfig defaults. Unknown or mistyped keys throw
// Error(kInvalidConfig) naming the field.
SimConfig SimConfigFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const SimConfig& config);

}  // namespace mass::sim

#endif  // MASS_SIM_CONFIG_JSON_H_
