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

#include "mass/sim/config_json.h"

#include <set>
#include <string>

#include "mass/core/error.h"

namespace mass::sim {

using nlohmann::json;

namespace {

[[noreturn]] void Bad(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::kInvalidConfig, "field '" + field + "': " + why);
}

void RejectUnknown(const json& j, const std::string& where,
                   std::initializer_list<const char*> allowed) {
  if (!j.is_object()) Bad(where, "expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!ok.contains(key)) Bad(where.empty() ? key : where + "." + key, "unknown field");
  }
}

template <typename T>
T Get(const json& j, const std::string& where, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  std::string field = where.empty() ? key : where + "." + key;
  if constexpr (std::is_same_v<T, double>) {
    if (!it->is_number()) Bad(field, "expected a number");
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (!it->is_string()) Bad(field, "expected a string");
  } else if constexpr (std::is_unsigned_v<T>) {
    if (!it->is_number_unsigned()) Bad(field, "expected a non-negative integer");
  } else {
    if (!it->is_number_integer()) Bad(field, "expected an integer");
  }
  return it->get<T>();
}

Distribution DistributionFromJson(const json& j, const std::string& where) {
  if (!j.is_object()) Bad(where, "expected an object");
  std::string kind = Get<std::string>(j, where, "kind", "");
  if (kind == "deterministic") {
    RejectUnknown(j, where, {"kind", "minutes"});
    return Deterministic{Get<int>(j, where, "minutes", 0)};
  }
  if (kind == "trunc_normal") {
    RejectUnknown(j, where, {"kind", "mean", "sd", "min", "max"});
    return TruncNormal{Get<double>(j, where, "mean", 0), Get<double>(j, where, "sd", 1),
                       Get<double>(j, where, "min", 0), Get<double>(j, where, "max", 0)};
  }
  if (kind == "exponential") {
    RejectUnknown(j, where, {"kind", "mean"});
    return Exponential{Get<double>(j, where, "mean", 1)};
  }
  if (kind == "uniform") {
    RejectUnknown(j, where, {"kind", "min", "max"});
    return UniformInt{Get<int>(j, where, "min", 0), Get<int>(j, where, "max", 0)};
  }
  Bad(where + ".kind", "expected deterministic, trunc_normal, exponential or uniform");
}

json DistributionToJson(const Distribution& d) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Deterministic>) {
          return {{"kind", "deterministic"}, {"minutes", v.minutes}};
        } else if constexpr (std::is_same_v<T, TruncNormal>) {
          return {{"kind", "trunc_normal"}, {"mean", v.mean}, {"sd", v.sd},
                  {"min", v.min}, {"max", v.max}};
        } else if constexpr (std::is_same_v<T, Exponential>) {
          return {{"kind", "exponential"}, {"mean", v.mean}};
        } else {
          return {{"kind", "uniform"}, {"min", v.min}, {"max", v.max}};
        }
      },
      d);
}

}  // namespace

SimConfig SimConfigFromJson(const json& j) {
  RejectUnknown(j, "", {"policy", "doctors", "horizon", "patients", "service_time",
                        "punctuality_jitter", "seed", "no_show_probability"});
  SimConfig c;
  if (auto it = j.find("policy"); it != j.end()) {
    std::string kind = Get<std::string>(*it, "policy", "kind", "");
    if (kind == "fcfs") {
      RejectUnknown(*it, "policy", {"kind"});
      c.policy = FcfsWalkIn{};
    } else if (kind == "modified_wave") {
      RejectUnknown(*it, "policy", {"kind", "slot_length", "wave_size", "catchup_window"});
      scheduling::WaveTemplate w;
      w.slot_length = Get<int>(*it, "policy", "slot_length", w.slot_length);
      w.wave_size = Get<int>(*it, "policy", "wave_size", w.wave_size);
      w.catchup_window = Get<int>(*it, "policy", "catchup_window", w.catchup_window);
      c.policy = ModifiedWave{w};
    } else {
      Bad("policy.kind", "expected fcfs or modified_wave");
    }
  }
  c.doctors = Get<int>(j, "", "doctors", c.doctors);
  c.horizon = Get<int>(j, "", "horizon", c.horizon);
  c.patients = Get<int>(j, "", "patients", c.patients);
  if (auto it = j.find("service_time"); it != j.end()) {
    c.service_time = DistributionFromJson(*it, "service_time");
  }
  if (auto it = j.find("punctuality_jitter"); it != j.end()) {
    c.punctuality_jitter = DistributionFromJson(*it, "punctuality_jitter");
  }
  c.seed = Get<std::uint64_t>(j, "", "seed", c.seed);
  c.no_show_probability = Get<double>(j, "", "no_show_probability", c.no_show_probability);
  c.Validate();
  return c;
}

json ToJson(const SimConfig& c) {
  json policy;
  if (const auto* wave = std::get_if<ModifiedWave>(&c.policy)) {
    policy = {{"kind", "modified_wave"},
              {"slot_length", wave->wave.slot_length},
              {"wave_size", wave->wave.wave_size},
              {"catchup_window", wave->wave.catchup_window}};
  } else {
    policy = {{"kind", "fcfs"}};
  }
  return {{"policy", policy},
          {"doctors", c.doctors},
          {"horizon", c.horizon},
          {"patients", c.patients},
          {"service_time", DistributionToJson(c.service_time)},
          {"punctuality_jitter", DistributionToJson(c.punctuality_jitter)},
          {"seed", c.seed},
          {"no_show_probability", c.no_show_probability}};
}

}  // namespace mass::sim
