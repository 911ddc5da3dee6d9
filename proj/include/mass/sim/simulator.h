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

#ifndef MASS_SIM_SIMULATOR_H_
#define MASS_SIM_SIMULATOR_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mass/scheduling/wave_template.h"
#include "mass/sim/distribution.h"

namespace mass::sim {

// Paper-card clinic: everyone is at the door at opening (plus non-negative
// jitter) and is seen in arrival order by the next free doctor.
struct FcfsWalkIn {
  friend bool operator==(const FcfsWalkIn&, const FcfsWalkIn&) = default;
};

// Patients are pre-assigned to modified-wave slots, arrive at slot start plus
// jitter, and each doctor serves present patients in (scheduled, arrival)
// order without idling while anyone is waiting.
struct ModifiedWave {
  scheduling::WaveTemplate wave;
  friend bool operator==(const ModifiedWave&, const ModifiedWave&) = default;
};

using Policy = std::variant<FcfsWalkIn, ModifiedWave>;

struct SimConfig {
  Policy policy = FcfsWalkIn{};
  int doctors = 1;
  // Clinic-day length in minutes.
  int horizon = 180;
  int patients = 0;
  Distribution service_time = Deterministic{10};
  Distribution punctuality_jitter = Deterministic{0};
  std::uint64_t seed = 1;
  double no_show_probability = 0.0;

  // Throws Error(kInvalidConfig).
  void Validate() const;
  std::string PolicyName() const;
};

struct PatientOutcome {
  int patient = 0;
  int doctor = 0;
  int scheduled = 0;
  int arrival = 0;
  int service_start = 0;
  int service_end = 0;
  bool no_show = false;

  int wait() const { return service_start - arrival; }
};

struct SimReport {
  std::string policy;
  int patients = 0;
  // One per patient who showed up, in patient order.
  std::vector<int> waits;
  double mean_wait = 0;
  double median_wait = 0;
  int p90_wait = 0;
  int max_wait = 0;
  double idle_minutes = 0;
  double overtime_minutes = 0;
  // Service started before the horizon.
  int served = 0;
  int waiting_at_horizon = 0;
  int no_shows = 0;
  std::optional<double> reduction_vs_baseline;
  std::vector<PatientOutcome> outcomes;
};

// Fills mean/median/p90/max from `waits`. p90 is nearest-rank.
void SummarizeWaits(SimReport& report);

// Throws Error(kInvalidConfig). Identical configs give identical reports.
SimReport Run(const SimConfig& config);

struct Comparison {
  std::vector<SimReport> baseline_runs;
  std::vector<SimReport> treatment_runs;
  // Waits pooled over all replications; idle and overtime averaged.
  SimReport baseline;
  SimReport treatment;
  // (mean_base - mean_treat) / mean_base on the pooled means; 0 when the
  // baseline mean is 0.
  double reduction = 0;
};

// Replication i runs each config with seed + i. Throws kMismatchedConfigs
// when patients, horizon or service distribution differ, kInvalidConfig for
// fewer than one replication.
Comparison Compare(const SimConfig& baseline, const SimConfig& treatment,
                   int replications);

enum class ReportFormat { kTable, kDelimited };

// Columns: policy, patients, mean, median, p90, max, idle, overtime,
// reduction. An empty span gives the header alone.
std::string EmitReport(std::span<const SimReport> reports, ReportFormat format);
std::string EmitComparison(const Comparison& comparison, ReportFormat format,
                           bool per_replication = false);

}  // namespace mass::sim

#endif  // MASS_SIM_SIMULATOR_H_
