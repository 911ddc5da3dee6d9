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

#include "mass/sim/simulator.h"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <queue>
#include <tuple>

#include "mass/core/error.h"
#include "mass/scheduling/slot_generator.h"

namespace mass::sim {

namespace {

[[noreturn]] void Invalid(const std::string& why) {
  throw Error(ErrorCode::kInvalidConfig, "invalid simulation config: " + why);
}

struct Draw {
  bool no_show = false;
  int jitter = 0;
  int service = 0;
};

// Draw order per patient is fixed (no-show, jitter, service) so that two
// policies run with one seed see the same patients.
std::vector<Draw> DrawPatients(const SimConfig& config) {
  Rng rng(config.seed);
  std::vector<Draw> draws(static_cast<size_t>(config.patients));
  for (Draw& d : draws) {
    if (config.no_show_probability > 0) {
      d.no_show = UnitUniform(rng) < config.no_show_probability;
    }
    d.jitter = SampleMinutes(config.punctuality_jitter, rng);
    d.service = std::max(0, SampleMinutes(config.service_time, rng));
  }
  return draws;
}

struct Waiting {
  // Lexicographic service priority within a queue.
  int scheduled;
  int arrival;
  int patient;
  auto operator<=>(const Waiting&) const = default;
};

struct Event {
  int time;
  // Completions before arrivals at equal times; irrelevant to results since
  // dispatch runs after the whole instant is applied, but keeps pops stable.
  int kind;  // 0 completion, 1 arrival
  int subject;  // doctor for completions, patient for arrivals
  bool operator>(const Event& o) const {
    return std::tie(time, kind, subject) > std::tie(o.time, o.kind, o.subject);
  }
};

// Slots of the modified-wave day, in the order patients are assigned to them.
struct WaveSlot {
  int start;
  int doctor;
};

std::vector<WaveSlot> WaveLayout(const SimConfig& config, const ModifiedWave& policy) {
  const int hours = config.horizon / 60;
  const Timestamp day{};
  std::vector<std::tuple<int, int, int, int>> keyed;  // start, position, wave, doctor
  for (int d = 0; d < config.doctors; ++d) {
    Interval work{day, day + std::chrono::hours(hours)};
    std::span<const Interval> intervals(&work, hours > 0 ? 1 : 0);
    for (const auto& slot :
         scheduling::GenerateSlots(DoctorId(fmt::format("sim{}", d)), intervals,
                                   policy.wave)) {
      int start = static_cast<int>(
          std::chrono::duration_cast<std::chrono::minutes>(slot.start - day).count());
      keyed.emplace_back(start, slot.hour_position, slot.wave_index, d);
    }
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<WaveSlot> out;
  out.reserve(keyed.size());
  for (const auto& [start, pos, wave, doctor] : keyed) out.push_back({start, doctor});
  return out;
}

}  // namespace

void SimConfig::Validate() const {
  if (patients < 0) Invalid("patients must be non-negative");
  if (horizon <= 0) Invalid("horizon must be positive");
  if (doctors <= 0) Invalid("doctors must be positive");
  if (!(no_show_probability >= 0 && no_show_probability <= 1)) {
    Invalid("no_show_probability must lie in [0, 1]");
  }
  if (auto p = DistributionProblem(service_time); !p.empty()) Invalid("service_time: " + p);
  if (auto p = DistributionProblem(punctuality_jitter); !p.empty()) {
    Invalid("punctuality_jitter: " + p);
  }
  if (const auto* wave = std::get_if<ModifiedWave>(&policy)) {
    try {
      wave->wave.Validate();
    } catch (const Error& e) {
      Invalid(e.what());
    }
    long capacity =
        static_cast<long>(horizon / 60) * wave->wave.SlotsPerHour() * doctors;
    if (patients > capacity) {
      Invalid(fmt::format("{} patients exceed the {} modified-wave slots in the horizon",
                          patients, capacity));
    }
  }
}

std::string SimConfig::PolicyName() const {
  return std::holds_alternative<FcfsWalkIn>(policy) ? "fcfs" : "modified_wave";
}

void SummarizeWaits(SimReport& r) {
  r.mean_wait = r.median_wait = 0;
  r.p90_wait = r.max_wait = 0;
  if (r.waits.empty()) return;
  std::vector<int> sorted = r.waits;
  std::sort(sorted.begin(), sorted.end());
  const size_t n = sorted.size();
  long long total = std::accumulate(sorted.begin(), sorted.end(), 0LL);
  r.mean_wait = static_cast<double>(total) / static_cast<double>(n);
  r.median_wait = n % 2 == 1 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
  size_t rank = static_cast<size_t>(std::ceil(0.9 * static_cast<double>(n)));
  r.p90_wait = sorted[std::max<size_t>(rank, 1) - 1];
  r.max_wait = sorted.back();
}

SimReport Run(const SimConfig& config) {
  config.Validate();
  const int n = config.patients;
  const bool fcfs = std::holds_alternative<FcfsWalkIn>(config.policy);
  std::vector<Draw> draws = DrawPatients(config);

  std::vector<PatientOutcome> outcomes(static_cast<size_t>(n));
  if (fcfs) {
    for (int i = 0; i < n; ++i) {
      outcomes[i] = PatientOutcome{.patient = i,
                                   .scheduled = 0,
                                   .arrival = std::max(0, draws[i].jitter),
                                   .no_show = draws[i].no_show};
    }
  } else {
    auto layout = WaveLayout(config, std::get<ModifiedWave>(config.policy));
    for (int i = 0; i < n; ++i) {
      outcomes[i] = PatientOutcome{.patient = i,
                                   .doctor = layout[i].doctor,
                                   .scheduled = layout[i].start,
                                   .arrival = std::max(0, layout[i].start + draws[i].jitter),
                                   .no_show = draws[i].no_show};
    }
  }

  // FCFS shares one queue; under modified wave each doctor has their own.
  const int queue_count = fcfs ? 1 : config.doctors;
  std::vector<std::priority_queue<Waiting, std::vector<Waiting>, std::greater<>>> queues(
      static_cast<size_t>(queue_count));
  std::priority_queue<Event, std::vector<Event>, std::greater<>> events;
  for (const PatientOutcome& p : outcomes) {
    if (!p.no_show) events.push(Event{p.arrival, 1, p.patient});
  }
  std::vector<bool> busy(static_cast<size_t>(config.doctors), false);
  std::vector<int> last_end(static_cast<size_t>(config.doctors), 0);
  std::vector<long long> busy_in_horizon(static_cast<size_t>(config.doctors), 0);

  while (!events.empty()) {
    const int now = events.top().time;
    while (!events.empty() && events.top().time == now) {
      Event e = events.top();
      events.pop();
      if (e.kind == 0) {
        busy[e.subject] = false;
      } else {
        const PatientOutcome& p = outcomes[e.subject];
        queues[fcfs ? 0 : p.doctor].push(Waiting{fcfs ? p.arrival : p.scheduled,
                                                 p.arrival, p.patient});
      }
    }
    for (int d = 0; d < config.doctors; ++d) {
      auto& queue = queues[fcfs ? 0 : d];
      if (busy[d] || queue.empty()) continue;
      PatientOutcome& p = outcomes[queue.top().patient];
      queue.pop();
      p.doctor = d;
      p.service_start = now;
      p.service_end = now + draws[p.patient].service;
      busy[d] = true;
      last_end[d] = std::max(last_end[d], p.service_end);
      busy_in_horizon[d] += std::max(0, std::min(p.service_end, config.horizon) -
                                            std::min(p.service_start, config.horizon));
      events.push(Event{p.service_end, 0, d});
    }
  }

  SimReport report;
  report.policy = config.PolicyName();
  report.patients = n;
  for (const PatientOutcome& p : outcomes) {
    if (p.no_show) {
      ++report.no_shows;
      continue;
    }
    report.waits.push_back(p.wait());
    if (p.service_start < config.horizon) {
      ++report.served;
    } else {
      ++report.waiting_at_horizon;
    }
  }
  for (int d = 0; d < config.doctors; ++d) {
    report.idle_minutes += static_cast<double>(config.horizon - busy_in_horizon[d]);
    report.overtime_minutes += static_cast<double>(std::max(0, last_end[d] - config.horizon));
  }
  report.outcomes = std::move(outcomes);
  SummarizeWaits(report);
  return report;
}

namespace {

SimReport Pool(const std::vector<SimReport>& runs) {
  SimReport pooled;
  pooled.policy = runs.front().policy;
  pooled.patients = runs.front().patients;
  for (const SimReport& r : runs) {
    pooled.waits.insert(pooled.waits.end(), r.waits.begin(), r.waits.end());
    pooled.idle_minutes += r.idle_minutes;
    pooled.overtime_minutes += r.overtime_minutes;
    pooled.served += r.served;
    pooled.waiting_at_horizon += r.waiting_at_horizon;
    pooled.no_shows += r.no_shows;
  }
  const double reps = static_cast<double>(runs.size());
  pooled.idle_minutes /= reps;
  pooled.overtime_minutes /= reps;
  SummarizeWaits(pooled);
  return pooled;
}

double Reduction(double base, double treat) {
  return base > 0 ? (base - treat) / base : 0.0;
}

}  // namespace

Comparison Compare(const SimConfig& baseline, const SimConfig& treatment,
                   int replications) {
  if (replications < 1) Invalid("replications must be at least 1");
  baseline.Validate();
  treatment.Validate();
  if (baseline.patients != treatment.patients || baseline.horizon != treatment.horizon ||
      baseline.service_time != treatment.service_time) {
    throw Error(ErrorCode::kMismatchedConfigs,
                "baseline and treatment must share patients, horizon and service_time");
  }
  Comparison c;
  for (int i = 0; i < replications; ++i) {
    SimConfig b = baseline;
    SimConfig t = treatment;
    b.seed += static_cast<std::uint64_t>(i);
    t.seed += static_cast<std::uint64_t>(i);
    c.baseline_runs.push_back(Run(b));
    c.treatment_runs.push_back(Run(t));
    c.treatment_runs.back().reduction_vs_baseline =
        Reduction(c.baseline_runs.back().mean_wait, c.treatment_runs.back().mean_wait);
  }
  c.baseline = Pool(c.baseline_runs);
  c.treatment = Pool(c.treatment_runs);
  c.reduction = Reduction(c.baseline.mean_wait, c.treatment.mean_wait);
  c.treatment.reduction_vs_baseline = c.reduction;
  return c;
}

namespace {

using Row = std::array<std::string, 9>;

const Row kHeader{"policy", "patients", "mean",     "median",   "p90",
                      "max",    "idle",     "overtime", "reduction"};

Row MakeRow(const SimReport& r, const std::string& label, ReportFormat format) {
  std::string reduction = "-";
  if (r.reduction_vs_baseline) {
    reduction = fmt::format("{:.2f}{}", *r.reduction_vs_baseline * 100.0,
                            format == ReportFormat::kTable ? "%" : "");
  }
  return Row{label,
             std::to_string(r.patients),
             fmt::format("{:.2f}", r.mean_wait),
             fmt::format("{:.2f}", r.median_wait),
             std::to_string(r.p90_wait),
             std::to_string(r.max_wait),
             fmt::format("{:.2f}", r.idle_minutes),
             fmt::format("{:.2f}", r.overtime_minutes),
             reduction};
}

std::string Render(const std::vector<Row>& rows, ReportFormat format) {
  std::string out;
  if (format == ReportFormat::kDelimited) {
    for (const Row& row : rows) {
      for (size_t c = 0; c < row.size(); ++c) {
        out += row[c];
        out += c + 1 < row.size() ? ',' : '\n';
      }
    }
    return out;
  }
  std::array<size_t, 9> width{};
  for (const Row& row : rows) {
    for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const Row& row : rows) {
    std::string line;
    for (size_t c = 0; c < row.size(); ++c) {
      // Policy left-aligned, numbers right-aligned.
      line += c == 0 ? fmt::format("{:<{}}", row[c], width[c])
                     : fmt::format("  {:>{}}", row[c], width[c]);
    }
    out += line + '\n';
  }
  return out;
}

}  // namespace

std::string EmitReport(std::span<const SimReport> reports, ReportFormat format) {
  std::vector<Row> rows{kHeader};
  for (const SimReport& r : reports) rows.push_back(MakeRow(r, r.policy, format));
  return Render(rows, format);
}

std::string EmitComparison(const Comparison& c, ReportFormat format,
                           bool per_replication) {
  std::vector<Row> rows{kHeader};
  if (per_replication) {
    for (size_t i = 0; i < c.baseline_runs.size(); ++i) {
      const SimReport& b = c.baseline_runs[i];
      const SimReport& t = c.treatment_runs[i];
      rows.push_back(MakeRow(b, fmt::format("{}#{}", b.policy, i + 1), format));
      rows.push_back(MakeRow(t, fmt::format("{}#{}", t.policy, i + 1), format));
    }
  }
  rows.push_back(MakeRow(c.baseline, c.baseline.policy, format));
  rows.push_back(MakeRow(c.treatment, c.treatment.policy, format));
  return Render(rows, format);
}

}  // namespace mass::sim
