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

#include <algorithm>
#include <map>

#include <fmt/format.h>

#include "../test_support.h"
#include "harness.h"

namespace mass::harness {

namespace {

// True when a should be served before b: a larger priority value, then the
// smaller timestamp, then the smaller sequence number.
bool Better(const AppointmentRequest& a, const AppointmentRequest& b) {
  int pa = static_cast<int>(a.priority);
  int pb = static_cast<int>(b.priority);
  if (pa != pb) return pa > pb;
  if (a.submitted_at != b.submitted_at) return a.submitted_at < b.submitted_at;
  return a.sequence < b.sequence;
}

}  // namespace

scheduling::MatchPlan BruteForceMatch(std::span<const scheduling::TimeSlot> freed,
                                      std::span<const AppointmentRequest> pending,
                                      const scheduling::Compatibility& compatible) {
  scheduling::MatchPlan plan;
  std::vector<bool> taken(pending.size(), false);
  for (const auto& slot : freed) {
    std::optional<size_t> best;
    for (size_t i = 0; i < pending.size(); ++i) {
      const auto& r = pending[i];
      if (taken[i] || r.status != RequestStatus::kPending || !compatible(r, slot)) continue;
      if (!best || Better(r, pending[*best])) best = i;
    }
    if (best) {
      taken[*best] = true;
      plan.offers.push_back({pending[*best].id, slot.id});
    } else {
      plan.unmatched.push_back(slot.id);
    }
  }
  return plan;
}

MatchingStats RunMatchingOracle(int cases, int max_requests, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  const std::vector<DoctorId> doctors{DoctorId("d0"), DoctorId("d1"), DoctorId("d2")};
  const std::map<DoctorId, SpecialtyId> specialty{{doctors[0], SpecialtyId("cardiology")},
                                                  {doctors[1], SpecialtyId("cardiology")},
                                                  {doctors[2], SpecialtyId("pediatrics")}};
  auto compatible = [&](const AppointmentRequest& r, const scheduling::TimeSlot& s) {
    return FilterAccepts(r.filter, s.doctor, specialty.at(s.doctor), s.start);
  };

  MatchingStats stats;
  for (int c = 0; c < cases; ++c) {
    int n = uniform(0, max_requests);
    std::vector<AppointmentRequest> pending;
    for (int i = 0; i < n; ++i) {
      AppointmentRequest r;
      r.id = RequestId(fmt::format("r-{}", i));
      r.patient = PatientId(fmt::format("p-{}", uniform(0, 30)));
      r.priority = static_cast<PriorityClass>(uniform(0, 2));
      // Narrow time range so timestamps collide often.
      r.submitted_at = testing::At(7) + std::chrono::seconds(uniform(0, 20));
      r.sequence = static_cast<std::uint64_t>(i);
      switch (uniform(0, 3)) {
        case 0: r.filter.target = ByDoctor{doctors[uniform(0, 2)]}; break;
        case 1:
          r.filter.target = BySpecialty{uniform(0, 1) ? SpecialtyId("cardiology")
                                                      : SpecialtyId("pediatrics")};
          break;
        case 2: r.filter.target = ByDay{testing::TestDay()}; break;
        default: r.filter.target = ByDay{testing::TestDay() + std::chrono::days(1)}; break;
      }
      if (uniform(0, 3) == 0) {
        int from = uniform(8, 11);
        r.filter.preferred = TimeOfDayWindow{std::chrono::hours(from),
                                             std::chrono::hours(from + uniform(1, 3))};
      }
      int status = uniform(0, 9);
      r.status = status == 0   ? RequestStatus::kWithdrawn
                 : status == 1 ? RequestStatus::kOffered
                               : RequestStatus::kPending;
      pending.push_back(r);
    }
    std::shuffle(pending.begin(), pending.end(), rng);

    std::vector<scheduling::TimeSlot> freed;
    int k = uniform(1, 8);
    for (int i = 0; i < k; ++i) {
      scheduling::TimeSlot s;
      s.doctor = doctors[uniform(0, 2)];
      s.start = testing::At(uniform(8, 12), 10 * uniform(0, 4));
      s.duration = std::chrono::minutes(10);
      s.id = SlotId(fmt::format("{}-{}", s.doctor.str(), i));
      s.state = scheduling::SlotReleased{scheduling::FreedCause::kCancellation};
      freed.push_back(s);
    }

    auto got = scheduling::MatchFreedSlots(freed, pending, compatible);
    auto want = BruteForceMatch(freed, pending, compatible);
    ++stats.cases;
    stats.offers += static_cast<long>(want.offers.size());
    if (got != want && stats.mismatches++ == 0) {
      stats.first_mismatch = fmt::format("case {}: {} offers vs {} expected", c,
                                         got.offers.size(), want.offers.size());
    }
  }
  return stats;
}

std::vector<int> LindleyWaits(std::span<const int> arrivals, std::span<const int> services) {
  std::vector<int> waits;
  int free_at = 0;
  for (size_t i = 0; i < arrivals.size(); ++i) {
    int start = std::max(arrivals[i], free_at);
    waits.push_back(start - arrivals[i]);
    free_at = start + services[i];
  }
  return waits;
}

}  // namespace mass::harness
