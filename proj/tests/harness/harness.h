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

#ifndef MASS_TESTS_HARNESS_HARNESS_H_
#define MASS_TESTS_HARNESS_HARNESS_H_

// Randomized and oracle-driven checks shared by the unit suites and the
// acceptance binary.

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "mass/core/request.h"
#include "mass/scheduling/matching.h"
#include "mass/scheduling/slot.h"

namespace mass::harness {

struct BookingStats {
  int sequences = 0;
  long operations = 0;
  long rejected = 0;
  long transitions = 0;
  long violations = 0;
  std::string first_violation;
};

// Random hold / confirm / abandon / expire / cancel / postpone sequences over
// five doctors. After every operation: at most one live hold or active
// appointment per slot, slot state agrees with tickets and appointments, and
// a rejected operation left the calendar untouched. Every transition is
// checked against the legal set as it happens.
BookingStats RunBookingSequences(int sequences, std::uint64_t seed);

// Reference matcher: for each freed slot in order, scan the whole pending list
// for the best untaken compatible request. Deliberately naive.
scheduling::MatchPlan BruteForceMatch(std::span<const scheduling::TimeSlot> freed,
                                      std::span<const AppointmentRequest> pending,
                                      const scheduling::Compatibility& compatible);

struct MatchingStats {
  int cases = 0;
  int mismatches = 0;
  long offers = 0;
  std::string first_mismatch;
};

// Random queues of up to `max_requests` requests with colliding priorities
// and timestamps, shuffled input order, 1-8 freed slots over three doctors.
MatchingStats RunMatchingOracle(int cases, int max_requests, std::uint64_t seed);

// Single-server recursion start_i = max(arrival_i, end_{i-1}), patients taken
// in the given order. Returns the waits.
std::vector<int> LindleyWaits(std::span<const int> arrivals, std::span<const int> services);

struct RaceStats {
  int rounds = 0;
  int exactly_one_winner = 0;
  int ok = 0;
  int conflict = 0;
  int other = 0;
  std::string first_anomaly;
};

// Starts the HTTP API on a loopback port and, for each round, fires two
// patients' hold requests at the same fresh slot from two threads released
// together.
RaceStats RaceHoldsOverHttp(int rounds);

}  // namespace mass::harness

#endif  // MASS_TESTS_HARNESS_HARNESS_H_
