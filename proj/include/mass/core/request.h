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

#ifndef MASS_CORE_REQUEST_H_
#define MASS_CORE_REQUEST_H_

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>

#include "mass/core/ids.h"
#include "mass/core/time.h"

namespace mass {

// Emergency > Urgent > Routine. The underlying values carry the order.
enum class PriorityClass : int {
  kRoutine = 0,
  kUrgent = 1,
  kEmergency = 2,
};

std::string_view PriorityName(PriorityClass p);
std::optional<PriorityClass> ParsePriority(std::string_view name);

struct ByDay {
  Date date;
  friend bool operator==(const ByDay&, const ByDay&) = default;
};
struct BySpecialty {
  SpecialtyId specialty;
  friend bool operator==(const BySpecialty&, const BySpecialty&) = default;
};
struct ByDoctor {
  DoctorId doctor;
  friend bool operator==(const ByDoctor&, const ByDoctor&) = default;
};

// Minutes past midnight, half-open.
struct TimeOfDayWindow {
  std::chrono::minutes from{0};
  std::chrono::minutes to{24 * 60};
  friend bool operator==(const TimeOfDayWindow&, const TimeOfDayWindow&) = default;
};

struct RequestFilter {
  std::variant<ByDay, BySpecialty, ByDoctor> target;
  std::optional<TimeOfDayWindow> preferred;
  friend bool operator==(const RequestFilter&, const RequestFilter&) = default;
};

// True when a slot of `doctor` (who practices `doctor_specialty`) starting at
// `slot_start` satisfies the filter.
bool FilterAccepts(const RequestFilter& filter, const DoctorId& doctor,
                   const SpecialtyId& doctor_specialty, Timestamp slot_start);

enum class RequestStatus { kPending, kOffered, kFulfilled, kWithdrawn };

std::string_view RequestStatusName(RequestStatus s);

struct AppointmentRequest {
  RequestId id;
  PatientId patient;
  RequestFilter filter;
  PriorityClass priority = PriorityClass::kRoutine;
  Timestamp submitted_at;
  // Issue order; breaks (priority, submitted_at) ties deterministically.
  std::uint64_t sequence = 0;
  RequestStatus status = RequestStatus::kPending;
};

// Queue order: priority descending, then submitted_at ascending, then issue
// order.
inline bool QueueOrderBefore(const AppointmentRequest& a,
                             const AppointmentRequest& b) {
  if (a.priority != b.priority) return a.priority > b.priority;
  if (a.submitted_at != b.submitted_at) return a.submitted_at < b.submitted_at;
  return a.sequence < b.sequence;
}

}  // namespace mass

#endif  // MASS_CORE_REQUEST_H_
