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

#include "mass/core/request.h"

namespace mass {

std::string_view PriorityName(PriorityClass p) {
  switch (p) {
    case PriorityClass::kRoutine: return "routine";
    case PriorityClass::kUrgent: return "urgent";
    case PriorityClass::kEmergency: return "emergency";
  }
  return "routine";
}

std::optional<PriorityClass> ParsePriority(std::string_view name) {
  if (name == "routine") return PriorityClass::kRoutine;
  if (name == "urgent") return PriorityClass::kUrgent;
  if (name == "emergency") return PriorityClass::kEmergency;
  return std::nullopt;
}

std::string_view RequestStatusName(RequestStatus s) {
  switch (s) {
    case RequestStatus::kPending: return "pending";
    case RequestStatus::kOffered: return "offered";
    case RequestStatus::kFulfilled: return "fulfilled";
    case RequestStatus::kWithdrawn: return "withdrawn";
  }
  return "pending";
}

bool FilterAccepts(const RequestFilter& filter, const DoctorId& doctor,
                   const SpecialtyId& doctor_specialty, Timestamp slot_start) {
  bool target_ok = std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, ByDay>) {
          return DateOf(slot_start) == t.date;
        } else if constexpr (std::is_same_v<T, BySpecialty>) {
          return doctor_specialty == t.specialty;
        } else {
          return doctor == t.doctor;
        }
      },
      filter.target);
  if (!target_ok) return false;
  if (filter.preferred) {
    auto tod = std::chrono::duration_cast<std::chrono::minutes>(
        slot_start - Timestamp(DateOf(slot_start)));
    return filter.preferred->from <= tod && tod < filter.preferred->to;
  }
  return true;
}

}  // namespace mass
