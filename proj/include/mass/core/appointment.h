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

#ifndef MASS_CORE_APPOINTMENT_H_
#define MASS_CORE_APPOINTMENT_H_

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

#include "mass/core/ids.h"
#include "mass/core/time.h"

namespace mass {

enum class AppointmentState { kActive, kCompleted, kCancelled, kPostponedByDoctor };

std::string_view AppointmentStateName(AppointmentState s);
std::optional<AppointmentState> ParseAppointmentState(std::string_view name);

// Active -> {Completed, Cancelled, PostponedByDoctor}; terminal otherwise.
inline bool IsLegalAppointmentTransition(AppointmentState from,
                                         AppointmentState to) {
  return from == AppointmentState::kActive && to != AppointmentState::kActive;
}

struct Appointment {
  AppointmentId id;
  PatientId patient;
  DoctorId doctor;
  SlotId slot;
  Timestamp slot_start;
  std::chrono::minutes duration{0};
  AppointmentState state = AppointmentState::kActive;
  std::string outcome_note;
  Timestamp recorded_at;

  friend bool operator==(const Appointment&, const Appointment&) = default;
};

}  // namespace mass

#endif  // MASS_CORE_APPOINTMENT_H_
