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

#include "mass/core/appointment.h"

namespace mass {

std::string_view AppointmentStateName(AppointmentState s) {
  switch (s) {
    case AppointmentState::kActive: return "active";
    case AppointmentState::kCompleted: return "completed";
    case AppointmentState::kCancelled: return "cancelled";
    case AppointmentState::kPostponedByDoctor: return "postponed_by_doctor";
  }
  return "active";
}

std::optional<AppointmentState> ParseAppointmentState(std::string_view name) {
  if (name == "active") return AppointmentState::kActive;
  if (name == "completed") return AppointmentState::kCompleted;
  if (name == "cancelled") return AppointmentState::kCancelled;
  if (name == "postponed_by_doctor") return AppointmentState::kPostponedByDoctor;
  return std::nullopt;
}

}  // namespace mass
