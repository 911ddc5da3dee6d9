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

#ifndef MASS_SCHEDULING_SLOT_H_
#define MASS_SCHEDULING_SLOT_H_

#include <chrono>
#include <string_view>
#include <variant>

#include "mass/core/ids.h"
#include "mass/core/time.h"

namespace mass::scheduling {

enum class FreedCause { kCancellation, kPostponement };

std::string_view FreedCauseName(FreedCause c);

struct SlotAvailable {
  friend bool operator==(const SlotAvailable&, const SlotAvailable&) = default;
};
struct SlotHeld {
  PatientId holder;
  TicketId ticket;
  Timestamp expires_at;
  friend bool operator==(const SlotHeld&, const SlotHeld&) = default;
};
struct SlotBooked {
  AppointmentId appointment;
  friend bool operator==(const SlotBooked&, const SlotBooked&) = default;
};
// Bookable like Available, but remembers why it was freed.
struct SlotReleased {
  FreedCause cause;
  friend bool operator==(const SlotReleased&, const SlotReleased&) = default;
};
struct SlotRetired {
  friend bool operator==(const SlotRetired&, const SlotRetired&) = default;
};

using SlotState =
    std::variant<SlotAvailable, SlotHeld, SlotBooked, SlotReleased, SlotRetired>;

enum class SlotStatus { kAvailable, kHeld, kBooked, kReleased, kRetired };

std::string_view SlotStatusName(SlotStatus s);
SlotStatus StatusOf(const SlotState& state);

// Available->Held, Held->Booked, Held->Available, Booked->Released,
// Released->Held, Available->Retired, Released->Retired.
bool IsLegalTransition(SlotStatus from, SlotStatus to);

struct TimeSlot {
  SlotId id;
  DoctorId doctor;
  Timestamp start;
  std::chrono::minutes duration{0};
  // 0 for the wave slot at the top of the hour, k for the k-th sequential slot.
  int hour_position = 0;
  // Distinguishes the patients sharing a wave start; 0 elsewhere.
  int wave_index = 0;
  SlotState state = SlotAvailable{};

  SlotStatus status() const { return StatusOf(state); }
  bool bookable() const {
    auto s = status();
    return s == SlotStatus::kAvailable || s == SlotStatus::kReleased;
  }
  Timestamp end() const { return start + duration; }

  friend bool operator==(const TimeSlot&, const TimeSlot&) = default;
};

struct HoldTicket {
  TicketId id;
  SlotId slot;
  PatientId patient;
  Timestamp issued_at;
  Timestamp expires_at;
};

struct FreedSlotEvent {
  SlotId slot;
  FreedCause cause;
  Timestamp occurred_at;
};

}  // namespace mass::scheduling

#endif  // MASS_SCHEDULING_SLOT_H_
