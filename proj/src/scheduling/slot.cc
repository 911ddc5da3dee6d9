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

#include "mass/scheduling/slot.h"

namespace mass::scheduling {

std::string_view FreedCauseName(FreedCause c) {
  return c == FreedCause::kCancellation ? "cancellation" : "postponement";
}

std::string_view SlotStatusName(SlotStatus s) {
  switch (s) {
    case SlotStatus::kAvailable: return "available";
    case SlotStatus::kHeld: return "held";
    case SlotStatus::kBooked: return "booked";
    case SlotStatus::kReleased: return "released";
    case SlotStatus::kRetired: return "retired";
  }
  return "available";
}

SlotStatus StatusOf(const SlotState& state) {
  return static_cast<SlotStatus>(state.index());
}

bool IsLegalTransition(SlotStatus from, SlotStatus to) {
  using S = SlotStatus;
  switch (from) {
    case S::kAvailable: return to == S::kHeld || to == S::kRetired;
    case S::kHeld: return to == S::kBooked || to == S::kAvailable;
    case S::kBooked: return to == S::kReleased;
    case S::kReleased: return to == S::kHeld || to == S::kRetired;
    case S::kRetired: return false;
  }
  return false;
}

}  // namespace mass::scheduling
