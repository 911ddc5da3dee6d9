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

#ifndef MASS_SCHEDULING_MATCHING_H_
#define MASS_SCHEDULING_MATCHING_H_

#include <functional>
#include <span>
#include <vector>

#include "mass/core/ids.h"
#include "mass/core/request.h"
#include "mass/scheduling/slot.h"

namespace mass::scheduling {

struct Offer {
  RequestId request;
  SlotId slot;
  friend bool operator==(const Offer&, const Offer&) = default;
};

struct MatchPlan {
  std::vector<Offer> offers;
  // Freed slots no pending request could take; these get a broadcast.
  std::vector<SlotId> unmatched;
  friend bool operator==(const MatchPlan&, const MatchPlan&) = default;
};

using Compatibility =
    std::function<bool(const AppointmentRequest& request, const TimeSlot& slot)>;

// Offers each freed slot, in order, to the compatible Pending request that is
// first in queue order (priority desc, submitted_at asc). A request receives
// at most one offer per call. Pure: applying the plan (placing holds, sending
// notices) is the caller's job.
MatchPlan MatchFreedSlots(std::span<const TimeSlot> freed,
                          std::span<const AppointmentRequest> pending,
                          const Compatibility& compatible);

}  // namespace mass::scheduling

#endif  // MASS_SCHEDULING_MATCHING_H_
