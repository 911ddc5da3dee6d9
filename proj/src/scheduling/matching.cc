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

#include "mass/scheduling/matching.h"

#include <algorithm>
#include <numeric>

namespace mass::scheduling {

MatchPlan MatchFreedSlots(std::span<const TimeSlot> freed,
                          std::span<const AppointmentRequest> pending,
                          const Compatibility& compatible) {
  std::vector<size_t> order;
  order.reserve(pending.size());
  for (size_t i = 0; i < pending.size(); ++i) {
    if (pending[i].status == RequestStatus::kPending) order.push_back(i);
  }
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return QueueOrderBefore(pending[a], pending[b]);
  });

  MatchPlan plan;
  std::vector<bool> taken(order.size(), false);
  for (const TimeSlot& slot : freed) {
    bool matched = false;
    for (size_t k = 0; k < order.size(); ++k) {
      if (taken[k]) continue;
      const AppointmentRequest& request = pending[order[k]];
      if (!compatible(request, slot)) continue;
      taken[k] = true;
      plan.offers.push_back(Offer{request.id, slot.id});
      matched = true;
      break;
    }
    if (!matched) plan.unmatched.push_back(slot.id);
  }
  return plan;
}

}  // namespace mass::scheduling
