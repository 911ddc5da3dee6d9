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

#include "mass/scheduling/slot_generator.h"

#include <fmt/format.h>

#include <algorithm>

#include "mass/core/error.h"

namespace mass::scheduling {

using std::chrono::hours;
using std::chrono::minutes;

void WaveTemplate::Validate() const {
  auto fail = [](const std::string& why) {
    throw Error(ErrorCode::kInvalidTemplate, "invalid wave template: " + why);
  };
  if (slot_length <= 0) fail("slot_length must be positive");
  if (wave_size < 2) fail("wave_size must be at least 2");
  if (catchup_window < 0) fail("catchup_window must be non-negative");
  if (slot_length + catchup_window > kHourLength) {
    fail("wave slot and catch-up window do not fit in one hour");
  }
  int used = slot_length * (1 + SequentialSlots()) + catchup_window;
  if (used > kHourLength) fail("slots and catch-up window exceed one hour");
}

SlotId MakeSlotId(const DoctorId& doctor, Timestamp start, int wave_index) {
  std::chrono::year_month_day ymd{DateOf(start)};
  auto since_midnight = start - Timestamp(DateOf(start));
  auto h = std::chrono::duration_cast<hours>(since_midnight);
  auto m = std::chrono::duration_cast<minutes>(since_midnight - h);
  return SlotId(fmt::format("{}-{:04d}{:02d}{:02d}{:02d}{:02d}-{}", doctor.str(),
                            static_cast<int>(ymd.year()),
                            static_cast<unsigned>(ymd.month()),
                            static_cast<unsigned>(ymd.day()), h.count(),
                            m.count(), wave_index));
}

std::vector<TimeSlot> GenerateSlots(const DoctorId& doctor,
                                    std::span<const Interval> working_hours,
                                    const WaveTemplate& wave) {
  wave.Validate();

  std::vector<Interval> sorted(working_hours.begin(), working_hours.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const Interval& a, const Interval& b) { return a.start < b.start; });
  for (size_t i = 0; i < sorted.size(); ++i) {
    const Interval& iv = sorted[i];
    bool aligned = iv.start.time_since_epoch() % hours(1) == std::chrono::seconds(0) &&
                   iv.end.time_since_epoch() % hours(1) == std::chrono::seconds(0);
    if (!aligned || iv.end <= iv.start) {
      throw Error(ErrorCode::kMisalignedHours,
                  fmt::format("working interval {}..{} is not whole-hour aligned",
                              FormatRfc3339(iv.start), FormatRfc3339(iv.end)));
    }
    if (i > 0 && sorted[i - 1].end > iv.start) {
      throw Error(ErrorCode::kMisalignedHours,
                  fmt::format("working interval starting {} overlaps the previous one",
                              FormatRfc3339(iv.start)));
    }
  }

  const minutes slot_length(wave.slot_length);
  std::vector<TimeSlot> slots;
  for (const Interval& iv : sorted) {
    for (Timestamp hour = iv.start; hour < iv.end; hour += hours(1)) {
      for (int w = 0; w < wave.wave_size; ++w) {
        slots.push_back(TimeSlot{.id = MakeSlotId(doctor, hour, w),
                                 .doctor = doctor,
                                 .start = hour,
                                 .duration = slot_length,
                                 .hour_position = 0,
                                 .wave_index = w});
      }
      for (int k = 1; k <= wave.SequentialSlots(); ++k) {
        Timestamp start = hour + slot_length * k;
        slots.push_back(TimeSlot{.id = MakeSlotId(doctor, start, 0),
                                 .doctor = doctor,
                                 .start = start,
                                 .duration = slot_length,
                                 .hour_position = k});
      }
    }
  }
  return slots;
}

}  // namespace mass::scheduling
