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

#ifndef MASS_SCHEDULING_SLOT_GENERATOR_H_
#define MASS_SCHEDULING_SLOT_GENERATOR_H_

#include <span>
#include <vector>

#include "mass/core/ids.h"
#include "mass/core/time.h"
#include "mass/scheduling/slot.h"
#include "mass/scheduling/wave_template.h"

namespace mass::scheduling {

// Deterministic: the same doctor, start and wave index always give the same
// id, so regenerating a calendar is idempotent. Format
// "<doctor>-<YYYYMMDDHHMM>-<wave_index>".
SlotId MakeSlotId(const DoctorId& doctor, Timestamp start, int wave_index);

// Lays the wave template over every whole hour of `working_hours`. Intervals
// must start and end on the hour and must not overlap; otherwise throws
// Error(kMisalignedHours). An invalid template throws Error(kInvalidTemplate).
// Output is sorted by (start, wave_index), all slots Available.
std::vector<TimeSlot> GenerateSlots(const DoctorId& doctor,
                                    std::span<const Interval> working_hours,
                                    const WaveTemplate& wave);

}  // namespace mass::scheduling

#endif  // MASS_SCHEDULING_SLOT_GENERATOR_H_
