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

#include "mass/registry/records.h"

#include <algorithm>

namespace mass::registry {

std::string_view RoleName(Role r) {
  return r == Role::kDoctor ? "doctor" : "patient";
}

std::vector<Interval> WorkingIntervalsOn(const DoctorRecord& doctor, Date date) {
  std::vector<Interval> out;
  unsigned weekday = IsoWeekdayIndex(date);
  for (const WeeklyHours& block : doctor.working_hours) {
    if (block.weekday != weekday) continue;
    out.push_back(Interval{Timestamp(date) + block.start, Timestamp(date) + block.end});
  }
  std::sort(out.begin(), out.end(),
            [](const Interval& a, const Interval& b) { return a.start < b.start; });
  return out;
}

}  // namespace mass::registry
