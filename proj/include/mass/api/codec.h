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

#ifndef MASS_API_CODEC_H_
#define MASS_API_CODEC_H_

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "mass/core/appointment.h"
#include "mass/core/request.h"
#include "mass/registry/records.h"
#include "mass/scheduling/slot.h"
#include "mass/ssc/scheduling_checkup.h"

namespace mass::api {

using nlohmann::json;

// Doctor body, shared by the API and the seed fixture:
//   {"id": "d1", "name": "...", "specialty": "cardiology",
//    "on_duty": true,
//    "working_hours": [{"day": "mon", "start": "08:00", "end": "12:00"}]}
// Parse failures throw Error(kValidation) naming the offending field,
// prefixed by `where` (e.g. "[2]").
registry::DoctorRecord DoctorFromJson(const json& j, const std::string& where = "");
json ToJson(const registry::DoctorRecord& doctor);

json ToJson(const scheduling::TimeSlot& slot);
json ToJson(const scheduling::HoldTicket& ticket);
json ToJson(const Appointment& appointment);
json ToJson(const registry::HistoryEntry& entry);
json ToJson(const AppointmentRequest& request);
json ToJson(const ssc::SpecialtySummary& summary);
json ToJson(const ssc::ScheduleView& view);
json ToJson(const RequestFilter& filter);

// {"by": "day", "date": "2026-10-16"} | {"by": "specialty", "specialty": "x"}
// | {"by": "doctor", "doctor": "d1"}, optional
// "preferred": {"from": "08:00", "to": "12:00"}. Throws kInvalidFilter.
RequestFilter FilterFromJson(const json& j);

// "HH:MM" -> minutes past midnight; "24:00" allowed.
std::optional<int> ParseClock(const std::string& text);
std::string FormatClock(int minutes);

}  // namespace mass::api

#endif  // MASS_API_CODEC_H_
