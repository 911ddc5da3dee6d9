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

#include "mass/api/codec.h"

#include <fmt/format.h>

#include <array>

#include "mass/core/error.h"

namespace mass::api {

namespace {

constexpr std::array<const char*, 7> kDays{"mon", "tue", "wed", "thu", "fri", "sat", "sun"};

[[noreturn]] void BadField(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::kValidation, fmt::format("field '{}': {}", field, why));
}

const json& Require(const json& j, const std::string& where, const char* key) {
  if (!j.is_object()) BadField(where.empty() ? key : where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) BadField(where + (where.empty() ? "" : ".") + key, "is required");
  return *it;
}

std::string RequireString(const json& j, const std::string& where, const char* key) {
  const json& v = Require(j, where, key);
  if (!v.is_string() || v.get<std::string>().empty()) {
    BadField(where + (where.empty() ? "" : ".") + key, "expected a non-empty string");
  }
  return v.get<std::string>();
}

std::string Field(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

}  // namespace

std::optional<int> ParseClock(const std::string& text) {
  if (text.size() != 5 || text[2] != ':') return std::nullopt;
  for (size_t i : {0, 1, 3, 4}) {
    if (text[i] < '0' || text[i] > '9') return std::nullopt;
  }
  int h = (text[0] - '0') * 10 + (text[1] - '0');
  int m = (text[3] - '0') * 10 + (text[4] - '0');
  if (m > 59 || h > 24 || (h == 24 && m != 0)) return std::nullopt;
  return h * 60 + m;
}

std::string FormatClock(int minutes) {
  return fmt::format("{:02d}:{:02d}", minutes / 60, minutes % 60);
}

registry::DoctorRecord DoctorFromJson(const json& j, const std::string& where) {
  if (!j.is_object()) BadField(where.empty() ? "doctor" : where, "expected an object");
  registry::DoctorRecord d;
  d.id = DoctorId(RequireString(j, where, "id"));
  d.name = RequireString(j, where, "name");
  d.specialty = SpecialtyId(RequireString(j, where, "specialty"));
  if (auto it = j.find("on_duty"); it != j.end()) {
    if (!it->is_boolean()) BadField(Field(where, "on_duty"), "expected true or false");
    d.on_duty = it->get<bool>();
  }
  if (auto it = j.find("working_hours"); it != j.end()) {
    std::string hw = Field(where, "working_hours");
    if (!it->is_array()) BadField(hw, "expected an array");
    for (size_t i = 0; i < it->size(); ++i) {
      const json& block = (*it)[i];
      std::string bw = fmt::format("{}[{}]", hw, i);
      std::string day = RequireString(block, bw, "day");
      auto found = std::find(kDays.begin(), kDays.end(), day);
      if (found == kDays.end()) BadField(bw + ".day", "expected mon..sun");
      int bounds[2];
      const char* keys[2] = {"start", "end"};
      for (int k = 0; k < 2; ++k) {
        auto minutes = ParseClock(RequireString(block, bw, keys[k]));
        if (!minutes) BadField(bw + "." + keys[k], "expected HH:MM");
        if (*minutes % 60 != 0) BadField(bw + "." + keys[k], "must be a whole hour");
        bounds[k] = *minutes / 60;
      }
      if (bounds[0] >= bounds[1]) BadField(bw + ".end", "must be after start");
      d.working_hours.push_back(
          registry::WeeklyHours{static_cast<unsigned>(found - kDays.begin()),
                                std::chrono::hours(bounds[0]),
                                std::chrono::hours(bounds[1])});
    }
  }
  return d;
}

json ToJson(const registry::DoctorRecord& d) {
  json hours = json::array();
  for (const auto& h : d.working_hours) {
    hours.push_back({{"day", kDays[h.weekday]},
                     {"start", FormatClock(static_cast<int>(h.start.count()) * 60)},
                     {"end", FormatClock(static_cast<int>(h.end.count()) * 60)}});
  }
  return {{"id", d.id.str()},
          {"name", d.name},
          {"specialty", d.specialty.str()},
          {"on_duty", d.on_duty},
          {"working_hours", std::move(hours)}};
}

json ToJson(const scheduling::TimeSlot& s) {
  std::chrono::year_month_day ymd{DateOf(s.start)};
  return {{"slot_id", s.id.str()},
          {"doctor_id", s.doctor.str()},
          {"start", FormatRfc3339(s.start)},
          {"date", FormatDate(DateOf(s.start))},
          {"year", static_cast<int>(ymd.year())},
          {"month", static_cast<unsigned>(ymd.month())},
          {"day", static_cast<unsigned>(ymd.day())},
          {"time", FormatTimeOfDay(s.start)},
          {"duration", s.duration.count()},
          {"hour_position", s.hour_position},
          {"wave_index", s.wave_index},
          {"state", scheduling::SlotStatusName(s.status())}};
}

json ToJson(const scheduling::HoldTicket& t) {
  return {{"ticket_id", t.id.str()},
          {"slot_id", t.slot.str()},
          {"patient_id", t.patient.str()},
          {"issued_at", FormatRfc3339(t.issued_at)},
          {"expires_at", FormatRfc3339(t.expires_at)}};
}

json ToJson(const Appointment& a) {
  return {{"appointment_id", a.id.str()},
          {"patient_id", a.patient.str()},
          {"doctor_id", a.doctor.str()},
          {"slot_id", a.slot.str()},
          {"start", FormatRfc3339(a.slot_start)},
          {"duration", a.duration.count()},
          {"state", AppointmentStateName(a.state)},
          {"outcome_note", a.outcome_note},
          {"recorded_at", FormatRfc3339(a.recorded_at)}};
}

json ToJson(const registry::HistoryEntry& e) {
  return {{"appointment_id", e.appointment.str()},
          {"patient_id", e.patient.str()},
          {"doctor_id", e.doctor.str()},
          {"clinic", e.clinic},
          {"visit_time", FormatRfc3339(e.visit_time)},
          {"recorded_at", FormatRfc3339(e.recorded_at)},
          {"summary", e.summary},
          {"treatment", e.treatment},
          {"notes", e.notes}};
}

json ToJson(const RequestFilter& f) {
  json out = std::visit(
      [](const auto& t) -> json {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, ByDay>) {
          return {{"by", "day"}, {"date", FormatDate(t.date)}};
        } else if constexpr (std::is_same_v<T, BySpecialty>) {
          return {{"by", "specialty"}, {"specialty", t.specialty.str()}};
        } else {
          return {{"by", "doctor"}, {"doctor", t.doctor.str()}};
        }
      },
      f.target);
  if (f.preferred) {
    out["preferred"] = {{"from", FormatClock(static_cast<int>(f.preferred->from.count()))},
                        {"to", FormatClock(static_cast<int>(f.preferred->to.count()))}};
  }
  return out;
}

json ToJson(const AppointmentRequest& r) {
  return {{"request_id", r.id.str()},
          {"patient_id", r.patient.str()},
          {"filter", ToJson(r.filter)},
          {"priority", PriorityName(r.priority)},
          {"submitted_at", FormatRfc3339(r.submitted_at)},
          {"status", RequestStatusName(r.status)}};
}

json ToJson(const ssc::SpecialtySummary& s) {
  return {{"id", s.id.str()}, {"name", s.name}, {"doctor_count", s.doctor_count}};
}

json ToJson(const ssc::ScheduleView& v) {
  json intervals = json::array();
  for (const Interval& iv : v.working_intervals) {
    intervals.push_back({{"start", FormatRfc3339(iv.start)}, {"end", FormatRfc3339(iv.end)}});
  }
  json slots = json::array();
  for (const auto& s : v.available) slots.push_back(ToJson(s));
  return {{"doctor", ToJson(v.doctor)},
          {"specialty", v.doctor.specialty.str()},
          {"on_duty", v.doctor.on_duty},
          {"date", FormatDate(v.date)},
          {"working_intervals", std::move(intervals)},
          {"available", !v.available.empty()},
          {"slots", std::move(slots)}};
}

RequestFilter FilterFromJson(const json& j) {
  auto bad = [](const std::string& why) -> void {
    throw Error(ErrorCode::kInvalidFilter, "filter: " + why);
  };
  if (!j.is_object()) bad("expected an object");
  auto by = j.find("by");
  if (by == j.end() || !by->is_string()) bad("'by' must be day, specialty or doctor");
  auto text = [&](const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string() || it->get<std::string>().empty()) {
      bad(fmt::format("'{}' must be a non-empty string", key));
    }
    return it->get<std::string>();
  };
  RequestFilter f;
  std::string kind = by->get<std::string>();
  // Exactly one variant: a filter naming a second target is rejected.
  int targets = j.contains("date") + j.contains("specialty") + j.contains("doctor");
  if (targets != 1) bad("exactly one of date, specialty, doctor is required");
  if (kind == "day") {
    auto date = ParseDate(text("date"));
    if (!date) bad("'date' must be YYYY-MM-DD");
    f.target = ByDay{*date};
  } else if (kind == "specialty") {
    f.target = BySpecialty{SpecialtyId(text("specialty"))};
  } else if (kind == "doctor") {
    f.target = ByDoctor{DoctorId(text("doctor"))};
  } else {
    bad("'by' must be day, specialty or doctor");
  }
  if (auto p = j.find("preferred"); p != j.end()) {
    if (!p->is_object()) bad("'preferred' must be an object");
    auto from = p->contains("from") && (*p)["from"].is_string()
                    ? ParseClock((*p)["from"].get<std::string>())
                    : std::nullopt;
    auto to = p->contains("to") && (*p)["to"].is_string()
                  ? ParseClock((*p)["to"].get<std::string>())
                  : std::nullopt;
    if (!from || !to || *from >= *to) bad("'preferred' needs from < to as HH:MM");
    f.preferred = TimeOfDayWindow{std::chrono::minutes(*from), std::chrono::minutes(*to)};
  }
  return f;
}

}  // namespace mass::api
