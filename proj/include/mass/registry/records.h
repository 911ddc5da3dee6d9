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

#ifndef MASS_REGISTRY_RECORDS_H_
#define MASS_REGISTRY_RECORDS_H_

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mass/core/ids.h"
#include "mass/core/time.h"

namespace mass::registry {

enum class Role { kPatient, kDoctor };

std::string_view RoleName(Role r);

struct Account {
  AccountId id;
  std::string username;
  // libsodium pwhash string; never the credential itself.
  std::string credential_hash;
  Role role = Role::kPatient;
  // Set for doctor accounts.
  std::optional<DoctorId> doctor;
  Timestamp created_at;

  friend bool operator==(const Account&, const Account&) = default;
};

// One recurring block of a doctor's week, e.g. Monday 08:00-12:00.
struct WeeklyHours {
  unsigned weekday = 0;  // 0 = Monday
  std::chrono::hours start{0};
  std::chrono::hours end{0};
  friend bool operator==(const WeeklyHours&, const WeeklyHours&) = default;
};

struct Specialty {
  SpecialtyId id;
  std::string name;
  friend bool operator==(const Specialty&, const Specialty&) = default;
};

struct DoctorRecord {
  DoctorId id;
  std::string name;
  SpecialtyId specialty;
  std::vector<WeeklyHours> working_hours;
  bool on_duty = true;
  friend bool operator==(const DoctorRecord&, const DoctorRecord&) = default;
};

// Expands a doctor's weekly hours into concrete intervals for one date.
std::vector<Interval> WorkingIntervalsOn(const DoctorRecord& doctor, Date date);

// A clinic-card style visit summary.
struct HistoryEntry {
  std::int64_t sequence = 0;
  AppointmentId appointment;
  PatientId patient;
  DoctorId doctor;
  std::string clinic;
  Timestamp visit_time;
  Timestamp recorded_at;
  std::string summary;
  std::string treatment;
  std::string notes;
  friend bool operator==(const HistoryEntry&, const HistoryEntry&) = default;
};

}  // namespace mass::registry

#endif  // MASS_REGISTRY_RECORDS_H_
