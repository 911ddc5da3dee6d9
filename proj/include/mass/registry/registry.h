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

#ifndef MASS_REGISTRY_REGISTRY_H_
#define MASS_REGISTRY_REGISTRY_H_

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mass/core/appointment.h"
#include "mass/registry/credentials.h"
#include "mass/registry/records.h"
#include "mass/registry/store.h"
#include "mass/scheduling/scheduler.h"

namespace mass::registry {

struct RegistryOptions {
  HashParams hash = HashParams::Interactive();
  std::chrono::seconds session_ttl = std::chrono::hours(24);
};

struct Principal {
  AccountId account;
  Role role = Role::kPatient;
  std::optional<DoctorId> doctor;

  PatientId patient() const { return PatientId(account.str()); }
};

struct Session {
  std::string token;
  Principal principal;
  Timestamp expires_at;
};

// Accounts, the doctor/specialty directory, appointment records and visit
// history. Every record family is cached in memory and written through to the
// Store; reads never touch the store after construction.
class Registry final : public scheduling::AppointmentLedger {
 public:
  explicit Registry(std::unique_ptr<Store> store, RegistryOptions options = {});

  // Patient signup. Throws kUsernameTaken, kWeakCredential (< 8 chars),
  // kValidation (empty username).
  PatientId RegisterUser(std::string_view username, std::string_view credential,
                         Timestamp now);
  AccountId RegisterDoctorAccount(std::string_view username,
                                  std::string_view credential,
                                  const DoctorId& doctor, Timestamp now);

  // Throws kInvalidCredentials for an unknown user and for a wrong credential
  // alike; both paths run one hash verification.
  Session Authenticate(std::string_view username, std::string_view credential,
                       Timestamp now);
  std::optional<Principal> ValidateSession(std::string_view token,
                                           Timestamp now) const;
  void RevokeSession(std::string_view token);

  bool PatientExists(const PatientId& patient) const;
  std::optional<Account> FindAccountByUsername(std::string_view username) const;

  void AddSpecialty(const Specialty& specialty);
  std::vector<Specialty> Specialties() const;
  bool HasSpecialty(const SpecialtyId& id) const;

  // Throws kUnknownSpecialty, kValidation for malformed weekly hours.
  void UpsertDoctor(const DoctorRecord& doctor);
  std::optional<DoctorRecord> FindDoctor(const DoctorId& id) const;
  std::vector<DoctorRecord> Doctors() const;

  Appointment CreateAppointment(const PatientId& patient,
                                const scheduling::TimeSlot& slot,
                                Timestamp now) override;
  std::optional<Appointment> FindAppointment(const AppointmentId& id) const override;
  void SetAppointmentState(const AppointmentId& id, AppointmentState state,
                           Timestamp now) override;
  void CompleteAppointment(const AppointmentId& id, std::string outcome_note,
                           Timestamp now);
  std::vector<Appointment> Appointments() const;
  std::vector<Appointment> AppointmentsOf(const PatientId& patient) const;

  // Appends a visit record for the appointment; the appointment's patient,
  // doctor and start fill the corresponding entry fields. Throws
  // kUnknownAppointment.
  HistoryEntry RecordHistory(const AppointmentId& appointment, HistoryEntry entry);
  // All of the patient's entries, recorded_at ascending. Throws kUnknownPatient.
  std::vector<HistoryEntry> FetchHistory(const PatientId& patient) const;

 private:
  AccountId InsertAccount(std::string_view username, std::string_view credential,
                          Role role, std::optional<DoctorId> doctor, Timestamp now);

  std::unique_ptr<Store> store_;
  RegistryOptions options_;
  std::string dummy_verifier_;

  mutable std::shared_mutex mu_;
  std::map<AccountId, Account> accounts_;
  std::unordered_map<std::string, AccountId> by_username_;
  std::map<SpecialtyId, Specialty> specialties_;
  std::map<DoctorId, DoctorRecord> doctors_;
  std::map<AppointmentId, Appointment> appointments_;
  std::vector<HistoryEntry> history_;

  mutable std::shared_mutex session_mu_;
  std::unordered_map<std::string, Session> sessions_;
};

}  // namespace mass::registry

#endif  // MASS_REGISTRY_REGISTRY_H_
