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

#include "mass/registry/registry.h"

#include <fmt/format.h>

#include <algorithm>
#include <mutex>

#include "mass/core/error.h"

namespace mass::registry {

Registry::Registry(std::unique_ptr<Store> store, RegistryOptions options)
    : store_(std::move(store)), options_(options) {
  dummy_verifier_ = HashCredential("not-a-real-credential", options_.hash);
  for (Account& a : store_->LoadAccounts()) {
    by_username_.emplace(a.username, a.id);
    AccountId id = a.id;
    accounts_.emplace(std::move(id), std::move(a));
  }
  for (Specialty& s : store_->LoadSpecialties()) specialties_.emplace(s.id, s);
  for (DoctorRecord& d : store_->LoadDoctors()) doctors_.emplace(d.id, d);
  for (Appointment& a : store_->LoadAppointments()) appointments_.emplace(a.id, a);
  history_ = store_->LoadHistory();
}

AccountId Registry::InsertAccount(std::string_view username,
                                  std::string_view credential, Role role,
                                  std::optional<DoctorId> doctor, Timestamp now) {
  if (username.empty()) {
    throw Error(ErrorCode::kValidation, "username must not be empty");
  }
  if (credential.size() < kMinCredentialLength) {
    throw Error(ErrorCode::kWeakCredential,
                fmt::format("credential must be at least {} characters",
                            kMinCredentialLength));
  }
  {
    std::shared_lock lock(mu_);
    if (by_username_.contains(std::string(username))) {
      throw Error(ErrorCode::kUsernameTaken, "username is taken");
    }
  }
  // Hash outside the lock; it is deliberately slow.
  std::string verifier = HashCredential(credential, options_.hash);

  std::unique_lock lock(mu_);
  if (by_username_.contains(std::string(username))) {
    throw Error(ErrorCode::kUsernameTaken, "username is taken");
  }
  Account account{.id = AccountId(fmt::format("p-{}", store_->NextSequence("account"))),
                  .username = std::string(username),
                  .credential_hash = std::move(verifier),
                  .role = role,
                  .doctor = std::move(doctor),
                  .created_at = now};
  store_->PutAccount(account);
  by_username_.emplace(account.username, account.id);
  AccountId id = account.id;
  accounts_.emplace(id, std::move(account));
  return id;
}

PatientId Registry::RegisterUser(std::string_view username,
                                 std::string_view credential, Timestamp now) {
  return PatientId(
      InsertAccount(username, credential, Role::kPatient, std::nullopt, now).str());
}

AccountId Registry::RegisterDoctorAccount(std::string_view username,
                                          std::string_view credential,
                                          const DoctorId& doctor, Timestamp now) {
  if (!FindDoctor(doctor)) {
    throw Error(ErrorCode::kUnknownDoctor, "unknown doctor " + doctor.str());
  }
  return InsertAccount(username, credential, Role::kDoctor, doctor, now);
}

Session Registry::Authenticate(std::string_view username,
                               std::string_view credential, Timestamp now) {
  std::optional<Account> account = FindAccountByUsername(username);
  const std::string& verifier =
      account ? account->credential_hash : dummy_verifier_;
  bool ok = VerifyCredential(verifier, credential);
  if (!account || !ok) {
    throw Error(ErrorCode::kInvalidCredentials, "invalid username or credential");
  }
  Session session{.token = RandomToken(),
                  .principal = Principal{account->id, account->role, account->doctor},
                  .expires_at = now + options_.session_ttl};
  std::unique_lock lock(session_mu_);
  sessions_.emplace(session.token, session);
  return session;
}

std::optional<Principal> Registry::ValidateSession(std::string_view token,
                                                   Timestamp now) const {
  std::shared_lock lock(session_mu_);
  auto it = sessions_.find(std::string(token));
  if (it == sessions_.end() || now >= it->second.expires_at) return std::nullopt;
  return it->second.principal;
}

void Registry::RevokeSession(std::string_view token) {
  std::unique_lock lock(session_mu_);
  sessions_.erase(std::string(token));
}

bool Registry::PatientExists(const PatientId& patient) const {
  std::shared_lock lock(mu_);
  auto it = accounts_.find(AccountId(patient.str()));
  return it != accounts_.end() && it->second.role == Role::kPatient;
}

std::optional<Account> Registry::FindAccountByUsername(std::string_view username) const {
  std::shared_lock lock(mu_);
  auto it = by_username_.find(std::string(username));
  if (it == by_username_.end()) return std::nullopt;
  return accounts_.at(it->second);
}

void Registry::AddSpecialty(const Specialty& specialty) {
  if (specialty.id.empty()) {
    throw Error(ErrorCode::kValidation, "specialty id must not be empty");
  }
  std::unique_lock lock(mu_);
  store_->PutSpecialty(specialty);
  specialties_[specialty.id] = specialty;
}

std::vector<Specialty> Registry::Specialties() const {
  std::shared_lock lock(mu_);
  std::vector<Specialty> out;
  for (const auto& [id, s] : specialties_) out.push_back(s);
  return out;
}

bool Registry::HasSpecialty(const SpecialtyId& id) const {
  std::shared_lock lock(mu_);
  return specialties_.contains(id);
}

void Registry::UpsertDoctor(const DoctorRecord& doctor) {
  if (doctor.id.empty()) throw Error(ErrorCode::kValidation, "doctor id must not be empty");
  std::vector<WeeklyHours> hours = doctor.working_hours;
  std::sort(hours.begin(), hours.end(), [](const auto& a, const auto& b) {
    return std::tie(a.weekday, a.start) < std::tie(b.weekday, b.start);
  });
  for (size_t i = 0; i < hours.size(); ++i) {
    const WeeklyHours& h = hours[i];
    if (h.weekday > 6 || h.start.count() < 0 || h.end.count() > 24 || h.start >= h.end) {
      throw Error(ErrorCode::kValidation,
                  fmt::format("doctor {}: malformed working hours", doctor.id.str()));
    }
    if (i > 0 && hours[i - 1].weekday == h.weekday && hours[i - 1].end > h.start) {
      throw Error(ErrorCode::kValidation,
                  fmt::format("doctor {}: overlapping working hours", doctor.id.str()));
    }
  }
  std::unique_lock lock(mu_);
  if (!specialties_.contains(doctor.specialty)) {
    throw Error(ErrorCode::kUnknownSpecialty,
                "unknown specialty " + doctor.specialty.str());
  }
  store_->PutDoctor(doctor);
  doctors_[doctor.id] = doctor;
}

std::optional<DoctorRecord> Registry::FindDoctor(const DoctorId& id) const {
  std::shared_lock lock(mu_);
  auto it = doctors_.find(id);
  if (it == doctors_.end()) return std::nullopt;
  return it->second;
}

std::vector<DoctorRecord> Registry::Doctors() const {
  std::shared_lock lock(mu_);
  std::vector<DoctorRecord> out;
  for (const auto& [id, d] : doctors_) out.push_back(d);
  return out;
}

Appointment Registry::CreateAppointment(const PatientId& patient,
                                        const scheduling::TimeSlot& slot,
                                        Timestamp now) {
  std::unique_lock lock(mu_);
  auto account = accounts_.find(AccountId(patient.str()));
  if (account == accounts_.end() || account->second.role != Role::kPatient) {
    throw Error(ErrorCode::kUnknownPatient, "unknown patient " + patient.str());
  }
  if (!doctors_.contains(slot.doctor)) {
    throw Error(ErrorCode::kUnknownDoctor, "unknown doctor " + slot.doctor.str());
  }
  for (const auto& [id, a] : appointments_) {
    if (a.slot == slot.id && a.state == AppointmentState::kActive) {
      throw Error(ErrorCode::kSlotTaken, "slot " + slot.id.str() + " already booked");
    }
  }
  Appointment appointment{
      .id = AppointmentId(fmt::format("a-{}", store_->NextSequence("appointment"))),
      .patient = patient,
      .doctor = slot.doctor,
      .slot = slot.id,
      .slot_start = slot.start,
      .duration = slot.duration,
      .state = AppointmentState::kActive,
      .recorded_at = now};
  store_->PutAppointment(appointment);
  appointments_.emplace(appointment.id, appointment);
  return appointment;
}

std::optional<Appointment> Registry::FindAppointment(const AppointmentId& id) const {
  std::shared_lock lock(mu_);
  auto it = appointments_.find(id);
  if (it == appointments_.end()) return std::nullopt;
  return it->second;
}

void Registry::SetAppointmentState(const AppointmentId& id, AppointmentState state,
                                   Timestamp now) {
  std::unique_lock lock(mu_);
  auto it = appointments_.find(id);
  if (it == appointments_.end()) {
    throw Error(ErrorCode::kUnknownAppointment, "unknown appointment " + id.str());
  }
  if (!IsLegalAppointmentTransition(it->second.state, state)) {
    throw Error(ErrorCode::kIllegalTransition,
                fmt::format("appointment {}: {} -> {} is not allowed", id.str(),
                            AppointmentStateName(it->second.state),
                            AppointmentStateName(state)));
  }
  Appointment updated = it->second;
  updated.state = state;
  updated.recorded_at = now;
  store_->PutAppointment(updated);
  it->second = std::move(updated);
}

void Registry::CompleteAppointment(const AppointmentId& id, std::string outcome_note,
                                   Timestamp now) {
  SetAppointmentState(id, AppointmentState::kCompleted, now);
  std::unique_lock lock(mu_);
  Appointment& a = appointments_.at(id);
  a.outcome_note = std::move(outcome_note);
  store_->PutAppointment(a);
}

std::vector<Appointment> Registry::Appointments() const {
  std::shared_lock lock(mu_);
  std::vector<Appointment> out;
  for (const auto& [id, a] : appointments_) out.push_back(a);
  return out;
}

std::vector<Appointment> Registry::AppointmentsOf(const PatientId& patient) const {
  std::shared_lock lock(mu_);
  std::vector<Appointment> out;
  for (const auto& [id, a] : appointments_) {
    if (a.patient == patient) out.push_back(a);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.slot_start < b.slot_start; });
  return out;
}

HistoryEntry Registry::RecordHistory(const AppointmentId& appointment,
                                     HistoryEntry entry) {
  std::unique_lock lock(mu_);
  auto it = appointments_.find(appointment);
  if (it == appointments_.end()) {
    throw Error(ErrorCode::kUnknownAppointment, "unknown appointment " + appointment.str());
  }
  entry.sequence = store_->NextSequence("history");
  entry.appointment = appointment;
  entry.patient = it->second.patient;
  entry.doctor = it->second.doctor;
  entry.visit_time = it->second.slot_start;
  store_->AppendHistory(entry);
  history_.push_back(entry);
  return entry;
}

std::vector<HistoryEntry> Registry::FetchHistory(const PatientId& patient) const {
  if (!PatientExists(patient)) {
    throw Error(ErrorCode::kUnknownPatient, "unknown patient " + patient.str());
  }
  std::shared_lock lock(mu_);
  std::vector<HistoryEntry> out;
  for (const HistoryEntry& e : history_) {
    if (e.patient == patient) out.push_back(e);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.recorded_at, a.sequence) < std::tie(b.recorded_at, b.sequence);
  });
  return out;
}

}  // namespace mass::registry
