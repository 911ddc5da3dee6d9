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

#include "mass/registry/store.h"

namespace mass::registry {

std::int64_t MemoryStore::NextSequence(std::string_view family) {
  std::lock_guard lock(mu_);
  auto it = sequences_.find(family);
  if (it == sequences_.end()) it = sequences_.emplace(std::string(family), 0).first;
  return ++it->second;
}

void MemoryStore::PutSpecialty(const Specialty& specialty) {
  std::lock_guard lock(mu_);
  specialties_[specialty.id] = specialty;
}

std::vector<Specialty> MemoryStore::LoadSpecialties() const {
  std::lock_guard lock(mu_);
  std::vector<Specialty> out;
  for (const auto& [id, s] : specialties_) out.push_back(s);
  return out;
}

void MemoryStore::PutDoctor(const DoctorRecord& doctor) {
  std::lock_guard lock(mu_);
  doctors_[doctor.id] = doctor;
}

std::vector<DoctorRecord> MemoryStore::LoadDoctors() const {
  std::lock_guard lock(mu_);
  std::vector<DoctorRecord> out;
  for (const auto& [id, d] : doctors_) out.push_back(d);
  return out;
}

void MemoryStore::PutAccount(const Account& account) {
  std::lock_guard lock(mu_);
  accounts_[account.id] = account;
}

std::vector<Account> MemoryStore::LoadAccounts() const {
  std::lock_guard lock(mu_);
  std::vector<Account> out;
  for (const auto& [id, a] : accounts_) out.push_back(a);
  return out;
}

void MemoryStore::PutAppointment(const Appointment& appointment) {
  std::lock_guard lock(mu_);
  appointments_[appointment.id] = appointment;
}

std::vector<Appointment> MemoryStore::LoadAppointments() const {
  std::lock_guard lock(mu_);
  std::vector<Appointment> out;
  for (const auto& [id, a] : appointments_) out.push_back(a);
  return out;
}

void MemoryStore::AppendHistory(const HistoryEntry& entry) {
  std::lock_guard lock(mu_);
  history_.push_back(entry);
}

std::vector<HistoryEntry> MemoryStore::LoadHistory() const {
  std::lock_guard lock(mu_);
  return history_;
}

}  // namespace mass::registry
