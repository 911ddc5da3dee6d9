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

#ifndef MASS_REGISTRY_STORE_H_
#define MASS_REGISTRY_STORE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "mass/core/appointment.h"
#include "mass/registry/records.h"

struct sqlite3;

namespace mass::registry {

inline constexpr int kSchemaVersion = 1;

// Durable record families. Put* inserts or replaces by id; history has no
// replace or delete. Implementations throw Error(kStorage) on I/O failure.
class Store {
 public:
  virtual ~Store() = default;

  virtual int SchemaVersion() const = 0;
  // Monotone per family, survives restarts.
  virtual std::int64_t NextSequence(std::string_view family) = 0;

  virtual void PutSpecialty(const Specialty& specialty) = 0;
  virtual std::vector<Specialty> LoadSpecialties() const = 0;

  virtual void PutDoctor(const DoctorRecord& doctor) = 0;
  virtual std::vector<DoctorRecord> LoadDoctors() const = 0;

  virtual void PutAccount(const Account& account) = 0;
  virtual std::vector<Account> LoadAccounts() const = 0;

  virtual void PutAppointment(const Appointment& appointment) = 0;
  virtual std::vector<Appointment> LoadAppointments() const = 0;

  virtual void AppendHistory(const HistoryEntry& entry) = 0;
  virtual std::vector<HistoryEntry> LoadHistory() const = 0;
};

class MemoryStore final : public Store {
 public:
  int SchemaVersion() const override { return kSchemaVersion; }
  std::int64_t NextSequence(std::string_view family) override;
  void PutSpecialty(const Specialty& specialty) override;
  std::vector<Specialty> LoadSpecialties() const override;
  void PutDoctor(const DoctorRecord& doctor) override;
  std::vector<DoctorRecord> LoadDoctors() const override;
  void PutAccount(const Account& account) override;
  std::vector<Account> LoadAccounts() const override;
  void PutAppointment(const Appointment& appointment) override;
  std::vector<Appointment> LoadAppointments() const override;
  void AppendHistory(const HistoryEntry& entry) override;
  std::vector<HistoryEntry> LoadHistory() const override;

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::int64_t, std::less<>> sequences_;
  std::map<SpecialtyId, Specialty> specialties_;
  std::map<DoctorId, DoctorRecord> doctors_;
  std::map<AccountId, Account> accounts_;
  std::map<AppointmentId, Appointment> appointments_;
  std::vector<HistoryEntry> history_;
};

// Single-file SQLite database in WAL journal mode. The schema version lives
// in PRAGMA user_version; opening a file with a different version throws.
class SqliteStore final : public Store {
 public:
  explicit SqliteStore(const std::filesystem::path& path);
  ~SqliteStore() override;

  SqliteStore(const SqliteStore&) = delete;
  SqliteStore& operator=(const SqliteStore&) = delete;

  int SchemaVersion() const override;
  std::int64_t NextSequence(std::string_view family) override;
  void PutSpecialty(const Specialty& specialty) override;
  std::vector<Specialty> LoadSpecialties() const override;
  void PutDoctor(const DoctorRecord& doctor) override;
  std::vector<DoctorRecord> LoadDoctors() const override;
  void PutAccount(const Account& account) override;
  std::vector<Account> LoadAccounts() const override;
  void PutAppointment(const Appointment& appointment) override;
  std::vector<Appointment> LoadAppointments() const override;
  void AppendHistory(const HistoryEntry& entry) override;
  std::vector<HistoryEntry> LoadHistory() const override;

 private:
  void Exec(const char* sql) const;

  mutable std::mutex mu_;
  sqlite3* db_ = nullptr;
};

}  // namespace mass::registry

#endif  // MASS_REGISTRY_STORE_H_
