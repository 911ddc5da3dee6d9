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

#include <fmt/format.h>
#include <sqlite3.h>

#include <nlohmann/json.hpp>

#include "mass/core/error.h"
#include "mass/registry/store.h"

namespace mass::registry {

namespace {

using nlohmann::json;

[[noreturn]] void Fail(sqlite3* db, std::string_view what) {
  throw Error(ErrorCode::kStorage,
              fmt::format("{}: {}", what, db ? sqlite3_errmsg(db) : "no database"));
}

class Statement {
 public:
  Statement(sqlite3* db, const char* sql) : db_(db) {
    if (sqlite3_prepare_v2(db, sql, -1, &stmt_, nullptr) != SQLITE_OK) {
      Fail(db, "prepare");
    }
  }
  ~Statement() { sqlite3_finalize(stmt_); }
  Statement(const Statement&) = delete;
  Statement& operator=(const Statement&) = delete;

  Statement& Bind(int index, std::string_view text) {
    sqlite3_bind_text(stmt_, index, text.data(), static_cast<int>(text.size()),
                      SQLITE_TRANSIENT);
    return *this;
  }
  Statement& Bind(int index, std::int64_t value) {
    sqlite3_bind_int64(stmt_, index, value);
    return *this;
  }
  Statement& BindNull(int index) {
    sqlite3_bind_null(stmt_, index);
    return *this;
  }

  // True while a row is available.
  bool Step() {
    int rc = sqlite3_step(stmt_);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    Fail(db_, "step");
  }
  void Run() { while (Step()) {} }

  std::string Text(int col) const {
    const auto* p = sqlite3_column_text(stmt_, col);
    return p ? std::string(reinterpret_cast<const char*>(p),
                           static_cast<size_t>(sqlite3_column_bytes(stmt_, col)))
             : std::string();
  }
  std::int64_t Int(int col) const { return sqlite3_column_int64(stmt_, col); }
  bool IsNull(int col) const { return sqlite3_column_type(stmt_, col) == SQLITE_NULL; }

 private:
  sqlite3* db_;
  sqlite3_stmt* stmt_ = nullptr;
};

std::int64_t Seconds(Timestamp t) { return t.time_since_epoch().count(); }
Timestamp FromSeconds(std::int64_t s) { return Timestamp(std::chrono::seconds(s)); }

constexpr const char* kSchema = R"sql(
CREATE TABLE IF NOT EXISTS sequences (family TEXT PRIMARY KEY, value INTEGER NOT NULL);
CREATE TABLE IF NOT EXISTS specialties (id TEXT PRIMARY KEY, name TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS doctors (
  id TEXT PRIMARY KEY, name TEXT NOT NULL, specialty_id TEXT NOT NULL,
  working_hours TEXT NOT NULL, on_duty INTEGER NOT NULL);
CREATE TABLE IF NOT EXISTS accounts (
  id TEXT PRIMARY KEY, username TEXT NOT NULL UNIQUE, credential_hash TEXT NOT NULL,
  role TEXT NOT NULL, doctor_id TEXT, created_at INTEGER NOT NULL);
CREATE TABLE IF NOT EXISTS appointments (
  id TEXT PRIMARY KEY, patient_id TEXT NOT NULL, doctor_id TEXT NOT NULL,
  slot_id TEXT NOT NULL, slot_start INTEGER NOT NULL, duration INTEGER NOT NULL,
  state TEXT NOT NULL, outcome_note TEXT NOT NULL, recorded_at INTEGER NOT NULL);
CREATE TABLE IF NOT EXISTS history (
  seq INTEGER PRIMARY KEY, appointment_id TEXT NOT NULL, patient_id TEXT NOT NULL,
  doctor_id TEXT NOT NULL, clinic TEXT NOT NULL, visit_time INTEGER NOT NULL,
  recorded_at INTEGER NOT NULL, summary TEXT NOT NULL, treatment TEXT NOT NULL,
  notes TEXT NOT NULL);
CREATE TRIGGER IF NOT EXISTS history_no_update BEFORE UPDATE ON history
  BEGIN SELECT RAISE(ABORT, 'history is append-only'); END;
CREATE TRIGGER IF NOT EXISTS history_no_delete BEFORE DELETE ON history
  BEGIN SELECT RAISE(ABORT, 'history is append-only'); END;
)sql";

}  // namespace

SqliteStore::SqliteStore(const std::filesystem::path& path) {
  if (sqlite3_open(path.string().c_str(), &db_) != SQLITE_OK) {
    std::string msg = db_ ? sqlite3_errmsg(db_) : "out of memory";
    sqlite3_close(db_);
    db_ = nullptr;
    throw Error(ErrorCode::kStorage, "open " + path.string() + ": " + msg);
  }
  sqlite3_busy_timeout(db_, 5000);
  try {
    Exec("PRAGMA journal_mode=WAL;");
    Exec("PRAGMA synchronous=FULL;");
    int version = SchemaVersion();
    if (version == 0) {
      Exec("BEGIN;");
      Exec(kSchema);
      Exec(fmt::format("PRAGMA user_version={};", kSchemaVersion).c_str());
      Exec("COMMIT;");
    } else if (version != kSchemaVersion) {
      throw Error(ErrorCode::kStorage,
                  fmt::format("{}: schema version {} is not supported (expected {})",
                              path.string(), version, kSchemaVersion));
    }
  } catch (...) {
    sqlite3_close(db_);
    db_ = nullptr;
    throw;
  }
}

SqliteStore::~SqliteStore() { sqlite3_close(db_); }

void SqliteStore::Exec(const char* sql) const {
  char* err = nullptr;
  if (sqlite3_exec(db_, sql, nullptr, nullptr, &err) != SQLITE_OK) {
    std::string msg = err ? err : "unknown error";
    sqlite3_free(err);
    throw Error(ErrorCode::kStorage, msg);
  }
}

int SqliteStore::SchemaVersion() const {
  std::lock_guard lock(mu_);
  Statement st(db_, "PRAGMA user_version;");
  return st.Step() ? static_cast<int>(st.Int(0)) : 0;
}

std::int64_t SqliteStore::NextSequence(std::string_view family) {
  std::lock_guard lock(mu_);
  Statement st(db_,
               "INSERT INTO sequences(family, value) VALUES(?1, 1) "
               "ON CONFLICT(family) DO UPDATE SET value = value + 1 "
               "RETURNING value;");
  st.Bind(1, family);
  if (!st.Step()) Fail(db_, "sequence");
  std::int64_t value = st.Int(0);
  st.Run();
  return value;
}

void SqliteStore::PutSpecialty(const Specialty& specialty) {
  std::lock_guard lock(mu_);
  Statement st(db_, "INSERT OR REPLACE INTO specialties(id, name) VALUES(?1, ?2);");
  st.Bind(1, specialty.id.str()).Bind(2, specialty.name).Run();
}

std::vector<Specialty> SqliteStore::LoadSpecialties() const {
  std::lock_guard lock(mu_);
  Statement st(db_, "SELECT id, name FROM specialties ORDER BY id;");
  std::vector<Specialty> out;
  while (st.Step()) out.push_back(Specialty{SpecialtyId(st.Text(0)), st.Text(1)});
  return out;
}

void SqliteStore::PutDoctor(const DoctorRecord& doctor) {
  json hours = json::array();
  for (const WeeklyHours& h : doctor.working_hours) {
    hours.push_back({h.weekday, h.start.count(), h.end.count()});
  }
  std::lock_guard lock(mu_);
  Statement st(db_,
               "INSERT OR REPLACE INTO doctors(id, name, specialty_id, working_hours, "
               "on_duty) VALUES(?1, ?2, ?3, ?4, ?5);");
  st.Bind(1, doctor.id.str())
      .Bind(2, doctor.name)
      .Bind(3, doctor.specialty.str())
      .Bind(4, hours.dump())
      .Bind(5, std::int64_t{doctor.on_duty ? 1 : 0})
      .Run();
}

std::vector<DoctorRecord> SqliteStore::LoadDoctors() const {
  std::lock_guard lock(mu_);
  Statement st(db_,
               "SELECT id, name, specialty_id, working_hours, on_duty FROM doctors "
               "ORDER BY id;");
  std::vector<DoctorRecord> out;
  while (st.Step()) {
    DoctorRecord d{.id = DoctorId(st.Text(0)),
                   .name = st.Text(1),
                   .specialty = SpecialtyId(st.Text(2)),
                   .on_duty = st.Int(4) != 0};
    for (const json& h : json::parse(st.Text(3))) {
      d.working_hours.push_back(WeeklyHours{h[0].get<unsigned>(),
                                            std::chrono::hours(h[1].get<int>()),
                                            std::chrono::hours(h[2].get<int>())});
    }
    out.push_back(std::move(d));
  }
  return out;
}

void SqliteStore::PutAccount(const Account& account) {
  std::lock_guard lock(mu_);
  Statement st(db_,
               "INSERT OR REPLACE INTO accounts(id, username, credential_hash, role, "
               "doctor_id, created_at) VALUES(?1, ?2, ?3, ?4, ?5, ?6);");
  st.Bind(1, account.id.str())
      .Bind(2, account.username)
      .Bind(3, account.credential_hash)
      .Bind(4, RoleName(account.role));
  if (account.doctor) {
    st.Bind(5, account.doctor->str());
  } else {
    st.BindNull(5);
  }
  st.Bind(6, Seconds(account.created_at)).Run();
}

std::vector<Account> SqliteStore::LoadAccounts() const {
  std::lock_guard lock(mu_);
  Statement st(db_,
               "SELECT id, username, credential_hash, role, doctor_id, created_at "
               "FROM accounts ORDER BY id;");
  std::vector<Account> out;
  while (st.Step()) {
    Account a{.id = AccountId(st.Text(0)),
              .username = st.Text(1),
              .credential_hash = st.Text(2),
              .role = st.Text(3) == "doctor" ? Role::kDoctor : Role::kPatient,
              .created_at = FromSeconds(st.Int(5))};
    if (!st.IsNull(4)) a.doctor = DoctorId(st.Text(4));
    out.push_back(std::move(a));
  }
  return out;
}

void SqliteStore::PutAppointment(const Appointment& a) {
  std::lock_guard lock(mu_);
  Statement st(db_,
               "INSERT OR REPLACE INTO appointments(id, patient_id, doctor_id, slot_id, "
               "slot_start, duration, state, outcome_note, recorded_at) "
               "VALUES(?1, ?2, ?3, ?4, ?5, ?6, ?7, ?8, ?9);");
  st.Bind(1, a.id.str())
      .Bind(2, a.patient.str())
      .Bind(3, a.doctor.str())
      .Bind(4, a.slot.str())
      .Bind(5, Seconds(a.slot_start))
      .Bind(6, std::int64_t{a.duration.count()})
      .Bind(7, AppointmentStateName(a.state))
      .Bind(8, a.outcome_note)
      .Bind(9, Seconds(a.recorded_at))
      .Run();
}

std::vector<Appointment> SqliteStore::LoadAppointments() const {
  std::lock_guard lock(mu_);
  Statement st(db_,
               "SELECT id, patient_id, doctor_id, slot_id, slot_start, duration, state, "
               "outcome_note, recorded_at FROM appointments ORDER BY id;");
  std::vector<Appointment> out;
  while (st.Step()) {
    auto state = ParseAppointmentState(st.Text(6));
    if (!state) Fail(db_, "bad appointment state " + st.Text(6));
    out.push_back(Appointment{.id = AppointmentId(st.Text(0)),
                              .patient = PatientId(st.Text(1)),
                              .doctor = DoctorId(st.Text(2)),
                              .slot = SlotId(st.Text(3)),
                              .slot_start = FromSeconds(st.Int(4)),
                              .duration = std::chrono::minutes(st.Int(5)),
                              .state = *state,
                              .outcome_note = st.Text(7),
                              .recorded_at = FromSeconds(st.Int(8))});
  }
  return out;
}

void SqliteStore::AppendHistory(const HistoryEntry& e) {
  std::lock_guard lock(mu_);
  Statement st(db_,
               "INSERT INTO history(seq, appointment_id, patient_id, doctor_id, clinic, "
               "visit_time, recorded_at, summary, treatment, notes) "
               "VALUES(?1, ?2, ?3, ?4, ?5, ?6, ?7, ?8, ?9, ?10);");
  st.Bind(1, e.sequence)
      .Bind(2, e.appointment.str())
      .Bind(3, e.patient.str())
      .Bind(4, e.doctor.str())
      .Bind(5, e.clinic)
      .Bind(6, Seconds(e.visit_time))
      .Bind(7, Seconds(e.recorded_at))
      .Bind(8, e.summary)
      .Bind(9, e.treatment)
      .Bind(10, e.notes)
      .Run();
}

std::vector<HistoryEntry> SqliteStore::LoadHistory() const {
  std::lock_guard lock(mu_);
  Statement st(db_,
               "SELECT seq, appointment_id, patient_id, doctor_id, clinic, visit_time, "
               "recorded_at, summary, treatment, notes FROM history ORDER BY seq;");
  std::vector<HistoryEntry> out;
  while (st.Step()) {
    out.push_back(HistoryEntry{.sequence = st.Int(0),
                               .appointment = AppointmentId(st.Text(1)),
                               .patient = PatientId(st.Text(2)),
                               .doctor = DoctorId(st.Text(3)),
                               .clinic = st.Text(4),
                               .visit_time = FromSeconds(st.Int(5)),
                               .recorded_at = FromSeconds(st.Int(6)),
                               .summary = st.Text(7),
                               .treatment = st.Text(8),
                               .notes = st.Text(9)});
  }
  return out;
}

}  // namespace mass::registry
