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

#include "mass/cli/cli.h"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <atomic>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "mass/api/codec.h"
#include "mass/api/server.h"
#include "mass/core/error.h"
#include "mass/notify/sinks.h"
#include "mass/registry/registry.h"
#include "mass/registry/store.h"
#include "mass/scheduling/slot_generator.h"
#include "mass/sim/config_json.h"
#include "mass/sim/simulator.h"
#include "mass/ssc/scheduling_checkup.h"

namespace mass::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::atomic<bool> g_stop{false};

// Unreadable input, unwritable store.
struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure(fmt::format("cannot read {}: {}", path, std::strerror(errno)));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json ParseJsonFile(const std::string& path) {
  std::string text = ReadFile(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports "line L, column C" in what().
    throw Error(ErrorCode::kValidation, fmt::format("{}: {}", path, e.what()));
  }
}

fs::path DataDir() {
  const char* env = std::getenv("MASS_DATA_DIR");
  fs::path dir = env && *env ? fs::path(env) : fs::current_path();
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoFailure(fmt::format("cannot create {}: {}", dir.string(), ec.message()));
  return dir;
}

std::unique_ptr<registry::Registry> OpenRegistry() {
  auto store = std::make_unique<registry::SqliteStore>(DataDir() / "mass.db");
  return std::make_unique<registry::Registry>(std::move(store));
}

bool IsIoCode(ErrorCode code) { return code == ErrorCode::kStorage; }

struct Globals {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string listen = "127.0.0.1:8080";
  std::string format = "table";

  sim::ReportFormat report_format() const {
    return format == "csv" ? sim::ReportFormat::kDelimited : sim::ReportFormat::kTable;
  }
};

// ---- seed ----

int CmdSeed(const std::string& fixture, std::ostream& out) {
  std::string text = ReadFile(fixture);
  json doc;
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    doc = json::array();
  } else {
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kValidation, fmt::format("{}: {}", fixture, e.what()));
    }
  }
  if (!doc.is_array()) {
    throw Error(ErrorCode::kValidation, "fixture must be a JSON array of doctor records");
  }

  struct Entry {
    registry::DoctorRecord doctor;
    std::string specialty_name;
    std::string username;
    std::string password;
  };
  std::vector<Entry> entries;
  for (size_t i = 0; i < doc.size(); ++i) {
    std::string where = fmt::format("[{}]", i);
    Entry e{api::DoctorFromJson(doc[i], where)};
    const json& j = doc[i];
    auto optional_string = [&](const char* key, std::string& into) {
      auto it = j.find(key);
      if (it == j.end()) return;
      if (!it->is_string()) {
        throw Error(ErrorCode::kValidation,
                    fmt::format("field '{}.{}': expected a string", where, key));
      }
      into = it->get<std::string>();
    };
    optional_string("specialty_name", e.specialty_name);
    optional_string("username", e.username);
    optional_string("password", e.password);
    if (e.username.empty() != e.password.empty()) {
      throw Error(ErrorCode::kValidation,
                  fmt::format("field '{}.password': username and password go together", where));
    }
    entries.push_back(std::move(e));
  }

  auto reg = OpenRegistry();
  std::set<SpecialtyId> specialties;
  std::set<DoctorId> doctors;
  size_t accounts = 0;
  Timestamp now = SystemClock().Now();
  for (const Entry& e : entries) {
    if (specialties.insert(e.doctor.specialty).second) {
      std::string name = e.specialty_name.empty() ? e.doctor.specialty.str() : e.specialty_name;
      reg->AddSpecialty({e.doctor.specialty, name});
    }
    reg->UpsertDoctor(e.doctor);
    doctors.insert(e.doctor.id);
    if (!e.username.empty() && !reg->FindAccountByUsername(e.username)) {
      reg->RegisterDoctorAccount(e.username, e.password, e.doctor.id, now);
      ++accounts;
    }
  }
  out << "specialties: " << specialties.size() << "\n";
  out << "doctors: " << doctors.size() << "\n";
  out << "accounts: " << accounts << "\n";
  return kExitOk;
}

// ---- slots ----

int CmdSlots(const Globals& g, const std::string& doctor_id, const std::string& date_text,
             scheduling::WaveTemplate wave, std::ostream& out) {
  auto date = ParseDate(date_text);
  if (!date) throw Error(ErrorCode::kValidation, "--date must be YYYY-MM-DD");
  wave.Validate();
  auto reg = OpenRegistry();
  auto doctor = reg->FindDoctor(DoctorId(doctor_id));
  if (!doctor) throw Error(ErrorCode::kUnknownDoctor, "unknown doctor " + doctor_id);
  auto intervals = registry::WorkingIntervalsOn(*doctor, *date);
  auto slots = scheduling::GenerateSlots(doctor->id, intervals, wave);

  auto end_of = [](const scheduling::TimeSlot& s) {
    return FormatTimeOfDay(s.start + std::chrono::minutes(s.duration));
  };
  if (g.format == "csv") {
    out << "slot_id,start,end,hour_position,wave_index\n";
    for (const auto& s : slots) {
      out << fmt::format("{},{},{},{},{}\n", s.id.str(), FormatTimeOfDay(s.start), end_of(s),
                         s.hour_position, s.wave_index);
    }
    return kExitOk;
  }
  out << fmt::format("{:<24} {:<5}  {:<5}  {}\n", "SLOT", "START", "END", "POSITION");
  for (const auto& s : slots) {
    std::string marker = s.hour_position == 0
                             ? fmt::format("wave {}/{}", s.wave_index + 1, wave.wave_size)
                             : fmt::format("+{}", s.hour_position);
    out << fmt::format("{:<24} {:<5}  {:<5}  {}\n", s.id.str(), FormatTimeOfDay(s.start),
                       end_of(s), marker);
  }
  out << fmt::format("{} slots\n", slots.size());
  return kExitOk;
}

// ---- simulate / compare ----

sim::SimConfig LoadSimConfig(const std::string& path, const Globals& g) {
  json j = ParseJsonFile(path);
  sim::SimConfig config;
  try {
    config = sim::SimConfigFromJson(j);
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("{}: {}", path, e.what()));
  }
  if (g.seed) config.seed = *g.seed;
  config.Validate();
  return config;
}

int CmdSimulate(const Globals& g, const std::string& path, std::ostream& out) {
  sim::SimReport report = sim::Run(LoadSimConfig(path, g));
  report.outcomes.clear();
  out << sim::EmitReport(std::span<const sim::SimReport>(&report, 1), g.report_format());
  return kExitOk;
}

int CmdCompare(const Globals& g, const std::string& base, const std::string& treat, int reps,
               bool per_run, std::ostream& out) {
  sim::SimConfig b = LoadSimConfig(base, g);
  sim::SimConfig t = LoadSimConfig(treat, g);
  out << sim::EmitComparison(sim::Compare(b, t, reps), g.report_format(), per_run);
  return kExitOk;
}

// ---- serve ----

struct ServiceConfig {
  std::string listen;
  scheduling::WaveTemplate wave;
  std::chrono::seconds hold_ttl{120};
  std::vector<std::chrono::minutes> reminder_leads = notify::DefaultReminderLeads();
  int days = 14;
};

ServiceConfig LoadServiceConfig(const std::string& path) {
  ServiceConfig c;
  if (path.empty()) return c;
  json j = ParseJsonFile(path);
  if (!j.is_object()) throw Error(ErrorCode::kInvalidConfig, "service config must be an object");
  auto bad = [](const std::string& field, const char* why) {
    throw Error(ErrorCode::kInvalidConfig, fmt::format("field '{}': {}", field, why));
  };
  for (const auto& [key, value] : j.items()) {
    if (key == "listen") {
      if (!value.is_string()) bad(key, "expected host:port");
      c.listen = value.get<std::string>();
    } else if (key == "days") {
      if (!value.is_number_integer() || value.get<int>() < 1) bad(key, "expected a positive integer");
      c.days = value.get<int>();
    } else if (key == "hold_ttl_seconds") {
      if (!value.is_number_integer() || value.get<int>() < 1) bad(key, "expected a positive integer");
      c.hold_ttl = std::chrono::seconds(value.get<int>());
    } else if (key == "reminder_leads_minutes") {
      if (!value.is_array()) bad(key, "expected an array of minutes");
      c.reminder_leads.clear();
      for (const auto& m : value) {
        if (!m.is_number_integer() || m.get<int>() < 1) bad(key, "expected positive integers");
        c.reminder_leads.emplace_back(m.get<int>());
      }
    } else if (key == "wave") {
      if (!value.is_object()) bad(key, "expected an object");
      for (const auto& [wk, wv] : value.items()) {
        int* target = wk == "slot_length"      ? &c.wave.slot_length
                      : wk == "wave_size"      ? &c.wave.wave_size
                      : wk == "catchup_window" ? &c.wave.catchup_window
                                               : nullptr;
        if (!target) bad("wave." + wk, "unknown field");
        if (!wv.is_number_integer()) bad("wave." + wk, "expected an integer");
        *target = wv.get<int>();
      }
    } else {
      bad(key, "unknown field");
    }
  }
  c.wave.Validate();
  return c;
}

std::pair<std::string, int> SplitListen(const std::string& listen) {
  auto colon = listen.rfind(':');
  if (colon == std::string::npos) {
    throw Error(ErrorCode::kValidation, "--listen must be host:port");
  }
  std::string host = listen.substr(0, colon);
  int port = 0;
  try {
    size_t used = 0;
    port = std::stoi(listen.substr(colon + 1), &used);
    if (used != listen.size() - colon - 1) port = -1;
  } catch (const std::exception&) {
    port = -1;
  }
  if (host.empty() || port < 0 || port > 65535) {
    throw Error(ErrorCode::kValidation, "--listen must be host:port");
  }
  return {host, port};
}

int CmdServe(const Globals& g, bool listen_given, const std::string& from_text,
             std::optional<int> days, const std::string& webhook, std::ostream& out,
             std::ostream& err) {
  ServiceConfig config = LoadServiceConfig(g.config);
  std::string listen = listen_given || config.listen.empty() ? g.listen : config.listen;
  auto [host, port] = SplitListen(listen);
  if (days) config.days = *days;

  SystemClock clock;
  Date from = DateOf(clock.Now());
  if (!from_text.empty()) {
    auto parsed = ParseDate(from_text);
    if (!parsed) throw Error(ErrorCode::kValidation, "--from must be YYYY-MM-DD");
    from = *parsed;
  }

  auto reg = OpenRegistry();
  notify::Notifier notifier;
  notifier.AddSink(std::make_shared<notify::LogSink>(err));
  if (!webhook.empty()) notifier.AddSink(std::make_shared<notify::WebhookSink>(webhook));
  ssc::SchedulingCheckup ssc(*reg, notifier, {config.wave, config.reminder_leads},
                             {config.hold_ttl});
  size_t added = ssc.MaterializeCalendar(from, config.days);

  api::ApiServer server(ssc, *reg, notifier, clock);
  int bound = port;
  if (port == 0) {
    bound = server.BindToAnyPort(host);
    if (bound < 0) throw IoFailure("cannot bind " + listen);
  } else if (!server.Bind(host, port)) {
    throw IoFailure("cannot bind " + listen);
  }
  out << fmt::format("listening on {}:{} ({} slots from {} over {} days)\n", host, bound, added,
                     FormatDate(from), config.days)
      << std::flush;

  g_stop = false;
  std::thread ticker([&] {
    Date horizon_start = from;
    while (!g_stop) {
      Timestamp now = clock.Now();
      if (DateOf(now) > horizon_start) {
        horizon_start = DateOf(now);
        ssc.MaterializeCalendar(horizon_start, config.days);
      }
      ssc.Tick(now);
      notifier.DrainDue(now);
      for (int i = 0; i < 10 && !g_stop; ++i) {
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
      }
    }
    server.Stop();
  });
  server.ListenAfterBind();
  g_stop = true;
  ticker.join();
  return kExitOk;
}

}  // namespace

void RequestStop() { g_stop = true; }

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Appointment scheduling service and clinic-flow simulator", "mass"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config, "Service or simulation config (JSON)");
  app.add_option("--seed", g.seed, "Override the simulation seed");
  auto* listen_opt = app.add_option("--listen", g.listen, "host:port for serve");
  app.add_option("--format", g.format, "Report format")
      ->check(CLI::IsMember({"table", "csv"}));

  auto* seed_cmd = app.add_subcommand("seed", "Load doctors and specialties from a fixture");
  std::string fixture;
  seed_cmd->add_option("fixture", fixture, "JSON array of doctor records")->required();

  auto* slots_cmd = app.add_subcommand("slots", "Print a doctor's generated slots for a day");
  std::string doctor, date;
  scheduling::WaveTemplate wave;
  slots_cmd->add_option("--doctor", doctor)->required();
  slots_cmd->add_option("--date", date, "YYYY-MM-DD")->required();
  slots_cmd->add_option("--slot-length", wave.slot_length);
  slots_cmd->add_option("--wave-size", wave.wave_size);
  slots_cmd->add_option("--catchup", wave.catchup_window);

  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
  std::string from, webhook;
  std::optional<int> days;
  serve_cmd->add_option("--from", from, "First calendar day (default today)");
  serve_cmd->add_option("--days", days, "Calendar days to materialize");
  serve_cmd->add_option("--webhook", webhook, "POST delivered notifications to this URL");

  auto* simulate_cmd = app.add_subcommand("simulate", "Run one simulation");
  std::string sim_path;
  simulate_cmd->add_option("config_file", sim_path, "Simulation config (or --config)");

  auto* compare_cmd = app.add_subcommand("compare", "Compare a baseline and a treatment");
  std::string base_path, treat_path;
  int reps = 1;
  bool per_run = false;
  compare_cmd->add_option("baseline", base_path)->required();
  compare_cmd->add_option("treatment", treat_path)->required();
  compare_cmd->add_option("--reps", reps, "Replications")->check(CLI::PositiveNumber);
  compare_cmd->add_flag("--per-run", per_run, "Also print each replication");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "mass: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    if (seed_cmd->parsed()) return CmdSeed(fixture, out);
    if (slots_cmd->parsed()) return CmdSlots(g, doctor, date, wave, out);
    if (serve_cmd->parsed()) {
      return CmdServe(g, listen_opt->count() > 0, from, days, webhook, out, err);
    }
    if (simulate_cmd->parsed()) {
      std::string path = sim_path.empty() ? g.config : sim_path;
      if (path.empty()) {
        err << "mass: simulate needs a config file\n";
        return kExitValidation;
      }
      return CmdSimulate(g, path, out);
    }
    if (compare_cmd->parsed()) {
      return CmdCompare(g, base_path, treat_path, reps, per_run, out);
    }
  } catch (const IoFailure& e) {
    err << "mass: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "mass: " << CodeName(e.code()) << ": " << e.what() << "\n";
    return IsIoCode(e.code()) ? kExitIo : kExitValidation;
  }
  return kExitValidation;
}

}  // namespace mass::cli
