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

#include "mass/api/server.h"

#include <httplib.h>

#include <fmt/format.h>

#include <functional>

#include "mass/api/codec.h"
#include "mass/notify/sinks.h"

namespace mass::api {

namespace {

using registry::Principal;
using registry::Role;

struct Reply {
  int status = 200;
  json body;
};

using Handler = std::function<Reply(const httplib::Request&)>;

json ErrorBody(std::string_view code, std::string_view message) {
  return {{"code", code}, {"message", message}};
}

json ParseBody(const httplib::Request& req, bool allow_empty = false) {
  if (req.body.empty() && allow_empty) return json::object();
  json body = json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) {
    throw Error(ErrorCode::kValidation, "request body must be a JSON object");
  }
  return body;
}

std::string RequireString(const json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || !it->is_string()) {
    throw Error(ErrorCode::kValidation, fmt::format("field '{}' must be a string", key));
  }
  return it->get<std::string>();
}

Timestamp RequireTime(const std::string& text, const char* key) {
  auto t = ParseRfc3339(text);
  if (!t) {
    throw Error(ErrorCode::kValidation,
                fmt::format("'{}' must be an RFC 3339 timestamp", key));
  }
  return *t;
}

}  // namespace

const std::vector<RouteInfo>& Routes() {
  static const std::vector<RouteInfo> routes{
      {"GET", "/routes", "public", "this listing"},
      {"POST", "/signup", "public", "create a patient account"},
      {"POST", "/login", "public", "exchange username and password for a session token"},
      {"GET", "/specialties", "public", "specialties with doctor counts"},
      {"GET", "/doctors", "public", "doctors, optionally ?specialty="},
      {"GET", "/doctors/:id/schedule", "public", "doctor detail and free slots on ?date="},
      {"GET", "/doctors/:id/slots", "public", "free slots between ?from= and ?to="},
      {"POST", "/slots/:id/hold", "patient", "hold a slot pending confirmation"},
      {"POST", "/holds/:id/confirm", "patient", "confirm a live hold"},
      {"DELETE", "/appointments/:id", "patient", "cancel an appointment"},
      {"POST", "/appointments/:id/history", "doctor", "record a visit summary"},
      {"POST", "/doctors/:id/postpone", "doctor", "postpone a window of appointments"},
      {"POST", "/requests", "patient", "submit an appointment request"},
      {"GET", "/requests", "doctor", "pending request queue"},
      {"GET", "/requests/:id/candidates", "patient", "slots matching a pending request"},
      {"DELETE", "/requests/:id", "patient", "withdraw a pending request"},
      {"GET", "/patients/:id/appointments", "session", "a patient's appointments"},
      {"GET", "/patients/:id/history", "session", "a patient's visit history"},
      {"GET", "/patients/:id/notifications", "session", "a patient's inbox"},
  };
  return routes;
}

int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownDoctor:
    case ErrorCode::kUnknownSlot:
    case ErrorCode::kUnknownTicket:
    case ErrorCode::kUnknownAppointment:
    case ErrorCode::kUnknownPatient:
    case ErrorCode::kUnknownRequest:
    case ErrorCode::kUnknownSpecialty:
      return 404;
    case ErrorCode::kSlotTaken:
    case ErrorCode::kAlreadyStarted:
    case ErrorCode::kIllegalTransition:
    case ErrorCode::kPreconditionFailed:
    case ErrorCode::kUsernameTaken:
      return 409;
    case ErrorCode::kHoldExpired:
    case ErrorCode::kSlotExpired:
      return 410;
    case ErrorCode::kInvalidCredentials:
    case ErrorCode::kUnauthenticated:
      return 401;
    case ErrorCode::kForbidden:
      return 403;
    case ErrorCode::kMisalignedHours:
    case ErrorCode::kInvalidTemplate:
    case ErrorCode::kWindowInPast:
    case ErrorCode::kInvalidFilter:
    case ErrorCode::kWeakCredential:
    case ErrorCode::kValidation:
    case ErrorCode::kInvalidConfig:
    case ErrorCode::kMismatchedConfigs:
      return 422;
    case ErrorCode::kStorage:
      return 503;
  }
  return 500;
}

struct ApiServer::Impl {
  Impl(ssc::SchedulingCheckup& s, registry::Registry& r, notify::Notifier& n,
       const Clock& c)
      : ssc(s), registry(r), notifier(n), clock(c) {
    Register();
  }

  ssc::SchedulingCheckup& ssc;
  registry::Registry& registry;
  notify::Notifier& notifier;
  const Clock& clock;
  httplib::Server http;

  void Add(const std::string& method, const std::string& path, Handler handler) {
    auto wrapped = [handler = std::move(handler)](const httplib::Request& req,
                                                  httplib::Response& res) {
      Reply reply;
      try {
        reply = handler(req);
      } catch (const Error& e) {
        reply = {HttpStatusFor(e.code()), ErrorBody(CodeName(e.code()), e.what())};
      } catch (const json::exception& e) {
        reply = {422, ErrorBody("VALIDATION", e.what())};
      } catch (const std::exception& e) {
        reply = {500, ErrorBody("INTERNAL", e.what())};
      }
      res.status = reply.status;
      res.set_content(reply.body.dump(), "application/json");
    };
    if (method == "GET") {
      http.Get(path, wrapped);
    } else if (method == "POST") {
      http.Post(path, wrapped);
    } else {
      http.Delete(path, wrapped);
    }
  }

  Principal Authenticated(const httplib::Request& req) const {
    std::string token = req.get_header_value(kSessionHeader);
    if (token.empty()) {
      throw Error(ErrorCode::kUnauthenticated, "missing X-Session-Token header");
    }
    auto principal = registry.ValidateSession(token, clock.Now());
    if (!principal) throw Error(ErrorCode::kUnauthenticated, "session is invalid or expired");
    return *principal;
  }

  Principal AsPatient(const httplib::Request& req) const {
    Principal p = Authenticated(req);
    if (p.role != Role::kPatient) throw Error(ErrorCode::kForbidden, "patient role required");
    return p;
  }

  Principal AsDoctor(const httplib::Request& req) const {
    Principal p = Authenticated(req);
    if (p.role != Role::kDoctor) throw Error(ErrorCode::kForbidden, "doctor role required");
    return p;
  }

  // The patient themself, or any doctor.
  Principal SelfOrDoctor(const httplib::Request& req, const PatientId& patient) const {
    Principal p = Authenticated(req);
    if (p.role == Role::kPatient && p.patient() != patient) {
      throw Error(ErrorCode::kForbidden, "not your record");
    }
    return p;
  }

  void Register() {
    Add("GET", "/routes", [](const httplib::Request&) {
      json out = json::array();
      for (const RouteInfo& r : Routes()) {
        out.push_back({{"method", r.method}, {"path", r.path}, {"access", r.access},
                       {"summary", r.summary}});
      }
      return Reply{200, out};
    });

    Add("POST", "/signup", [this](const httplib::Request& req) {
      json body = ParseBody(req);
      PatientId id = registry.RegisterUser(RequireString(body, "username"),
                                           RequireString(body, "password"), clock.Now());
      return Reply{201, {{"patient_id", id.str()}}};
    });

    Add("POST", "/login", [this](const httplib::Request& req) {
      json body = ParseBody(req);
      auto session = registry.Authenticate(RequireString(body, "username"),
                                           RequireString(body, "password"), clock.Now());
      json out{{"token", session.token},
               {"role", registry::RoleName(session.principal.role)},
               {"account_id", session.principal.account.str()},
               {"expires_at", FormatRfc3339(session.expires_at)}};
      if (session.principal.role == Role::kPatient) {
        out["patient_id"] = session.principal.patient().str();
      }
      if (session.principal.doctor) out["doctor_id"] = session.principal.doctor->str();
      return Reply{200, out};
    });

    Add("GET", "/specialties", [this](const httplib::Request&) {
      json out = json::array();
      for (const auto& s : ssc.ListSpecialties()) out.push_back(ToJson(s));
      return Reply{200, out};
    });

    Add("GET", "/doctors", [this](const httplib::Request& req) {
      std::optional<SpecialtyId> specialty;
      if (req.has_param("specialty")) specialty = SpecialtyId(req.get_param_value("specialty"));
      json out = json::array();
      for (const auto& d : ssc.ListDoctors(specialty)) out.push_back(ToJson(d));
      return Reply{200, out};
    });

    Add("GET", "/doctors/:id/schedule", [this](const httplib::Request& req) {
      auto date = ParseDate(req.get_param_value("date"));
      if (!date) throw Error(ErrorCode::kValidation, "'date' must be YYYY-MM-DD");
      ssc.Tick(clock.Now());
      return Reply{200, ToJson(ssc.GetDoctorSchedule(DoctorId(req.path_params.at("id")), *date))};
    });

    Add("GET", "/doctors/:id/slots", [this](const httplib::Request& req) {
      Timestamp now = clock.Now();
      Timestamp from = req.has_param("from")
                           ? RequireTime(req.get_param_value("from"), "from")
                           : now;
      Timestamp to = req.has_param("to") ? RequireTime(req.get_param_value("to"), "to")
                                         : from + std::chrono::days(7);
      DoctorId doctor(req.path_params.at("id"));
      if (!registry.FindDoctor(doctor)) {
        throw Error(ErrorCode::kUnknownDoctor, "unknown doctor " + doctor.str());
      }
      ssc.Tick(now);
      json out = json::array();
      for (const auto& s : ssc.EstablishAvailable(doctor, Interval{from, to})) {
        out.push_back(ToJson(s));
      }
      return Reply{200, out};
    });

    Add("POST", "/slots/:id/hold", [this](const httplib::Request& req) {
      Principal p = AsPatient(req);
      json body = ParseBody(req, /*allow_empty=*/true);
      std::optional<RequestId> request;
      if (body.contains("request_id")) request = RequestId(RequireString(body, "request_id"));
      auto ticket = ssc.HoldSlot(SlotId(req.path_params.at("id")), p.patient(), clock.Now(),
                                 request);
      return Reply{200, ToJson(ticket)};
    });

    Add("POST", "/holds/:id/confirm", [this](const httplib::Request& req) {
      Principal p = AsPatient(req);
      TicketId ticket(req.path_params.at("id"));
      if (auto live = ssc.scheduler().FindTicket(ticket); live && live->patient != p.patient()) {
        throw Error(ErrorCode::kForbidden, "hold belongs to another patient");
      }
      return Reply{200, ToJson(ssc.ConfirmHold(ticket, clock.Now()))};
    });

    Add("DELETE", "/appointments/:id", [this](const httplib::Request& req) {
      Principal p = AsPatient(req);
      AppointmentId id(req.path_params.at("id"));
      auto appointment = registry.FindAppointment(id);
      if (appointment && appointment->patient != p.patient()) {
        throw Error(ErrorCode::kForbidden, "appointment belongs to another patient");
      }
      auto outcome = ssc.CancelAppointment(id, clock.Now());
      json offers = json::array();
      for (const auto& o : outcome.match.offers) {
        offers.push_back({{"request_id", o.request.str()}, {"slot_id", o.slot.str()}});
      }
      return Reply{200,
                   {{"appointment_id", id.str()},
                    {"slot_id", outcome.event.slot.str()},
                    {"cause", "cancellation"},
                    {"offers", offers},
                    {"broadcasts", outcome.match.broadcasts.size()}}};
    });

    Add("POST", "/appointments/:id/history", [this](const httplib::Request& req) {
      AsDoctor(req);
      json body = ParseBody(req);
      registry::HistoryEntry entry;
      entry.clinic = RequireString(body, "clinic");
      entry.summary = body.value("summary", "");
      entry.treatment = body.value("treatment", "");
      entry.notes = body.value("notes", "");
      entry.recorded_at = body.contains("recorded_at")
                              ? RequireTime(RequireString(body, "recorded_at"), "recorded_at")
                              : clock.Now();
      auto stored = registry.RecordHistory(AppointmentId(req.path_params.at("id")), entry);
      return Reply{201, ToJson(stored)};
    });

    Add("POST", "/doctors/:id/postpone", [this](const httplib::Request& req) {
      Principal p = AsDoctor(req);
      DoctorId doctor(req.path_params.at("id"));
      if (p.doctor != doctor) {
        throw Error(ErrorCode::kForbidden, "doctors may only postpone their own schedule");
      }
      json body = ParseBody(req);
      Interval window{RequireTime(RequireString(body, "from"), "from"),
                      RequireTime(RequireString(body, "to"), "to")};
      auto outcome = ssc.PostponeDoctor(doctor, window, clock.Now());
      json affected = json::array();
      for (const auto& a : outcome.released.affected) affected.push_back(ToJson(a));
      json offers = json::array();
      for (const auto& o : outcome.match.offers) {
        offers.push_back({{"request_id", o.request.str()}, {"slot_id", o.slot.str()}});
      }
      return Reply{200,
                   {{"released", outcome.released.events.size()},
                    {"retired", outcome.released.retired.size()},
                    {"patients_notified", outcome.patient_notices.size()},
                    {"affected", affected},
                    {"offers", offers},
                    {"broadcasts", outcome.match.broadcasts.size()}}};
    });

    Add("POST", "/requests", [this](const httplib::Request& req) {
      Principal p = AsPatient(req);
      json body = ParseBody(req);
      if (!body.contains("filter")) throw Error(ErrorCode::kInvalidFilter, "filter is required");
      RequestFilter filter = FilterFromJson(body["filter"]);
      PriorityClass priority = PriorityClass::kRoutine;
      if (body.contains("priority")) {
        auto parsed = ParsePriority(RequireString(body, "priority"));
        if (!parsed) {
          throw Error(ErrorCode::kValidation, "priority must be routine, urgent or emergency");
        }
        priority = *parsed;
      }
      RequestId id = ssc.SubmitRequest(p.patient(), filter, priority, clock.Now());
      return Reply{201, ToJson(*ssc.FindRequest(id))};
    });

    Add("GET", "/requests", [this](const httplib::Request& req) {
      AsDoctor(req);
      json out = json::array();
      for (const auto& r : ssc.PendingQueueSnapshot()) out.push_back(ToJson(r));
      return Reply{200, out};
    });

    Add("GET", "/requests/:id/candidates", [this](const httplib::Request& req) {
      Principal p = AsPatient(req);
      RequestId id(req.path_params.at("id"));
      auto request = ssc.FindRequest(id);
      if (request && request->patient != p.patient()) {
        throw Error(ErrorCode::kForbidden, "request belongs to another patient");
      }
      Timestamp now = clock.Now();
      ssc.Tick(now);
      json out = json::array();
      for (const auto& s : ssc.ResolveRequest(id, now)) out.push_back(ToJson(s));
      return Reply{200, out};
    });

    Add("DELETE", "/requests/:id", [this](const httplib::Request& req) {
      Principal p = AsPatient(req);
      RequestId id(req.path_params.at("id"));
      auto request = ssc.FindRequest(id);
      if (request && request->patient != p.patient()) {
        throw Error(ErrorCode::kForbidden, "request belongs to another patient");
      }
      ssc.WithdrawRequest(id);
      return Reply{200, ToJson(*ssc.FindRequest(id))};
    });

    Add("GET", "/patients/:id/appointments", [this](const httplib::Request& req) {
      PatientId patient(req.path_params.at("id"));
      SelfOrDoctor(req, patient);
      if (!registry.PatientExists(patient)) {
        throw Error(ErrorCode::kUnknownPatient, "unknown patient " + patient.str());
      }
      json out = json::array();
      for (const auto& a : registry.AppointmentsOf(patient)) out.push_back(ToJson(a));
      return Reply{200, out};
    });

    Add("GET", "/patients/:id/history", [this](const httplib::Request& req) {
      PatientId patient(req.path_params.at("id"));
      SelfOrDoctor(req, patient);
      json out = json::array();
      for (const auto& e : registry.FetchHistory(patient)) out.push_back(ToJson(e));
      return Reply{200, out};
    });

    Add("GET", "/patients/:id/notifications", [this](const httplib::Request& req) {
      PatientId patient(req.path_params.at("id"));
      Principal p = Authenticated(req);
      if (p.role != Role::kPatient || p.patient() != patient) {
        throw Error(ErrorCode::kForbidden, "not your inbox");
      }
      Timestamp now = clock.Now();
      ssc.Tick(now);
      json out = json::array();
      for (const auto& n : notifier.InboxFor(patient, now)) out.push_back(notify::ToJson(n));
      return Reply{200, out};
    });

    http.set_tcp_nodelay(true);
    http.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (res.body.empty()) {
        res.set_content(ErrorBody(res.status == 404 ? "NOT_FOUND" : "HTTP_ERROR",
                                  httplib::status_message(res.status))
                            .dump(),
                        "application/json");
      }
    });
  }
};

ApiServer::ApiServer(ssc::SchedulingCheckup& ssc, registry::Registry& registry,
                     notify::Notifier& notifier, const Clock& clock)
    : impl_(std::make_unique<Impl>(ssc, registry, notifier, clock)) {}

ApiServer::~ApiServer() { Stop(); }

int ApiServer::BindToAnyPort(const std::string& host) {
  return impl_->http.bind_to_any_port(host);
}

bool ApiServer::Bind(const std::string& host, int port) {
  return impl_->http.bind_to_port(host, port);
}

bool ApiServer::ListenAfterBind() { return impl_->http.listen_after_bind(); }

void ApiServer::Stop() {
  if (impl_) impl_->http.stop();
}

bool ApiServer::IsRunning() const { return impl_->http.is_running(); }

}  // namespace mass::api
