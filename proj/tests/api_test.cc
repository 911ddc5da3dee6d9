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

#include <gtest/gtest.h>
#include <httplib.h>

#include <random>
#include <set>
#include <thread>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "harness/harness.h"
#include "mass/api/server.h"
#include "mass/notify/notifier.h"
#include "mass/ssc/scheduling_checkup.h"
#include "test_support.h"

namespace mass::api {
namespace {

using mass::testing::At;
using nlohmann::json;

struct Reply {
  int status = 0;
  json body;
};

class ApiTest : public ::testing::Test {
 protected:
  ApiTest() : clock_(At(6)) {
    reg_ = mass::testing::MakeRegistry();
    reg_->AddSpecialty({SpecialtyId("cardiology"), "Cardiology"});
    reg_->AddSpecialty({SpecialtyId("pediatrics"), "Pediatrics"});
    reg_->UpsertDoctor(mass::testing::Weekday("d1", "cardiology", 8, 9));
    reg_->UpsertDoctor(mass::testing::Weekday("d2", "pediatrics", 8, 9));
    reg_->RegisterDoctorAccount("dr-one", "doctor-secret", DoctorId("d1"), At(0));
    reg_->RegisterDoctorAccount("dr-two", "doctor-secret", DoctorId("d2"), At(0));
    ssc_ = std::make_unique<ssc::SchedulingCheckup>(*reg_, notifier_);
    ssc_->MaterializeCalendar(mass::testing::TestDay(), 1);
    server_ = std::make_unique<ApiServer>(*ssc_, *reg_, notifier_, clock_);
    port_ = server_->BindToAnyPort("127.0.0.1");
    listener_ = std::thread([this] { server_->ListenAfterBind(); });
    while (!server_->IsRunning()) std::this_thread::sleep_for(std::chrono::milliseconds(1));
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }

  ~ApiTest() override {
    server_->Stop();
    listener_.join();
  }

  Reply Call(const std::string& method, const std::string& path, const std::string& token = "",
             const std::string& body = "") {
    httplib::Headers headers;
    if (!token.empty()) headers.emplace(kSessionHeader, token);
    httplib::Result res;
    if (method == "GET") {
      res = client_->Get(path, headers);
    } else if (method == "POST") {
      res = client_->Post(path, headers, body, "application/json");
    } else {
      res = client_->Delete(path, headers);
    }
    if (!res) return {-1, nullptr};
    return {res->status, json::parse(res->body, nullptr, false)};
  }

  Reply Post(const std::string& path, const json& body, const std::string& token = "") {
    return Call("POST", path, token, body.dump());
  }

  // Returns {patient_id, token}.
  std::pair<std::string, std::string> Patient(const std::string& name) {
    auto signup = Post("/signup", {{"username", name}, {"password", name + "-secret"}});
    EXPECT_EQ(signup.status, 201);
    auto login = Post("/login", {{"username", name}, {"password", name + "-secret"}});
    EXPECT_EQ(login.status, 200);
    return {login.body["patient_id"], login.body["token"]};
  }

  std::string Doctor(const std::string& username) {
    return Post("/login", {{"username", username}, {"password", "doctor-secret"}})
        .body["token"];
  }

  std::vector<std::string> FreeSlotIds(const std::string& doctor) {
    auto r = Call("GET", "/doctors/" + doctor + "/schedule?date=2030-01-07");
    std::vector<std::string> ids;
    for (const auto& s : r.body["slots"]) ids.push_back(s["slot_id"]);
    return ids;
  }

  ManualClock clock_;
  std::unique_ptr<registry::Registry> reg_;
  notify::Notifier notifier_;
  std::unique_ptr<ssc::SchedulingCheckup> ssc_;
  std::unique_ptr<ApiServer> server_;
  int port_ = 0;
  std::thread listener_;
  std::unique_ptr<httplib::Client> client_;
};

TEST_F(ApiTest, RouteListingCoversTheSurface) {
  auto r = Call("GET", "/routes");
  ASSERT_EQ(r.status, 200);
  std::set<std::string> routes;
  for (const auto& e : r.body) {
    routes.insert(e["method"].get<std::string>() + " " + e["path"].get<std::string>());
  }
  for (const char* want :
       {"POST /signup", "POST /login", "GET /specialties", "GET /doctors",
        "GET /doctors/:id/schedule", "GET /doctors/:id/slots", "POST /slots/:id/hold",
        "POST /holds/:id/confirm", "DELETE /appointments/:id", "POST /doctors/:id/postpone",
        "POST /requests", "GET /patients/:id/history", "GET /patients/:id/notifications"}) {
    EXPECT_TRUE(routes.contains(want)) << want;
  }
}

TEST_F(ApiTest, SignupAndLogin) {
  EXPECT_EQ(Post("/signup", {{"username", "ann"}, {"password", "ann-secret"}}).status, 201);
  auto dup = Post("/signup", {{"username", "ann"}, {"password", "ann-secret"}});
  EXPECT_EQ(dup.status, 409);
  EXPECT_EQ(dup.body["code"], "USERNAME_TAKEN");
  auto weak = Post("/signup", {{"username", "bob"}, {"password", "1234567"}});
  EXPECT_EQ(weak.status, 422);
  EXPECT_EQ(weak.body["code"], "WEAK_CREDENTIAL");
  EXPECT_EQ(Post("/signup", {{"username", "bob"}}).status, 422);
  EXPECT_EQ(Call("POST", "/signup", "", "{not json").status, 422);

  auto login = Post("/login", {{"username", "ann"}, {"password", "ann-secret"}});
  EXPECT_EQ(login.status, 200);
  EXPECT_EQ(login.body["role"], "patient");
  auto wrong = Post("/login", {{"username", "ann"}, {"password", "nope-nope"}});
  auto unknown = Post("/login", {{"username", "zed"}, {"password", "nope-nope"}});
  EXPECT_EQ(wrong.status, 401);
  EXPECT_EQ(wrong.body, unknown.body);
}

TEST_F(ApiTest, Directory) {
  auto specialties = Call("GET", "/specialties");
  ASSERT_EQ(specialties.status, 200);
  EXPECT_EQ(specialties.body.size(), 2u);
  EXPECT_EQ(Call("GET", "/doctors").body.size(), 2u);
  auto cardio = Call("GET", "/doctors?specialty=cardiology");
  ASSERT_EQ(cardio.body.size(), 1u);
  EXPECT_EQ(cardio.body[0]["id"], "d1");
  EXPECT_EQ(Call("GET", "/doctors?specialty=oncology").status, 404);

  auto schedule = Call("GET", "/doctors/d1/schedule?date=2030-01-07");
  ASSERT_EQ(schedule.status, 200);
  EXPECT_EQ(schedule.body["slots"].size(), 6u);
  EXPECT_EQ(schedule.body["specialty"], "cardiology");
  const auto& slot = schedule.body["slots"][0];
  EXPECT_EQ(slot["year"], 2030);
  EXPECT_EQ(slot["month"], 1);
  EXPECT_EQ(slot["day"], 7);
  EXPECT_EQ(slot["time"], "08:00");
  EXPECT_EQ(slot["duration"], 10);
  EXPECT_EQ(Call("GET", "/doctors/d1/schedule?date=tomorrow").status, 422);
  EXPECT_EQ(Call("GET", "/doctors/zz/schedule?date=2030-01-07").status, 404);

  auto window = Call("GET", "/doctors/d1/slots?from=2030-01-07T08:15:00Z&to=2030-01-07T09:00:00Z");
  ASSERT_EQ(window.status, 200);
  EXPECT_EQ(window.body.size(), 3u);
  EXPECT_EQ(Call("GET", "/doctors/d1/slots?from=yesterday").status, 422);
  EXPECT_EQ(Call("GET", "/doctors/zz/slots").status, 404);
  EXPECT_EQ(Call("GET", "/no/such/route").status, 404);
}

TEST_F(ApiTest, HoldConfirmHappyPath) {
  auto [ann, token] = Patient("ann");
  auto slot = FreeSlotIds("d1")[0];
  EXPECT_EQ(Post("/slots/" + slot + "/hold", json::object()).status, 401);
  EXPECT_EQ(Post("/slots/" + slot + "/hold", json::object(), "bogus").status, 401);
  EXPECT_EQ(Post("/slots/" + slot + "/hold", json::object(), Doctor("dr-one")).status, 403);

  auto hold = Call("POST", "/slots/" + slot + "/hold", token);
  ASSERT_EQ(hold.status, 200);
  EXPECT_EQ(hold.body["expires_at"], "2030-01-07T06:02:00Z");
  clock_.Advance(std::chrono::seconds(119));
  auto confirm = Call("POST", "/holds/" + hold.body["ticket_id"].get<std::string>() + "/confirm",
                      token);
  ASSERT_EQ(confirm.status, 200);
  EXPECT_EQ(confirm.body["slot_id"], slot);
  EXPECT_EQ(confirm.body["patient_id"], ann);
  EXPECT_EQ(confirm.body["state"], "active");
  EXPECT_EQ(FreeSlotIds("d1").size(), 5u);

  auto mine = Call("GET", "/patients/" + ann + "/appointments", token);
  ASSERT_EQ(mine.status, 200);
  EXPECT_EQ(mine.body.size(), 1u);
  EXPECT_EQ(Post("/slots/nope/hold", json::object(), token).status, 404);
}

TEST_F(ApiTest, SecondHoldConflicts) {
  auto [ann, ann_token] = Patient("ann");
  auto [bob, bob_token] = Patient("bob");
  auto slot = FreeSlotIds("d1")[0];
  EXPECT_EQ(Call("POST", "/slots/" + slot + "/hold", ann_token).status, 200);
  auto second = Call("POST", "/slots/" + slot + "/hold", bob_token);
  EXPECT_EQ(second.status, 409);
  EXPECT_EQ(second.body["code"], "SLOT_TAKEN");
}

TEST_F(ApiTest, ConfirmAfterTtlIsGoneAndSlotReturns) {
  auto [ann, token] = Patient("ann");
  auto slot = FreeSlotIds("d1")[0];
  auto hold = Call("POST", "/slots/" + slot + "/hold", token);
  EXPECT_EQ(FreeSlotIds("d1").size(), 5u);
  clock_.Advance(std::chrono::seconds(121));
  auto confirm = Call("POST", "/holds/" + hold.body["ticket_id"].get<std::string>() + "/confirm",
                      token);
  EXPECT_EQ(confirm.status, 410);
  EXPECT_EQ(confirm.body["code"], "HOLD_EXPIRED");
  auto slots = Call("GET", "/doctors/d1/slots?from=2030-01-07T00:00:00Z&to=2030-01-08T00:00:00Z");
  bool back = false;
  for (const auto& s : slots.body) back = back || s["slot_id"] == slot;
  EXPECT_TRUE(back);
  // Everyone hears about it.
  auto inbox = Call("GET", "/patients/" + ann + "/notifications", token);
  ASSERT_EQ(inbox.body.size(), 1u);
  EXPECT_EQ(inbox.body[0]["payload"]["cause"], "hold_expiry");
}

TEST_F(ApiTest, OnlyTheHolderConfirms) {
  auto [ann, ann_token] = Patient("ann");
  auto [bob, bob_token] = Patient("bob");
  auto hold = Call("POST", "/slots/" + FreeSlotIds("d1")[0] + "/hold", ann_token);
  auto ticket = hold.body["ticket_id"].get<std::string>();
  EXPECT_EQ(Call("POST", "/holds/" + ticket + "/confirm", bob_token).status, 403);
  EXPECT_EQ(Call("POST", "/holds/" + ticket + "/confirm", ann_token).status, 200);
  EXPECT_EQ(Call("POST", "/holds/" + ticket + "/confirm", ann_token).status, 404);
}

TEST_F(ApiTest, CancellationReachesOtherInboxes) {
  auto [ann, ann_token] = Patient("ann");
  auto [bob, bob_token] = Patient("bob");
  auto slot = FreeSlotIds("d1")[2];
  auto hold = Call("POST", "/slots/" + slot + "/hold", ann_token);
  auto appt = Call("POST", "/holds/" + hold.body["ticket_id"].get<std::string>() + "/confirm",
                   ann_token)
                  .body["appointment_id"]
                  .get<std::string>();
  EXPECT_EQ(Call("DELETE", "/appointments/" + appt, bob_token).status, 403);
  EXPECT_EQ(Call("DELETE", "/appointments/a-404", ann_token).status, 404);
  auto cancel = Call("DELETE", "/appointments/" + appt, ann_token);
  ASSERT_EQ(cancel.status, 200);
  EXPECT_EQ(cancel.body["broadcasts"], 1);

  auto inbox = Call("GET", "/patients/" + bob + "/notifications", bob_token);
  ASSERT_EQ(inbox.status, 200);
  ASSERT_EQ(inbox.body.size(), 1u);
  EXPECT_EQ(inbox.body[0]["kind"], "slot_available");
  EXPECT_EQ(inbox.body[0]["payload"]["slot_id"], slot);
  EXPECT_EQ(Call("POST", "/slots/" + slot + "/hold", bob_token).status, 200);
  EXPECT_EQ(Call("GET", "/patients/" + ann + "/notifications", bob_token).status, 403);
}

TEST_F(ApiTest, PostponementIsDoctorOnly) {
  auto [ann, token] = Patient("ann");
  for (int i : {0, 2}) {
    auto hold = Call("POST", "/slots/" + FreeSlotIds("d1")[i == 0 ? 0 : 1] + "/hold", token);
    Call("POST", "/holds/" + hold.body["ticket_id"].get<std::string>() + "/confirm", token);
  }
  json window{{"from", "2030-01-07T08:00:00Z"}, {"to", "2030-01-07T08:15:00Z"}};
  EXPECT_EQ(Post("/doctors/d1/postpone", window, token).status, 403);
  EXPECT_EQ(Post("/doctors/d1/postpone", window, Doctor("dr-two")).status, 403);
  EXPECT_EQ(Post("/doctors/d1/postpone", window).status, 401);
  auto past = Post("/doctors/d1/postpone",
                   {{"from", "2030-01-07T05:00:00Z"}, {"to", "2030-01-07T08:15:00Z"}},
                   Doctor("dr-one"));
  EXPECT_EQ(past.status, 422);
  auto done = Post("/doctors/d1/postpone", window, Doctor("dr-one"));
  ASSERT_EQ(done.status, 200);
  EXPECT_EQ(done.body["patients_notified"], 2);
  auto empty = Post("/doctors/d1/postpone",
                    {{"from", "2030-01-07T12:00:00Z"}, {"to", "2030-01-07T13:00:00Z"}},
                    Doctor("dr-one"));
  EXPECT_EQ(empty.body["affected"].size(), 0u);
}

TEST_F(ApiTest, RequestsFlow) {
  auto [ann, token] = Patient("ann");
  auto created = Post("/requests",
                      {{"filter", {{"by", "specialty"}, {"specialty", "cardiology"}}},
                       {"priority", "urgent"}},
                      token);
  ASSERT_EQ(created.status, 201);
  EXPECT_EQ(created.body["status"], "pending");
  std::string id = created.body["request_id"];
  auto candidates = Call("GET", "/requests/" + id + "/candidates", token);
  ASSERT_EQ(candidates.status, 200);
  EXPECT_EQ(candidates.body.size(), 6u);
  auto queue = Call("GET", "/requests", Doctor("dr-one"));
  ASSERT_EQ(queue.status, 200);
  EXPECT_EQ(queue.body.size(), 1u);
  EXPECT_EQ(Call("GET", "/requests", token).status, 403);

  EXPECT_EQ(Post("/requests", {{"filter", {{"by", "mood"}}}}, token).status, 422);
  EXPECT_EQ(Post("/requests", {{"filter", {{"by", "doctor"}, {"doctor", "zz"}}}}, token).status,
            422);
  EXPECT_EQ(Post("/requests",
                 {{"filter", {{"by", "day"}, {"date", "2030-01-07"}}}, {"priority", "asap"}},
                 token)
                .status,
            422);

  auto withdrawn = Call("DELETE", "/requests/" + id, token);
  ASSERT_EQ(withdrawn.status, 200);
  EXPECT_EQ(withdrawn.body["status"], "withdrawn");
  EXPECT_EQ(Call("DELETE", "/requests/" + id, token).status, 409);
  EXPECT_EQ(Call("GET", "/requests/r-404/candidates", token).status, 404);
}

TEST_F(ApiTest, HistoryAccess) {
  auto [ann, ann_token] = Patient("ann");
  auto [bob, bob_token] = Patient("bob");
  auto hold = Call("POST", "/slots/" + FreeSlotIds("d1")[0] + "/hold", ann_token);
  std::string appt =
      Call("POST", "/holds/" + hold.body["ticket_id"].get<std::string>() + "/confirm", ann_token)
          .body["appointment_id"];
  json entry{{"clinic", "north"}, {"summary", "checkup"}, {"treatment", "rest"}};
  EXPECT_EQ(Post("/appointments/" + appt + "/history", entry, ann_token).status, 403);
  EXPECT_EQ(Post("/appointments/a-404/history", entry, Doctor("dr-one")).status, 404);
  EXPECT_EQ(Post("/appointments/" + appt + "/history", entry, Doctor("dr-one")).status, 201);

  auto own = Call("GET", "/patients/" + ann + "/history", ann_token);
  ASSERT_EQ(own.status, 200);
  ASSERT_EQ(own.body.size(), 1u);
  EXPECT_EQ(own.body[0]["clinic"], "north");
  EXPECT_EQ(Call("GET", "/patients/" + ann + "/history", bob_token).status, 403);
  EXPECT_EQ(Call("GET", "/patients/" + ann + "/history", Doctor("dr-two")).status, 200);
  EXPECT_EQ(Call("GET", "/patients/p-404/history", Doctor("dr-two")).status, 404);
  EXPECT_EQ(Call("GET", "/patients/" + ann + "/history").status, 401);
}

TEST_F(ApiTest, MalformedBodiesNeverCauseServerErrors) {
  auto [ann, token] = Patient("ann");
  std::string doctor = Doctor("dr-one");
  auto slot = FreeSlotIds("d1")[0];
  std::vector<std::string> bodies{"",
                                  "null",
                                  "[]",
                                  "42",
                                  "\"text\"",
                                  "{",
                                  "{}",
                                  R"({"username": 5, "password": []})",
                                  R"({"filter": "day"})",
                                  R"({"filter": {"by": "day", "date": 20300107}})",
                                  R"({"filter": {"by": "day", "date": "2030-01-07", "preferred": {"from": "25:00", "to": "x"}}})",
                                  R"({"from": 1, "to": null})",
                                  R"({"from": "2030-01-07T09:00:00Z", "to": "2030-01-07T08:00:00Z"})",
                                  R"({"clinic": ["north"]})",
                                  R"({"request_id": 12})",
                                  R"({"priority": {"nested": true}, "filter": {"by": "doctor"}})"};
  std::mt19937 rng(11);
  for (int i = 0; i < 60; ++i) {
    std::string noise;
    int len = std::uniform_int_distribution<int>(0, 40)(rng);
    for (int k = 0; k < len; ++k) {
      noise.push_back(static_cast<char>(std::uniform_int_distribution<int>(1, 255)(rng)));
    }
    bodies.push_back(noise);
  }
  std::vector<std::pair<std::string, std::string>> targets{
      {"/signup", ""},
      {"/login", ""},
      {"/slots/" + slot + "/hold", token},
      {"/holds/h-1/confirm", token},
      {"/requests", token},
      {"/doctors/d1/postpone", doctor},
      {"/appointments/a-1/history", doctor}};
  for (const auto& [path, auth] : targets) {
    for (const auto& body : bodies) {
      auto r = Call("POST", path, auth, body);
      EXPECT_GT(r.status, 0) << path;
      EXPECT_LT(r.status, 500) << path << " with body " << json(body).dump();
      EXPECT_TRUE(r.body.is_object()) << path;
    }
  }
}

TEST(ApiRace, TwoClientsOneSlot) {
  auto stats = harness::RaceHoldsOverHttp(20);
  EXPECT_EQ(stats.rounds, 20);
  EXPECT_EQ(stats.exactly_one_winner, 20) << stats.first_anomaly;
}

TEST(ApiStatus, Mapping) {
  EXPECT_EQ(HttpStatusFor(ErrorCode::kSlotTaken), 409);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kHoldExpired), 410);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kUnauthenticated), 401);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kForbidden), 403);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kUnknownDoctor), 404);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kValidation), 422);
}

}  // namespace
}  // namespace mass::api
