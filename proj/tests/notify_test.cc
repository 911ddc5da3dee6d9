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

#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "mass/notify/notifier.h"
#include "mass/notify/sinks.h"
#include "test_support.h"

namespace mass::notify {
namespace {

using mass::testing::At;
using mass::testing::CodeOf;
using std::chrono::hours;
using std::chrono::minutes;

Appointment ApptAt(Timestamp start, const std::string& id = "a-1") {
  Appointment a;
  a.id = AppointmentId(id);
  a.patient = PatientId("p-1");
  a.doctor = DoctorId("d1");
  a.slot = SlotId("d1-slot");
  a.slot_start = start;
  a.duration = minutes(10);
  return a;
}

scheduling::TimeSlot Slot(scheduling::SlotState state) {
  scheduling::TimeSlot s;
  s.id = SlotId("d1-slot");
  s.doctor = DoctorId("d1");
  s.start = At(9) + std::chrono::days(2);
  s.duration = minutes(10);
  s.state = state;
  return s;
}

TEST(Reminders, DueAtStartMinusLead) {
  Notifier n;
  Timestamp start = At(9) + std::chrono::days(2);
  std::vector<minutes> leads{hours(24), hours(1)};
  auto out = n.ScheduleReminders(ApptAt(start), leads, At(9));
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].due_at, start - hours(24));
  EXPECT_EQ(out[1].due_at, start - hours(1));
  EXPECT_EQ(out[0].recipient, PatientId("p-1"));
  EXPECT_EQ(out[1].payload.lead_minutes, 60);
}

TEST(Reminders, PastLeadsAreSkipped) {
  Notifier n;
  std::vector<minutes> day{hours(24)};
  EXPECT_TRUE(n.ScheduleReminders(ApptAt(At(9, 30)), day, At(9)).empty());
  std::vector<minutes> both{hours(24), minutes(15)};
  auto out = n.ScheduleReminders(ApptAt(At(9, 30)), both, At(9));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].due_at, At(9, 15));
}

TEST(Reminders, NoLeadsNoReminders) {
  Notifier n;
  EXPECT_TRUE(n.ScheduleReminders(ApptAt(At(12)), {}, At(9)).empty());
}

TEST(Reminders, CancelDropsUndelivered) {
  Notifier n;
  std::vector<minutes> leads{hours(2), hours(1)};
  n.ScheduleReminders(ApptAt(At(12)), leads, At(9));
  n.DrainDue(At(10));
  EXPECT_EQ(n.CancelReminders(AppointmentId("a-1")), 1u);
  EXPECT_TRUE(n.DrainDue(At(12)).empty());
}

TEST(SlotAvailable, BroadcastCarriesCause) {
  Notifier n;
  auto note = n.PublishSlotAvailable(
      Slot(scheduling::SlotReleased{scheduling::FreedCause::kCancellation}),
      AvailabilityCause::kCancellation, At(9));
  EXPECT_TRUE(note.broadcast());
  EXPECT_EQ(note.kind, NotificationKind::kSlotAvailable);
  EXPECT_EQ(note.payload.cause, AvailabilityCause::kCancellation);
  auto expired = n.PublishSlotAvailable(Slot(scheduling::SlotAvailable{}),
                                        AvailabilityCause::kHoldExpiry, At(9));
  EXPECT_EQ(expired.payload.cause, AvailabilityCause::kHoldExpiry);
  EXPECT_EQ(CodeOf([&] {
              n.PublishSlotAvailable(Slot(scheduling::SlotBooked{AppointmentId("a-1")}),
                                     AvailabilityCause::kCancellation, At(9));
            }),
            ErrorCode::kPreconditionFailed);
}

TEST(Drain, OrderAndIdempotence) {
  Notifier n;
  EXPECT_TRUE(n.DrainDue(At(9)).empty());
  std::vector<minutes> leads{hours(3), hours(1)};
  n.ScheduleReminders(ApptAt(At(12)), leads, At(8));  // due 09:00 and 11:00
  n.PublishSlotAvailable(Slot(scheduling::SlotAvailable{}), AvailabilityCause::kHoldExpiry,
                         At(8, 30));
  auto first = n.DrainDue(At(10));
  ASSERT_EQ(first.size(), 2u);
  EXPECT_EQ(first[0].due_at, At(8, 30));
  EXPECT_EQ(first[1].due_at, At(9));
  for (const auto& note : first) EXPECT_TRUE(note.delivered);
  EXPECT_TRUE(n.DrainDue(At(10)).empty());
  EXPECT_EQ(n.DrainDue(At(11)).size(), 1u);
}

TEST(Inbox, OwnNotificationsAndBroadcasts) {
  Notifier n;
  std::vector<minutes> leads{hours(1)};
  n.ScheduleReminders(ApptAt(At(12)), leads, At(8));
  auto other = ApptAt(At(12), "a-2");
  other.patient = PatientId("p-2");
  n.ScheduleReminders(other, leads, At(8));
  n.PublishSlotAvailable(Slot(scheduling::SlotAvailable{}), AvailabilityCause::kCancellation,
                         At(8));
  EXPECT_EQ(n.InboxFor(PatientId("p-1"), At(9)).size(), 1u);  // reminder not yet due
  auto inbox = n.InboxFor(PatientId("p-1"), At(11));
  ASSERT_EQ(inbox.size(), 2u);
  EXPECT_TRUE(inbox[0].broadcast());
  EXPECT_EQ(inbox[1].recipient, PatientId("p-1"));
}

TEST(Sinks, InboxAndLogSeeEachNotificationOnce) {
  Notifier n;
  auto inbox = std::make_shared<InboxSink>();
  std::ostringstream log;
  n.AddSink(inbox);
  n.AddSink(std::make_shared<LogSink>(log));
  n.PublishSlotAvailable(Slot(scheduling::SlotAvailable{}), AvailabilityCause::kCancellation,
                         At(8));
  n.DrainDue(At(9));
  n.DrainDue(At(10));
  EXPECT_EQ(inbox->Delivered().size(), 1u);
  auto line = nlohmann::json::parse(log.str());
  EXPECT_EQ(line["kind"], "slot_available");
  EXPECT_EQ(line["recipient"], "broadcast");
  EXPECT_EQ(line["payload"]["cause"], "cancellation");
}

TEST(Sinks, WebhookPostsJson) {
  httplib::Server hook;
  std::mutex mu;
  std::vector<nlohmann::json> received;
  hook.Post("/events", [&](const httplib::Request& req, httplib::Response& res) {
    std::lock_guard lock(mu);
    received.push_back(nlohmann::json::parse(req.body));
    res.status = 204;
  });
  int port = hook.bind_to_any_port("127.0.0.1");
  std::thread t([&] { hook.listen_after_bind(); });
  hook.wait_until_ready();

  Notifier n;
  auto sink = std::make_shared<WebhookSink>("http://127.0.0.1:" + std::to_string(port) +
                                            "/events");
  n.AddSink(sink);
  std::vector<minutes> leads{hours(1)};
  n.ScheduleReminders(ApptAt(At(12)), leads, At(8));
  n.DrainDue(At(11));
  hook.stop();
  t.join();

  EXPECT_EQ(sink->failures(), 0u);
  ASSERT_EQ(received.size(), 1u);
  EXPECT_EQ(received[0]["kind"], "reminder");
  EXPECT_EQ(received[0]["recipient"], "p-1");
  EXPECT_EQ(received[0]["due_at"], "2030-01-07T11:00:00Z");
}

TEST(Sinks, WebhookCountsFailures) {
  EXPECT_EQ(CodeOf([] { WebhookSink("ftp://x"); }), ErrorCode::kValidation);
  Notifier n;
  // Nothing listens on port 9 of loopback in the sandbox.
  auto sink = std::make_shared<WebhookSink>("http://127.0.0.1:9/none");
  n.AddSink(sink);
  n.PublishSlotAvailable(Slot(scheduling::SlotAvailable{}), AvailabilityCause::kCancellation,
                         At(8));
  n.DrainDue(At(9));
  EXPECT_EQ(sink->failures(), 1u);
}

}  // namespace
}  // namespace mass::notify
