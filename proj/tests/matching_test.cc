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

#include "harness/harness.h"
#include "mass/scheduling/matching.h"
#include "test_support.h"

namespace mass::scheduling {
namespace {

using mass::testing::At;

TimeSlot Freed(const std::string& id) {
  TimeSlot s;
  s.id = SlotId(id);
  s.doctor = DoctorId("d1");
  s.start = At(9);
  s.duration = std::chrono::minutes(10);
  s.state = SlotReleased{FreedCause::kCancellation};
  return s;
}

AppointmentRequest Req(const std::string& id, PriorityClass p, int minute, std::uint64_t seq) {
  AppointmentRequest r;
  r.id = RequestId(id);
  r.patient = PatientId("p-" + id);
  r.filter.target = ByDoctor{DoctorId("d1")};
  r.priority = p;
  r.submitted_at = At(7, minute);
  r.sequence = seq;
  return r;
}

bool Any(const AppointmentRequest&, const TimeSlot&) { return true; }

TEST(Matching, EmptyQueueBroadcasts) {
  std::vector<TimeSlot> freed{Freed("s1")};
  auto plan = MatchFreedSlots(freed, {}, Any);
  EXPECT_TRUE(plan.offers.empty());
  EXPECT_EQ(plan.unmatched, std::vector<SlotId>{SlotId("s1")});
}

TEST(Matching, PriorityBeatsTimestamp) {
  std::vector<TimeSlot> freed{Freed("s1")};
  std::vector<AppointmentRequest> q{Req("B", PriorityClass::kRoutine, 1, 1),
                                    Req("A", PriorityClass::kUrgent, 5, 2)};
  auto plan = MatchFreedSlots(freed, q, Any);
  ASSERT_EQ(plan.offers.size(), 1u);
  EXPECT_EQ(plan.offers[0].request, RequestId("A"));
}

TEST(Matching, EarlierRequestWinsWithinPriority) {
  std::vector<TimeSlot> freed{Freed("s1")};
  std::vector<AppointmentRequest> q{Req("late", PriorityClass::kRoutine, 2, 2),
                                    Req("early", PriorityClass::kRoutine, 1, 1)};
  auto plan = MatchFreedSlots(freed, q, Any);
  ASSERT_EQ(plan.offers.size(), 1u);
  EXPECT_EQ(plan.offers[0].request, RequestId("early"));
}

TEST(Matching, EachRequestGetsAtMostOneSlot) {
  std::vector<TimeSlot> freed{Freed("s1"), Freed("s2"), Freed("s3")};
  std::vector<AppointmentRequest> q{Req("a", PriorityClass::kRoutine, 1, 1),
                                    Req("b", PriorityClass::kRoutine, 2, 2)};
  auto plan = MatchFreedSlots(freed, q, Any);
  EXPECT_EQ(plan.offers, (std::vector<Offer>{{RequestId("a"), SlotId("s1")},
                                             {RequestId("b"), SlotId("s2")}}));
  EXPECT_EQ(plan.unmatched, std::vector<SlotId>{SlotId("s3")});
}

TEST(Matching, SkipsIncompatibleAndNonPending) {
  std::vector<TimeSlot> freed{Freed("s1")};
  auto other = Req("other-doctor", PriorityClass::kEmergency, 0, 1);
  other.filter.target = ByDoctor{DoctorId("d2")};
  auto withdrawn = Req("withdrawn", PriorityClass::kEmergency, 0, 2);
  withdrawn.status = RequestStatus::kWithdrawn;
  auto ok = Req("ok", PriorityClass::kRoutine, 9, 3);
  std::vector<AppointmentRequest> q{other, withdrawn, ok};
  auto compatible = [](const AppointmentRequest& r, const TimeSlot& s) {
    return FilterAccepts(r.filter, s.doctor, SpecialtyId("x"), s.start);
  };
  auto plan = MatchFreedSlots(freed, q, compatible);
  ASSERT_EQ(plan.offers.size(), 1u);
  EXPECT_EQ(plan.offers[0].request, RequestId("ok"));
}

TEST(Matching, AgreesWithBruteForceOnRandomQueues) {
  auto stats = harness::RunMatchingOracle(300, 100, 7);
  EXPECT_EQ(stats.mismatches, 0) << stats.first_mismatch;
  EXPECT_GT(stats.offers, 0);
}

}  // namespace
}  // namespace mass::scheduling
