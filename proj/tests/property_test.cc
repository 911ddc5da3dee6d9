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

namespace mass {
namespace {

TEST(BookingProperty, NoDoubleBookingAcrossRandomSequences) {
  auto stats = harness::RunBookingSequences(2000, 1);
  EXPECT_EQ(stats.violations, 0) << stats.first_violation;
  EXPECT_EQ(stats.sequences, 2000);
  // The generator must actually exercise the machine.
  EXPECT_GT(stats.transitions, stats.sequences * 5);
  EXPECT_GT(stats.rejected, 0);
}

}  // namespace
}  // namespace mass
