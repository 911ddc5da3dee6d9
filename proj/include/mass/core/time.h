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

#ifndef MASS_CORE_TIME_H_
#define MASS_CORE_TIME_H_

#include <atomic>
#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace mass {

// Single clinic time zone; wall-clock values are carried as if UTC and no
// zone arithmetic is ever applied.
using Timestamp = std::chrono::sys_seconds;
using Date = std::chrono::sys_days;

// Half-open [start, end).
struct Interval {
  Timestamp start;
  Timestamp end;

  bool Contains(Timestamp t) const { return start <= t && t < end; }
  bool Intersects(Timestamp s, Timestamp e) const {
    return s < end && start < e;
  }
  friend bool operator==(const Interval&, const Interval&) = default;
};

Timestamp MakeTimestamp(int year, unsigned month, unsigned day, int hour = 0,
                        int minute = 0, int second = 0);
Date MakeDate(int year, unsigned month, unsigned day);

// "2026-10-16T08:00:00Z".
std::string FormatRfc3339(Timestamp t);
// Accepts "YYYY-MM-DDTHH:MM[:SS](Z|+00:00)"; a non-zero offset is rejected
// since the clinic runs on one zone.
std::optional<Timestamp> ParseRfc3339(std::string_view text);

// "2026-10-16".
std::string FormatDate(Date d);
std::optional<Date> ParseDate(std::string_view text);

// "08:00".
std::string FormatTimeOfDay(Timestamp t);

Date DateOf(Timestamp t);
Interval DayInterval(Date d);
// 0 = Monday ... 6 = Sunday.
unsigned IsoWeekdayIndex(Date d);

class Clock {
 public:
  virtual ~Clock() = default;
  virtual Timestamp Now() const = 0;
};

class SystemClock final : public Clock {
 public:
  Timestamp Now() const override {
    return std::chrono::floor<std::chrono::seconds>(
        std::chrono::system_clock::now());
  }
};

// Test clock; safe to advance from one thread while others read.
class ManualClock final : public Clock {
 public:
  explicit ManualClock(Timestamp start) : now_(start.time_since_epoch().count()) {}

  Timestamp Now() const override {
    return Timestamp(std::chrono::seconds(now_.load()));
  }
  void Set(Timestamp t) { now_.store(t.time_since_epoch().count()); }
  void Advance(std::chrono::seconds by) { now_.fetch_add(by.count()); }

 private:
  std::atomic<long long> now_;
};

}  // namespace mass

#endif  // MASS_CORE_TIME_H_
