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

#include "mass/core/time.h"

#include <fmt/format.h>

#include <charconv>

namespace mass {

namespace {

using std::chrono::days;
using std::chrono::hours;
using std::chrono::minutes;
using std::chrono::seconds;

bool ParseInt(std::string_view text, int& out) {
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

Date MakeDate(int year, unsigned month, unsigned day) {
  return Date(std::chrono::year{year} / std::chrono::month{month} /
              std::chrono::day{day});
}

Timestamp MakeTimestamp(int year, unsigned month, unsigned day, int hour,
                        int minute, int second) {
  return Timestamp(MakeDate(year, month, day)) + hours(hour) + minutes(minute) +
         seconds(second);
}

std::string FormatDate(Date d) {
  std::chrono::year_month_day ymd{d};
  return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()),
                     static_cast<unsigned>(ymd.day()));
}

std::string FormatTimeOfDay(Timestamp t) {
  auto since_midnight = t - Timestamp(DateOf(t));
  auto h = std::chrono::duration_cast<hours>(since_midnight);
  auto m = std::chrono::duration_cast<minutes>(since_midnight - h);
  return fmt::format("{:02d}:{:02d}", h.count(), m.count());
}

std::string FormatRfc3339(Timestamp t) {
  auto since_midnight = t - Timestamp(DateOf(t));
  auto h = std::chrono::duration_cast<hours>(since_midnight);
  auto m = std::chrono::duration_cast<minutes>(since_midnight - h);
  auto s = since_midnight - h - m;
  return fmt::format("{}T{:02d}:{:02d}:{:02d}Z", FormatDate(DateOf(t)),
                     h.count(), m.count(), s.count());
}

std::optional<Date> ParseDate(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0, mo = 0, d = 0;
  if (!ParseInt(text.substr(0, 4), y) || !ParseInt(text.substr(5, 2), mo) ||
      !ParseInt(text.substr(8, 2), d)) {
    return std::nullopt;
  }
  std::chrono::year_month_day ymd{std::chrono::year{y},
                                  std::chrono::month{static_cast<unsigned>(mo)},
                                  std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return Date(ymd);
}

std::optional<Timestamp> ParseRfc3339(std::string_view text) {
  if (text.size() < 16 || (text[10] != 'T' && text[10] != 't')) {
    return std::nullopt;
  }
  auto date = ParseDate(text.substr(0, 10));
  if (!date) return std::nullopt;
  std::string_view rest = text.substr(11);
  int h = 0, m = 0, s = 0;
  if (rest.size() < 5 || rest[2] != ':' || !ParseInt(rest.substr(0, 2), h) ||
      !ParseInt(rest.substr(3, 2), m)) {
    return std::nullopt;
  }
  rest.remove_prefix(5);
  if (!rest.empty() && rest[0] == ':') {
    if (rest.size() < 3 || !ParseInt(rest.substr(1, 2), s)) return std::nullopt;
    rest.remove_prefix(3);
  }
  if (rest != "Z" && rest != "z" && rest != "+00:00") return std::nullopt;
  if (h > 23 || m > 59 || s > 59) return std::nullopt;
  return Timestamp(*date) + hours(h) + minutes(m) + seconds(s);
}

Date DateOf(Timestamp t) { return std::chrono::floor<days>(t); }

Interval DayInterval(Date d) {
  return Interval{Timestamp(d), Timestamp(d + days(1))};
}

unsigned IsoWeekdayIndex(Date d) {
  return std::chrono::weekday{d}.iso_encoding() - 1;
}

}  // namespace mass
