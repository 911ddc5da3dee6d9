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

#ifndef MASS_CORE_IDS_H_
#define MASS_CORE_IDS_H_

#include <compare>
#include <functional>
#include <ostream>
#include <string>
#include <utility>

namespace mass {

// Opaque string identifier, distinct per entity kind so a SlotId can never be
// passed where a DoctorId is expected.
template <typename Tag>
class StrongId {
 public:
  StrongId() = default;
  explicit StrongId(std::string value) : value_(std::move(value)) {}

  const std::string& str() const { return value_; }
  bool empty() const { return value_.empty(); }

  friend auto operator<=>(const StrongId&, const StrongId&) = default;
  friend bool operator==(const StrongId&, const StrongId&) = default;

  friend std::ostream& operator<<(std::ostream& os, const StrongId& id) {
    return os << id.value_;
  }

 private:
  std::string value_;
};

using DoctorId = StrongId<struct DoctorTag>;
using PatientId = StrongId<struct PatientTag>;
using AccountId = StrongId<struct AccountTag>;
using SpecialtyId = StrongId<struct SpecialtyTag>;
using SlotId = StrongId<struct SlotTag>;
using TicketId = StrongId<struct TicketTag>;
using AppointmentId = StrongId<struct AppointmentTag>;
using RequestId = StrongId<struct RequestTag>;
using NotificationId = StrongId<struct NotificationTag>;

}  // namespace mass

template <typename Tag>
struct std::hash<mass::StrongId<Tag>> {
  size_t operator()(const mass::StrongId<Tag>& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};

#endif  // MASS_CORE_IDS_H_
