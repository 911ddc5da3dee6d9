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

#ifndef MASS_NOTIFY_NOTIFIER_H_
#define MASS_NOTIFY_NOTIFIER_H_

#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mass/core/appointment.h"
#include "mass/core/ids.h"
#include "mass/core/time.h"
#include "mass/scheduling/slot.h"

namespace mass::notify {

enum class NotificationKind { kReminder, kSlotAvailable, kPostponementNotice, kOfferNotice };

std::string_view KindName(NotificationKind k);

// Why a slot became bookable again.
enum class AvailabilityCause { kCancellation, kPostponement, kHoldExpiry };

std::string_view CauseName(AvailabilityCause c);
AvailabilityCause FromFreedCause(scheduling::FreedCause c);

struct Payload {
  std::optional<SlotId> slot;
  std::optional<DoctorId> doctor;
  std::optional<Timestamp> slot_start;
  std::optional<AppointmentId> appointment;
  std::optional<AvailabilityCause> cause;
  std::optional<TicketId> ticket;
  std::optional<Timestamp> offer_expires_at;
  std::optional<RequestId> request;
  // Reminder lead in minutes.
  std::optional<std::int64_t> lead_minutes;

  friend bool operator==(const Payload&, const Payload&) = default;
};

struct Notification {
  NotificationId id;
  NotificationKind kind = NotificationKind::kReminder;
  // nullopt means broadcast.
  std::optional<PatientId> recipient;
  Payload payload;
  Timestamp due_at;
  bool delivered = false;

  bool broadcast() const { return !recipient.has_value(); }
  friend bool operator==(const Notification&, const Notification&) = default;
};

// Delivery channel. Sinks see each notification once, when DrainDue hands it
// out.
class NotificationSink {
 public:
  virtual ~NotificationSink() = default;
  virtual void Deliver(const Notification& notification) = 0;
};

inline const std::vector<std::chrono::minutes>& DefaultReminderLeads() {
  static const std::vector<std::chrono::minutes> leads{std::chrono::hours(24),
                                                       std::chrono::hours(1)};
  return leads;
}

// Queue of reminders and slot notices. Producers may enqueue from any thread;
// DrainDue is the single logical consumer and is serialized internally.
class Notifier {
 public:
  Notifier() = default;
  Notifier(const Notifier&) = delete;
  Notifier& operator=(const Notifier&) = delete;

  void AddSink(std::shared_ptr<NotificationSink> sink);

  // One Reminder per lead, due at start - lead. Leads whose due time is
  // already past, and non-positive leads, are skipped. Nothing is scheduled
  // for an appointment that is not Active or has started.
  std::vector<Notification> ScheduleReminders(
      const Appointment& appointment, std::span<const std::chrono::minutes> leads,
      Timestamp now);

  // Drops undelivered reminders of the appointment; returns how many.
  size_t CancelReminders(const AppointmentId& appointment);

  // Broadcast. Throws kPreconditionFailed unless the slot is Available or
  // Released.
  Notification PublishSlotAvailable(const scheduling::TimeSlot& slot,
                                    AvailabilityCause cause, Timestamp now);
  Notification PublishOffer(const PatientId& patient, const scheduling::TimeSlot& slot,
                            const scheduling::HoldTicket& ticket,
                            const RequestId& request, AvailabilityCause cause,
                            Timestamp now);
  Notification PublishPostponement(const Appointment& appointment, Timestamp now);

  // Marks every undelivered notification with due_at <= now delivered and
  // returns them in (due_at, id) order, after handing each to every sink.
  std::vector<Notification> DrainDue(Timestamp now);

  // What the patient's inbox shows at `now`: their own notifications and all
  // broadcasts that are due, in (due_at, id) order.
  std::vector<Notification> InboxFor(const PatientId& patient, Timestamp now) const;

  std::vector<Notification> All() const;

 private:
  Notification Enqueue(NotificationKind kind, std::optional<PatientId> recipient,
                       Payload payload, Timestamp due_at);

  mutable std::mutex mu_;
  std::mutex drain_mu_;
  std::uint64_t next_id_ = 1;
  // Insertion order == id order.
  std::vector<Notification> queue_;
  std::vector<std::shared_ptr<NotificationSink>> sinks_;
};

}  // namespace mass::notify

#endif  // MASS_NOTIFY_NOTIFIER_H_
