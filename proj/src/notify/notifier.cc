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

#include "mass/notify/notifier.h"

#include <fmt/format.h>

#include <algorithm>

#include "mass/core/error.h"

namespace mass::notify {

std::string_view KindName(NotificationKind k) {
  switch (k) {
    case NotificationKind::kReminder: return "reminder";
    case NotificationKind::kSlotAvailable: return "slot_available";
    case NotificationKind::kPostponementNotice: return "postponement_notice";
    case NotificationKind::kOfferNotice: return "offer_notice";
  }
  return "reminder";
}

std::string_view CauseName(AvailabilityCause c) {
  switch (c) {
    case AvailabilityCause::kCancellation: return "cancellation";
    case AvailabilityCause::kPostponement: return "postponement";
    case AvailabilityCause::kHoldExpiry: return "hold_expiry";
  }
  return "cancellation";
}

AvailabilityCause FromFreedCause(scheduling::FreedCause c) {
  return c == scheduling::FreedCause::kCancellation ? AvailabilityCause::kCancellation
                                                    : AvailabilityCause::kPostponement;
}

namespace {

bool DueOrder(const Notification& a, const Notification& b, std::uint64_t ia,
              std::uint64_t ib) {
  return a.due_at != b.due_at ? a.due_at < b.due_at : ia < ib;
}

}  // namespace

void Notifier::AddSink(std::shared_ptr<NotificationSink> sink) {
  std::lock_guard lock(mu_);
  sinks_.push_back(std::move(sink));
}

Notification Notifier::Enqueue(NotificationKind kind, std::optional<PatientId> recipient,
                               Payload payload, Timestamp due_at) {
  std::lock_guard lock(mu_);
  Notification n{.id = NotificationId(fmt::format("n-{}", next_id_++)),
                 .kind = kind,
                 .recipient = std::move(recipient),
                 .payload = std::move(payload),
                 .due_at = due_at};
  queue_.push_back(n);
  return n;
}

std::vector<Notification> Notifier::ScheduleReminders(
    const Appointment& appointment, std::span<const std::chrono::minutes> leads,
    Timestamp now) {
  std::vector<Notification> out;
  if (appointment.state != AppointmentState::kActive || appointment.slot_start <= now) {
    return out;
  }
  for (std::chrono::minutes lead : leads) {
    if (lead.count() <= 0) continue;
    Timestamp due = appointment.slot_start - lead;
    if (due < now) continue;
    out.push_back(Enqueue(NotificationKind::kReminder, appointment.patient,
                          Payload{.slot = appointment.slot,
                                  .doctor = appointment.doctor,
                                  .slot_start = appointment.slot_start,
                                  .appointment = appointment.id,
                                  .lead_minutes = lead.count()},
                          due));
  }
  return out;
}

size_t Notifier::CancelReminders(const AppointmentId& appointment) {
  std::lock_guard lock(mu_);
  auto dead = std::remove_if(queue_.begin(), queue_.end(), [&](const Notification& n) {
    return n.kind == NotificationKind::kReminder && !n.delivered &&
           n.payload.appointment == appointment;
  });
  size_t removed = static_cast<size_t>(queue_.end() - dead);
  queue_.erase(dead, queue_.end());
  return removed;
}

Notification Notifier::PublishSlotAvailable(const scheduling::TimeSlot& slot,
                                            AvailabilityCause cause, Timestamp now) {
  if (!slot.bookable()) {
    throw Error(ErrorCode::kPreconditionFailed,
                fmt::format("slot {} is {}, not bookable", slot.id.str(),
                            scheduling::SlotStatusName(slot.status())));
  }
  return Enqueue(NotificationKind::kSlotAvailable, std::nullopt,
                 Payload{.slot = slot.id,
                         .doctor = slot.doctor,
                         .slot_start = slot.start,
                         .cause = cause},
                 now);
}

Notification Notifier::PublishOffer(const PatientId& patient,
                                    const scheduling::TimeSlot& slot,
                                    const scheduling::HoldTicket& ticket,
                                    const RequestId& request, AvailabilityCause cause,
                                    Timestamp now) {
  return Enqueue(NotificationKind::kOfferNotice, patient,
                 Payload{.slot = slot.id,
                         .doctor = slot.doctor,
                         .slot_start = slot.start,
                         .cause = cause,
                         .ticket = ticket.id,
                         .offer_expires_at = ticket.expires_at,
                         .request = request},
                 now);
}

Notification Notifier::PublishPostponement(const Appointment& appointment,
                                           Timestamp now) {
  return Enqueue(NotificationKind::kPostponementNotice, appointment.patient,
                 Payload{.slot = appointment.slot,
                         .doctor = appointment.doctor,
                         .slot_start = appointment.slot_start,
                         .appointment = appointment.id,
                         .cause = AvailabilityCause::kPostponement},
                 now);
}

std::vector<Notification> Notifier::DrainDue(Timestamp now) {
  std::lock_guard drain(drain_mu_);
  std::vector<std::pair<std::uint64_t, Notification>> due;
  std::vector<std::shared_ptr<NotificationSink>> sinks;
  {
    std::lock_guard lock(mu_);
    for (size_t i = 0; i < queue_.size(); ++i) {
      Notification& n = queue_[i];
      if (n.delivered || n.due_at > now) continue;
      n.delivered = true;
      due.emplace_back(i, n);
    }
    sinks = sinks_;
  }
  std::stable_sort(due.begin(), due.end(), [](const auto& a, const auto& b) {
    return DueOrder(a.second, b.second, a.first, b.first);
  });
  std::vector<Notification> out;
  out.reserve(due.size());
  for (auto& [index, n] : due) {
    for (const auto& sink : sinks) sink->Deliver(n);
    out.push_back(std::move(n));
  }
  return out;
}

std::vector<Notification> Notifier::InboxFor(const PatientId& patient,
                                             Timestamp now) const {
  std::lock_guard lock(mu_);
  std::vector<std::pair<std::uint64_t, Notification>> out;
  for (size_t i = 0; i < queue_.size(); ++i) {
    const Notification& n = queue_[i];
    if (n.due_at > now) continue;
    if (n.broadcast() || n.recipient == patient) out.emplace_back(i, n);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return DueOrder(a.second, b.second, a.first, b.first);
  });
  std::vector<Notification> result;
  for (auto& [i, n] : out) result.push_back(std::move(n));
  return result;
}

std::vector<Notification> Notifier::All() const {
  std::lock_guard lock(mu_);
  return queue_;
}

}  // namespace mass::notify
