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

#include "mass/scheduling/scheduler.h"

#include <fmt/format.h>

#include <algorithm>
#include <mutex>

#include "mass/core/error.h"

namespace mass::scheduling {

Scheduler::Scheduler(AppointmentLedger& ledger, SchedulerOptions options)
    : ledger_(ledger), options_(options) {}

void Scheduler::RegisterDoctor(const DoctorId& doctor) {
  std::unique_lock lock(mu_);
  calendars_.try_emplace(doctor);
}

bool Scheduler::HasDoctor(const DoctorId& doctor) const {
  std::shared_lock lock(mu_);
  return calendars_.contains(doctor);
}

size_t Scheduler::AddSlots(std::vector<TimeSlot> slots) {
  std::unique_lock lock(mu_);
  size_t added = 0;
  for (TimeSlot& slot : slots) {
    auto cal = calendars_.find(slot.doctor);
    if (cal == calendars_.end()) {
      throw Error(ErrorCode::kUnknownDoctor, "unknown doctor " + slot.doctor.str());
    }
    if (slots_.contains(slot.id)) continue;
    cal->second.emplace(SlotKey{slot.start, slot.hour_position, slot.wave_index},
                        slot.id);
    SlotId id = slot.id;
    slots_.emplace(std::move(id), std::move(slot));
    ++added;
  }
  return added;
}

void Scheduler::RestoreBooking(const SlotId& slot_id,
                               const AppointmentId& appointment) {
  std::unique_lock lock(mu_);
  TimeSlot& slot = SlotOrThrow(slot_id);
  if (slot.status() != SlotStatus::kAvailable) {
    throw Error(ErrorCode::kSlotTaken,
                fmt::format("cannot restore booking on {} slot {}",
                            SlotStatusName(slot.status()), slot_id.str()));
  }
  slot.state = SlotBooked{appointment};
}

std::vector<TimeSlot> Scheduler::EstablishAvailable(const DoctorId& doctor,
                                                    Interval range) const {
  std::shared_lock lock(mu_);
  auto cal = calendars_.find(doctor);
  if (cal == calendars_.end()) {
    throw Error(ErrorCode::kUnknownDoctor, "unknown doctor " + doctor.str());
  }
  std::vector<TimeSlot> out;
  auto it = cal->second.lower_bound(SlotKey{range.start, 0, 0});
  for (; it != cal->second.end() && it->first.start < range.end; ++it) {
    const TimeSlot& slot = slots_.at(it->second);
    if (slot.bookable()) out.push_back(slot);
  }
  return out;
}

HoldTicket Scheduler::HoldSlot(const SlotId& slot_id, const PatientId& patient,
                               Timestamp now) {
  std::unique_lock lock(mu_);
  TimeSlot& slot = SlotOrThrow(slot_id);
  switch (slot.status()) {
    case SlotStatus::kHeld:
    case SlotStatus::kBooked:
      throw Error(ErrorCode::kSlotTaken, "slot " + slot_id.str() + " is taken");
    case SlotStatus::kRetired:
      throw Error(ErrorCode::kSlotExpired,
                  "slot " + slot_id.str() + " is no longer offered");
    case SlotStatus::kAvailable:
    case SlotStatus::kReleased:
      break;
  }
  if (slot.start < now) {
    throw Error(ErrorCode::kSlotExpired, "slot " + slot_id.str() + " has started");
  }
  HoldTicket ticket{.id = NextTicketId(),
                    .slot = slot_id,
                    .patient = patient,
                    .issued_at = now,
                    .expires_at = now + options_.hold_ttl};
  Transition(slot, SlotHeld{patient, ticket.id, ticket.expires_at});
  live_tickets_.emplace(ticket.id, ticket);
  return ticket;
}

Appointment Scheduler::ConfirmHold(const TicketId& ticket_id, Timestamp now) {
  std::unique_lock lock(mu_);
  auto it = live_tickets_.find(ticket_id);
  if (it == live_tickets_.end()) {
    if (dead_tickets_.contains(ticket_id)) {
      throw Error(ErrorCode::kHoldExpired, "hold " + ticket_id.str() + " expired");
    }
    throw Error(ErrorCode::kUnknownTicket, "unknown hold " + ticket_id.str());
  }
  HoldTicket ticket = it->second;
  TimeSlot& slot = SlotOrThrow(ticket.slot);
  if (now > ticket.expires_at) {
    ExpireLocked(slot, ticket, now);
    deferred_expiries_.push_back(ExpiredHold{slot, ticket, now});
    throw Error(ErrorCode::kHoldExpired, "hold " + ticket_id.str() + " expired");
  }
  Appointment appointment = ledger_.CreateAppointment(ticket.patient, slot, now);
  Transition(slot, SlotBooked{appointment.id});
  live_tickets_.erase(it);
  return appointment;
}

void Scheduler::AbandonHold(const TicketId& ticket_id, Timestamp now) {
  std::unique_lock lock(mu_);
  auto it = live_tickets_.find(ticket_id);
  if (it == live_tickets_.end()) {
    throw Error(ErrorCode::kUnknownTicket, "unknown hold " + ticket_id.str());
  }
  HoldTicket ticket = it->second;
  ExpireLocked(SlotOrThrow(ticket.slot), ticket, now);
}

std::vector<ExpiredHold> Scheduler::ExpireHolds(Timestamp now) {
  std::unique_lock lock(mu_);
  std::vector<HoldTicket> lapsed;
  for (const auto& [id, ticket] : live_tickets_) {
    if (ticket.expires_at < now) lapsed.push_back(ticket);
  }
  std::sort(lapsed.begin(), lapsed.end(), [](const auto& a, const auto& b) {
    return std::tie(a.expires_at, a.slot) < std::tie(b.expires_at, b.slot);
  });
  std::vector<ExpiredHold> out = std::move(deferred_expiries_);
  deferred_expiries_.clear();
  for (const HoldTicket& ticket : lapsed) {
    TimeSlot& slot = SlotOrThrow(ticket.slot);
    ExpireLocked(slot, ticket, now);
    out.push_back(ExpiredHold{slot, ticket, now});
  }
  return out;
}

FreedSlotEvent Scheduler::CancelAppointment(const AppointmentId& appointment_id,
                                            Timestamp now) {
  std::unique_lock lock(mu_);
  auto appointment = ledger_.FindAppointment(appointment_id);
  if (!appointment || appointment->state != AppointmentState::kActive) {
    throw Error(ErrorCode::kUnknownAppointment,
                "no active appointment " + appointment_id.str());
  }
  TimeSlot& slot = SlotOrThrow(appointment->slot);
  if (slot.start <= now) {
    throw Error(ErrorCode::kAlreadyStarted,
                "appointment " + appointment_id.str() + " has already started");
  }
  const auto* booked = std::get_if<SlotBooked>(&slot.state);
  if (booked == nullptr || booked->appointment != appointment_id) {
    throw Error(ErrorCode::kIllegalTransition,
                "slot " + slot.id.str() + " is not booked by " + appointment_id.str());
  }
  ledger_.SetAppointmentState(appointment_id, AppointmentState::kCancelled, now);
  Transition(slot, SlotReleased{FreedCause::kCancellation});
  return FreedSlotEvent{slot.id, FreedCause::kCancellation, now};
}

PostponementResult Scheduler::PostponeDoctor(const DoctorId& doctor,
                                             Interval window, Timestamp now) {
  std::unique_lock lock(mu_);
  auto cal = calendars_.find(doctor);
  if (cal == calendars_.end()) {
    throw Error(ErrorCode::kUnknownDoctor, "unknown doctor " + doctor.str());
  }
  if (window.end <= window.start) {
    throw Error(ErrorCode::kValidation, "postponement window is empty");
  }
  if (window.start < now) {
    throw Error(ErrorCode::kWindowInPast, "postponement window starts in the past");
  }

  PostponementResult result;
  auto it = cal->second.lower_bound(SlotKey{window.start, 0, 0});
  for (; it != cal->second.end() && it->first.start < window.end; ++it) {
    TimeSlot& slot = slots_.at(it->second);
    switch (slot.status()) {
      case SlotStatus::kBooked: {
        AppointmentId appointment_id = std::get<SlotBooked>(slot.state).appointment;
        ledger_.SetAppointmentState(appointment_id,
                                    AppointmentState::kPostponedByDoctor, now);
        Transition(slot, SlotReleased{FreedCause::kPostponement});
        result.events.push_back(FreedSlotEvent{slot.id, FreedCause::kPostponement, now});
        result.affected.push_back(*ledger_.FindAppointment(appointment_id));
        break;
      }
      case SlotStatus::kHeld: {
        TicketId ticket_id = std::get<SlotHeld>(slot.state).ticket;
        result.revoked.push_back(live_tickets_.at(ticket_id));
        live_tickets_.erase(ticket_id);
        dead_tickets_.insert(ticket_id);
        Transition(slot, SlotAvailable{});
        Transition(slot, SlotRetired{});
        result.retired.push_back(slot.id);
        break;
      }
      case SlotStatus::kAvailable:
      case SlotStatus::kReleased:
        Transition(slot, SlotRetired{});
        result.retired.push_back(slot.id);
        break;
      case SlotStatus::kRetired:
        break;
    }
  }
  return result;
}

std::vector<SlotId> Scheduler::RetirePast(Timestamp now) {
  std::unique_lock lock(mu_);
  std::vector<SlotId> retired;
  for (auto& [doctor, cal] : calendars_) {
    for (auto it = cal.begin(); it != cal.end() && it->first.start < now; ++it) {
      TimeSlot& slot = slots_.at(it->second);
      if (slot.bookable()) {
        Transition(slot, SlotRetired{});
        retired.push_back(slot.id);
      }
    }
  }
  std::sort(retired.begin(), retired.end());
  return retired;
}

std::optional<TimeSlot> Scheduler::FindSlot(const SlotId& slot) const {
  std::shared_lock lock(mu_);
  auto it = slots_.find(slot);
  if (it == slots_.end()) return std::nullopt;
  return it->second;
}

std::optional<HoldTicket> Scheduler::FindTicket(const TicketId& ticket) const {
  std::shared_lock lock(mu_);
  auto it = live_tickets_.find(ticket);
  if (it == live_tickets_.end()) return std::nullopt;
  return it->second;
}

std::vector<TimeSlot> Scheduler::Snapshot() const {
  std::shared_lock lock(mu_);
  std::vector<TimeSlot> out;
  out.reserve(slots_.size());
  for (const auto& [doctor, cal] : calendars_) {
    for (const auto& [key, id] : cal) out.push_back(slots_.at(id));
  }
  std::sort(out.begin(), out.end(), [](const TimeSlot& a, const TimeSlot& b) {
    return std::tie(a.start, a.doctor, a.hour_position, a.wave_index) <
           std::tie(b.start, b.doctor, b.hour_position, b.wave_index);
  });
  return out;
}

std::vector<HoldTicket> Scheduler::LiveTickets() const {
  std::shared_lock lock(mu_);
  std::vector<HoldTicket> out;
  for (const auto& [id, ticket] : live_tickets_) out.push_back(ticket);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.slot < b.slot; });
  return out;
}

void Scheduler::SetTransitionObserver(TransitionObserver observer) {
  std::unique_lock lock(mu_);
  observer_ = std::move(observer);
}

TimeSlot& Scheduler::SlotOrThrow(const SlotId& slot) {
  auto it = slots_.find(slot);
  if (it == slots_.end()) {
    throw Error(ErrorCode::kUnknownSlot, "unknown slot " + slot.str());
  }
  return it->second;
}

void Scheduler::Transition(TimeSlot& slot, SlotState next) {
  SlotStatus from = slot.status();
  SlotStatus to = StatusOf(next);
  if (!IsLegalTransition(from, to)) {
    throw Error(ErrorCode::kIllegalTransition,
                fmt::format("slot {}: {} -> {} is not allowed", slot.id.str(),
                            SlotStatusName(from), SlotStatusName(to)));
  }
  slot.state = std::move(next);
  if (observer_) observer_(slot, from, to);
}

void Scheduler::ExpireLocked(TimeSlot& slot, const HoldTicket& ticket, Timestamp) {
  live_tickets_.erase(ticket.id);
  dead_tickets_.insert(ticket.id);
  Transition(slot, SlotAvailable{});
}

TicketId Scheduler::NextTicketId() {
  return TicketId(fmt::format("h-{}", next_ticket_++));
}

}  // namespace mass::scheduling
