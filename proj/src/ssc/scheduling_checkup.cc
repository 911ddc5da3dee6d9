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

#include "mass/ssc/scheduling_checkup.h"

#include <fmt/format.h>

#include <algorithm>
#include <mutex>

#include "mass/core/error.h"
#include "mass/scheduling/slot_generator.h"

namespace mass::ssc {

using scheduling::FreedSlotEvent;
using scheduling::HoldTicket;
using scheduling::TimeSlot;

SchedulingCheckup::SchedulingCheckup(registry::Registry& registry,
                                     notify::Notifier& notifier, SscOptions options,
                                     scheduling::SchedulerOptions scheduler_options)
    : registry_(registry),
      notifier_(notifier),
      options_(std::move(options)),
      scheduler_(registry, scheduler_options) {
  options_.wave.Validate();
}

size_t SchedulingCheckup::MaterializeCalendar(Date from, int days) {
  std::unique_lock lock(mu_);
  size_t added = 0;
  for (const registry::DoctorRecord& doctor : registry_.Doctors()) {
    scheduler_.RegisterDoctor(doctor.id);
    for (int d = 0; d < days; ++d) {
      Date date = from + std::chrono::days(d);
      auto intervals = registry::WorkingIntervalsOn(doctor, date);
      added += scheduler_.AddSlots(
          scheduling::GenerateSlots(doctor.id, intervals, options_.wave));
    }
  }
  for (const Appointment& a : registry_.Appointments()) {
    if (a.state != AppointmentState::kActive) continue;
    auto slot = scheduler_.FindSlot(a.slot);
    if (slot && slot->status() == scheduling::SlotStatus::kAvailable) {
      scheduler_.RestoreBooking(a.slot, a.id);
    }
  }
  return added;
}

std::vector<SpecialtySummary> SchedulingCheckup::ListSpecialties() const {
  auto doctors = registry_.Doctors();
  std::vector<SpecialtySummary> out;
  for (const registry::Specialty& s : registry_.Specialties()) {
    size_t count = std::count_if(doctors.begin(), doctors.end(),
                                 [&](const auto& d) { return d.specialty == s.id; });
    out.push_back(SpecialtySummary{s.id, s.name, count});
  }
  return out;
}

std::vector<registry::DoctorRecord> SchedulingCheckup::ListDoctors(
    const std::optional<SpecialtyId>& specialty) const {
  if (specialty && !registry_.HasSpecialty(*specialty)) {
    throw Error(ErrorCode::kUnknownSpecialty, "unknown specialty " + specialty->str());
  }
  std::vector<registry::DoctorRecord> out;
  for (registry::DoctorRecord& d : registry_.Doctors()) {
    if (!specialty || d.specialty == *specialty) out.push_back(std::move(d));
  }
  return out;
}

ScheduleView SchedulingCheckup::GetDoctorSchedule(const DoctorId& doctor,
                                                  Date date) const {
  auto record = registry_.FindDoctor(doctor);
  if (!record) throw Error(ErrorCode::kUnknownDoctor, "unknown doctor " + doctor.str());
  ScheduleView view{.doctor = *record,
                    .date = date,
                    .working_intervals = registry::WorkingIntervalsOn(*record, date)};
  if (scheduler_.HasDoctor(doctor)) {
    view.available = scheduler_.EstablishAvailable(doctor, DayInterval(date));
  }
  return view;
}

std::vector<TimeSlot> SchedulingCheckup::EstablishAvailable(const DoctorId& doctor,
                                                            Interval range) const {
  if (!scheduler_.HasDoctor(doctor) && registry_.FindDoctor(doctor)) return {};
  return scheduler_.EstablishAvailable(doctor, range);
}

void SchedulingCheckup::ValidateFilter(const RequestFilter& filter) const {
  std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, BySpecialty>) {
          if (!registry_.HasSpecialty(t.specialty)) {
            throw Error(ErrorCode::kInvalidFilter,
                        "unknown specialty " + t.specialty.str());
          }
        } else if constexpr (std::is_same_v<T, ByDoctor>) {
          if (!registry_.FindDoctor(t.doctor)) {
            throw Error(ErrorCode::kInvalidFilter, "unknown doctor " + t.doctor.str());
          }
        }
      },
      filter.target);
  if (filter.preferred) {
    const TimeOfDayWindow& w = *filter.preferred;
    if (w.from.count() < 0 || w.to.count() > 24 * 60 || w.from >= w.to) {
      throw Error(ErrorCode::kInvalidFilter, "preferred time window is malformed");
    }
  }
}

RequestId SchedulingCheckup::SubmitRequest(const PatientId& patient,
                                           RequestFilter filter,
                                           PriorityClass priority, Timestamp now) {
  if (!registry_.PatientExists(patient)) {
    throw Error(ErrorCode::kUnknownPatient, "unknown patient " + patient.str());
  }
  ValidateFilter(filter);
  std::unique_lock lock(mu_);
  last_submitted_ = std::max(last_submitted_, now);
  AppointmentRequest request{.id = RequestId(fmt::format("r-{}", next_request_)),
                             .patient = patient,
                             .filter = std::move(filter),
                             .priority = priority,
                             .submitted_at = last_submitted_,
                             .sequence = next_request_,
                             .status = RequestStatus::kPending};
  ++next_request_;
  RequestId id = request.id;
  requests_.emplace(id, std::move(request));
  return id;
}

void SchedulingCheckup::WithdrawRequest(const RequestId& request) {
  std::unique_lock lock(mu_);
  auto it = requests_.find(request);
  if (it == requests_.end()) {
    throw Error(ErrorCode::kUnknownRequest, "unknown request " + request.str());
  }
  if (it->second.status != RequestStatus::kPending) {
    throw Error(ErrorCode::kPreconditionFailed,
                "only a pending request can be withdrawn");
  }
  it->second.status = RequestStatus::kWithdrawn;
}

std::optional<AppointmentRequest> SchedulingCheckup::FindRequest(
    const RequestId& request) const {
  std::shared_lock lock(mu_);
  auto it = requests_.find(request);
  if (it == requests_.end()) return std::nullopt;
  return it->second;
}

bool SchedulingCheckup::Compatible(const AppointmentRequest& request,
                                   const TimeSlot& slot) const {
  auto doctor = registry_.FindDoctor(slot.doctor);
  if (!doctor) return false;
  return FilterAccepts(request.filter, slot.doctor, doctor->specialty, slot.start);
}

std::vector<TimeSlot> SchedulingCheckup::ResolveRequest(const RequestId& request_id,
                                                        Timestamp now) const {
  auto request = FindRequest(request_id);
  if (!request) {
    throw Error(ErrorCode::kUnknownRequest, "unknown request " + request_id.str());
  }
  if (request->status != RequestStatus::kPending) {
    throw Error(ErrorCode::kPreconditionFailed,
                "request " + request_id.str() + " is not pending");
  }
  std::vector<TimeSlot> out;
  for (const TimeSlot& slot : scheduler_.Snapshot()) {
    if (slot.bookable() && slot.start >= now && Compatible(*request, slot)) {
      out.push_back(slot);
    }
  }
  std::sort(out.begin(), out.end(), [](const TimeSlot& a, const TimeSlot& b) {
    return std::tie(a.start, a.doctor, a.hour_position, a.wave_index) <
           std::tie(b.start, b.doctor, b.hour_position, b.wave_index);
  });
  return out;
}

std::vector<AppointmentRequest> SchedulingCheckup::PendingQueueSnapshot() const {
  std::shared_lock lock(mu_);
  std::vector<AppointmentRequest> out;
  for (const auto& [id, r] : requests_) {
    if (r.status == RequestStatus::kPending) out.push_back(r);
  }
  std::sort(out.begin(), out.end(), QueueOrderBefore);
  return out;
}

HoldTicket SchedulingCheckup::HoldSlot(const SlotId& slot, const PatientId& patient,
                                       Timestamp now,
                                       const std::optional<RequestId>& for_request) {
  if (!registry_.PatientExists(patient)) {
    throw Error(ErrorCode::kUnknownPatient, "unknown patient " + patient.str());
  }
  std::unique_lock lock(mu_);
  TickLocked(now);
  if (for_request) {
    auto it = requests_.find(*for_request);
    if (it == requests_.end() || it->second.patient != patient ||
        it->second.status != RequestStatus::kPending) {
      throw Error(ErrorCode::kUnknownRequest,
                  "no pending request " + for_request->str() + " for this patient");
    }
    auto found = scheduler_.FindSlot(slot);
    if (found && !Compatible(it->second, *found)) {
      throw Error(ErrorCode::kPreconditionFailed,
                  "slot " + slot.str() + " does not satisfy request " + for_request->str());
    }
  }
  HoldTicket ticket = scheduler_.HoldSlot(slot, patient, now);
  if (for_request) {
    requests_.at(*for_request).status = RequestStatus::kOffered;
    ticket_requests_.emplace(ticket.id, *for_request);
  }
  return ticket;
}

Appointment SchedulingCheckup::ConfirmHold(const TicketId& ticket, Timestamp now) {
  std::unique_lock lock(mu_);
  TickLocked(now);
  Appointment appointment = scheduler_.ConfirmHold(ticket, now);
  if (auto it = ticket_requests_.find(ticket); it != ticket_requests_.end()) {
    requests_.at(it->second).status = RequestStatus::kFulfilled;
    ticket_requests_.erase(it);
  }
  notifier_.ScheduleReminders(appointment, options_.reminder_leads, now);
  return appointment;
}

CancellationOutcome SchedulingCheckup::CancelAppointment(
    const AppointmentId& appointment, Timestamp now) {
  std::unique_lock lock(mu_);
  TickLocked(now);
  FreedSlotEvent event = scheduler_.CancelAppointment(appointment, now);
  notifier_.CancelReminders(appointment);
  CancellationOutcome outcome{.event = event};
  outcome.match = MatchAndOffer({event}, now);
  return outcome;
}

PostponementOutcome SchedulingCheckup::PostponeDoctor(const DoctorId& doctor,
                                                      Interval window, Timestamp now) {
  if (!registry_.FindDoctor(doctor)) {
    throw Error(ErrorCode::kUnknownDoctor, "unknown doctor " + doctor.str());
  }
  std::unique_lock lock(mu_);
  TickLocked(now);
  if (!scheduler_.HasDoctor(doctor)) scheduler_.RegisterDoctor(doctor);
  PostponementOutcome outcome;
  outcome.released = scheduler_.PostponeDoctor(doctor, window, now);
  for (const HoldTicket& t : outcome.released.revoked) ReturnOfferToQueue(t.id);
  for (const Appointment& a : outcome.released.affected) {
    notifier_.CancelReminders(a.id);
    outcome.patient_notices.push_back(notifier_.PublishPostponement(a, now));
  }
  // "check if there are appointment requests in the list"
  outcome.match = MatchAndOffer(outcome.released.events, now);
  return outcome;
}

std::vector<notify::Notification> SchedulingCheckup::Tick(Timestamp now) {
  std::unique_lock lock(mu_);
  return TickLocked(now);
}

std::vector<notify::Notification> SchedulingCheckup::TickLocked(Timestamp now) {
  std::vector<notify::Notification> notices;
  for (const scheduling::ExpiredHold& expired : scheduler_.ExpireHolds(now)) {
    ReturnOfferToQueue(expired.ticket.id);
    if (expired.slot.start >= now) {
      notices.push_back(notifier_.PublishSlotAvailable(
          expired.slot, notify::AvailabilityCause::kHoldExpiry, now));
    }
  }
  scheduler_.RetirePast(now);
  return notices;
}

void SchedulingCheckup::ReturnOfferToQueue(const TicketId& ticket) {
  auto it = ticket_requests_.find(ticket);
  if (it == ticket_requests_.end()) return;
  AppointmentRequest& request = requests_.at(it->second);
  // Keeps submitted_at and sequence, so the request regains its place.
  if (request.status == RequestStatus::kOffered) request.status = RequestStatus::kPending;
  ticket_requests_.erase(it);
}

MatchOutcome SchedulingCheckup::MatchAndOffer(const std::vector<FreedSlotEvent>& events,
                                              Timestamp now) {
  MatchOutcome outcome;
  if (events.empty()) return outcome;
  std::vector<TimeSlot> freed;
  std::unordered_map<SlotId, notify::AvailabilityCause> causes;
  for (const FreedSlotEvent& e : events) {
    freed.push_back(*scheduler_.FindSlot(e.slot));
    causes.emplace(e.slot, notify::FromFreedCause(e.cause));
  }
  std::vector<AppointmentRequest> pending;
  for (const auto& [id, r] : requests_) {
    if (r.status == RequestStatus::kPending) pending.push_back(r);
  }
  auto plan = scheduling::MatchFreedSlots(
      freed, pending, [this](const AppointmentRequest& r, const TimeSlot& s) {
        return Compatible(r, s);
      });
  for (const scheduling::Offer& offer : plan.offers) {
    AppointmentRequest& request = requests_.at(offer.request);
    HoldTicket ticket = scheduler_.HoldSlot(offer.slot, request.patient, now);
    request.status = RequestStatus::kOffered;
    ticket_requests_.emplace(ticket.id, request.id);
    outcome.offers.push_back(offer);
    outcome.offer_tickets.push_back(ticket);
    outcome.offer_notices.push_back(
        notifier_.PublishOffer(request.patient, *scheduler_.FindSlot(offer.slot), ticket,
                               request.id, causes.at(offer.slot), now));
  }
  for (const SlotId& slot : plan.unmatched) {
    outcome.broadcasts.push_back(notifier_.PublishSlotAvailable(
        *scheduler_.FindSlot(slot), causes.at(slot), now));
  }
  return outcome;
}

}  // namespace mass::ssc
