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

#ifndef MASS_SSC_SCHEDULING_CHECKUP_H_
#define MASS_SSC_SCHEDULING_CHECKUP_H_

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "mass/core/appointment.h"
#include "mass/core/request.h"
#include "mass/notify/notifier.h"
#include "mass/registry/registry.h"
#include "mass/scheduling/matching.h"
#include "mass/scheduling/scheduler.h"
#include "mass/scheduling/wave_template.h"

namespace mass::ssc {

struct SscOptions {
  scheduling::WaveTemplate wave;
  std::vector<std::chrono::minutes> reminder_leads = notify::DefaultReminderLeads();
};

struct SpecialtySummary {
  SpecialtyId id;
  std::string name;
  size_t doctor_count = 0;
};

struct ScheduleView {
  registry::DoctorRecord doctor;
  Date date;
  std::vector<Interval> working_intervals;
  std::vector<scheduling::TimeSlot> available;
};

// What happened to a batch of freed slots: each one either went to a pending
// request as a held offer or was broadcast, never both.
struct MatchOutcome {
  std::vector<scheduling::Offer> offers;
  std::vector<scheduling::HoldTicket> offer_tickets;
  std::vector<notify::Notification> offer_notices;
  std::vector<notify::Notification> broadcasts;
};

struct CancellationOutcome {
  scheduling::FreedSlotEvent event;
  MatchOutcome match;
};

struct PostponementOutcome {
  scheduling::PostponementResult released;
  std::vector<notify::Notification> patient_notices;
  MatchOutcome match;
};

// The scheduling checkup: takes appointment requests, keeps the pending queue
// in (priority, submission) order, and drives holds, confirmations,
// cancellations and postponements against the slot engine, the registry and
// the notifier. Every mutating call first runs Tick(now).
class SchedulingCheckup {
 public:
  SchedulingCheckup(registry::Registry& registry, notify::Notifier& notifier,
                    SscOptions options = {},
                    scheduling::SchedulerOptions scheduler_options = {});

  SchedulingCheckup(const SchedulingCheckup&) = delete;
  SchedulingCheckup& operator=(const SchedulingCheckup&) = delete;

  scheduling::Scheduler& scheduler() { return scheduler_; }
  const scheduling::Scheduler& scheduler() const { return scheduler_; }
  const SscOptions& options() const { return options_; }

  // Generates slots for every registered doctor over [from, from + days) and
  // re-books slots of Active appointments. Idempotent. Returns slots added.
  size_t MaterializeCalendar(Date from, int days);

  std::vector<SpecialtySummary> ListSpecialties() const;
  // Throws kUnknownSpecialty.
  std::vector<registry::DoctorRecord> ListDoctors(
      const std::optional<SpecialtyId>& specialty = std::nullopt) const;
  // Throws kUnknownDoctor.
  ScheduleView GetDoctorSchedule(const DoctorId& doctor, Date date) const;
  std::vector<scheduling::TimeSlot> EstablishAvailable(const DoctorId& doctor,
                                                       Interval range) const;

  // Throws kUnknownPatient, kInvalidFilter.
  RequestId SubmitRequest(const PatientId& patient, RequestFilter filter,
                          PriorityClass priority, Timestamp now);
  void WithdrawRequest(const RequestId& request);
  std::optional<AppointmentRequest> FindRequest(const RequestId& request) const;
  // Bookable slots starting at or after `now` that satisfy the request's
  // filter, sorted by (start, doctor). Throws kUnknownRequest,
  // kPreconditionFailed when the request is not Pending.
  std::vector<scheduling::TimeSlot> ResolveRequest(const RequestId& request,
                                                   Timestamp now) const;
  // Pending requests in queue order.
  std::vector<AppointmentRequest> PendingQueueSnapshot() const;

  // `for_request` links the hold to the patient's own request so that
  // confirming it fulfils the request.
  scheduling::HoldTicket HoldSlot(const SlotId& slot, const PatientId& patient,
                                  Timestamp now,
                                  const std::optional<RequestId>& for_request = {});
  Appointment ConfirmHold(const TicketId& ticket, Timestamp now);
  CancellationOutcome CancelAppointment(const AppointmentId& appointment,
                                        Timestamp now);
  PostponementOutcome PostponeDoctor(const DoctorId& doctor, Interval window,
                                     Timestamp now);

  // Expires lapsed holds (broadcasting the slots, returning lapsed offers to
  // Pending) and retires slots whose start has passed.
  std::vector<notify::Notification> Tick(Timestamp now);

 private:
  std::vector<notify::Notification> TickLocked(Timestamp now);
  MatchOutcome MatchAndOffer(const std::vector<scheduling::FreedSlotEvent>& events,
                             Timestamp now);
  bool Compatible(const AppointmentRequest& request,
                  const scheduling::TimeSlot& slot) const;
  void ValidateFilter(const RequestFilter& filter) const;
  void ReturnOfferToQueue(const TicketId& ticket);

  registry::Registry& registry_;
  notify::Notifier& notifier_;
  SscOptions options_;
  scheduling::Scheduler scheduler_;

  mutable std::shared_mutex mu_;
  std::map<RequestId, AppointmentRequest> requests_;
  std::unordered_map<TicketId, RequestId> ticket_requests_;
  std::uint64_t next_request_ = 1;
  Timestamp last_submitted_{};
};

}  // namespace mass::ssc

#endif  // MASS_SSC_SCHEDULING_CHECKUP_H_
