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

#ifndef MASS_SCHEDULING_SCHEDULER_H_
#define MASS_SCHEDULING_SCHEDULER_H_

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mass/core/appointment.h"
#include "mass/core/ids.h"
#include "mass/core/time.h"
#include "mass/scheduling/slot.h"

namespace mass::scheduling {

// Durable home of appointment records. Implemented by the registry; the
// scheduler only creates appointments and moves them out of Active.
class AppointmentLedger {
 public:
  virtual ~AppointmentLedger() = default;

  virtual Appointment CreateAppointment(const PatientId& patient,
                                        const TimeSlot& slot, Timestamp now) = 0;
  virtual std::optional<Appointment> FindAppointment(
      const AppointmentId& id) const = 0;
  virtual void SetAppointmentState(const AppointmentId& id,
                                   AppointmentState state, Timestamp now) = 0;
};

struct SchedulerOptions {
  std::chrono::seconds hold_ttl{120};
};

// A hold that lapsed without confirmation; the slot is Available again.
struct ExpiredHold {
  TimeSlot slot;
  HoldTicket ticket;
  Timestamp expired_at;
};

struct PostponementResult {
  std::vector<FreedSlotEvent> events;
  // Appointments moved to PostponedByDoctor, parallel to `events`.
  std::vector<Appointment> affected;
  std::vector<SlotId> retired;
  // Holds dropped because their slot was retired.
  std::vector<HoldTicket> revoked;
};

// Owns every generated slot and its lifecycle. All mutations are linearized
// behind one writer lock, so of two racing holds on a slot exactly one wins;
// reads take a shared lock and see a consistent snapshot.
class Scheduler {
 public:
  using TransitionObserver =
      std::function<void(const TimeSlot& slot, SlotStatus from, SlotStatus to)>;

  explicit Scheduler(AppointmentLedger& ledger, SchedulerOptions options = {});

  Scheduler(const Scheduler&) = delete;
  Scheduler& operator=(const Scheduler&) = delete;

  const SchedulerOptions& options() const { return options_; }

  void RegisterDoctor(const DoctorId& doctor);
  bool HasDoctor(const DoctorId& doctor) const;

  // Adds generated slots; ids already present are skipped. Returns the number
  // added. Every slot's doctor must be registered.
  size_t AddSlots(std::vector<TimeSlot> slots);

  // Marks an Available slot Booked without a hold, for rebuilding state from
  // persisted appointments at startup. Not an observed transition.
  void RestoreBooking(const SlotId& slot, const AppointmentId& appointment);

  // Available or Released slots of `doctor` starting inside `range`, sorted by
  // (start, hour_position, wave_index). Throws kUnknownDoctor.
  std::vector<TimeSlot> EstablishAvailable(const DoctorId& doctor,
                                           Interval range) const;

  // Throws kUnknownSlot, kSlotExpired (start already passed or slot retired),
  // kSlotTaken (Held or Booked).
  HoldTicket HoldSlot(const SlotId& slot, const PatientId& patient, Timestamp now);

  // Live while now <= expires_at. Throws kUnknownTicket for tickets never
  // issued or already confirmed, kHoldExpired for lapsed or revoked ones; a
  // lapsed hold found here is expired on the spot and reported by the next
  // ExpireHolds call.
  Appointment ConfirmHold(const TicketId& ticket, Timestamp now);

  // Drops a live hold voluntarily (Held -> Available).
  void AbandonHold(const TicketId& ticket, Timestamp now);

  // Returns every Held slot with expires_at < now to Available.
  std::vector<ExpiredHold> ExpireHolds(Timestamp now);

  // Throws kUnknownAppointment (unknown or not Active), kAlreadyStarted.
  FreedSlotEvent CancelAppointment(const AppointmentId& appointment, Timestamp now);

  // Booked slots in the window become Released (cause Postponement) and their
  // appointments PostponedByDoctor; Available, Held and Released slots in the
  // window are retired. Throws kUnknownDoctor, kWindowInPast, kValidation.
  PostponementResult PostponeDoctor(const DoctorId& doctor, Interval window,
                                    Timestamp now);

  // Retires Available/Released slots whose start is before `now`.
  std::vector<SlotId> RetirePast(Timestamp now);

  std::optional<TimeSlot> FindSlot(const SlotId& slot) const;
  std::optional<HoldTicket> FindTicket(const TicketId& ticket) const;
  std::vector<TimeSlot> Snapshot() const;
  std::vector<HoldTicket> LiveTickets() const;

  // Called under the writer lock for every lifecycle transition.
  void SetTransitionObserver(TransitionObserver observer);

 private:
  struct SlotKey {
    Timestamp start;
    int hour_position;
    int wave_index;
    auto operator<=>(const SlotKey&) const = default;
  };

  TimeSlot& SlotOrThrow(const SlotId& slot);
  void Transition(TimeSlot& slot, SlotState next);
  void ExpireLocked(TimeSlot& slot, const HoldTicket& ticket, Timestamp now);
  TicketId NextTicketId();

  AppointmentLedger& ledger_;
  SchedulerOptions options_;

  mutable std::shared_mutex mu_;
  std::unordered_map<SlotId, TimeSlot> slots_;
  std::unordered_map<DoctorId, std::map<SlotKey, SlotId>> calendars_;
  std::unordered_map<TicketId, HoldTicket> live_tickets_;
  // Tickets that lapsed or were revoked; confirming them reports HoldExpired.
  std::unordered_set<TicketId> dead_tickets_;
  std::vector<ExpiredHold> deferred_expiries_;
  std::uint64_t next_ticket_ = 1;
  TransitionObserver observer_;
};

}  // namespace mass::scheduling

#endif  // MASS_SCHEDULING_SCHEDULER_H_
