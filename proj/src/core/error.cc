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

#include "mass/core/error.h"

namespace mass {

std::string_view CodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMisalignedHours: return "MISALIGNED_HOURS";
    case ErrorCode::kInvalidTemplate: return "INVALID_TEMPLATE";
    case ErrorCode::kUnknownDoctor: return "UNKNOWN_DOCTOR";
    case ErrorCode::kUnknownSlot: return "UNKNOWN_SLOT";
    case ErrorCode::kSlotTaken: return "SLOT_TAKEN";
    case ErrorCode::kSlotExpired: return "SLOT_EXPIRED";
    case ErrorCode::kHoldExpired: return "HOLD_EXPIRED";
    case ErrorCode::kUnknownTicket: return "UNKNOWN_TICKET";
    case ErrorCode::kUnknownAppointment: return "UNKNOWN_APPOINTMENT";
    case ErrorCode::kAlreadyStarted: return "ALREADY_STARTED";
    case ErrorCode::kWindowInPast: return "WINDOW_IN_PAST";
    case ErrorCode::kIllegalTransition: return "ILLEGAL_TRANSITION";
    case ErrorCode::kPreconditionFailed: return "PRECONDITION_FAILED";
    case ErrorCode::kUnknownPatient: return "UNKNOWN_PATIENT";
    case ErrorCode::kUnknownRequest: return "UNKNOWN_REQUEST";
    case ErrorCode::kUnknownSpecialty: return "UNKNOWN_SPECIALTY";
    case ErrorCode::kInvalidFilter: return "INVALID_FILTER";
    case ErrorCode::kUsernameTaken: return "USERNAME_TAKEN";
    case ErrorCode::kWeakCredential: return "WEAK_CREDENTIAL";
    case ErrorCode::kInvalidCredentials: return "INVALID_CREDENTIALS";
    case ErrorCode::kUnauthenticated: return "UNAUTHENTICATED";
    case ErrorCode::kForbidden: return "FORBIDDEN";
    case ErrorCode::kValidation: return "VALIDATION";
    case ErrorCode::kStorage: return "STORAGE";
    case ErrorCode::kInvalidConfig: return "INVALID_CONFIG";
    case ErrorCode::kMismatchedConfigs: return "MISMATCHED_CONFIGS";
  }
  return "UNKNOWN";
}

}  // namespace mass
