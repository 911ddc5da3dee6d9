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

#ifndef MASS_CORE_ERROR_H_
#define MASS_CORE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace mass {

enum class ErrorCode {
  // scheduling
  kMisalignedHours,
  kInvalidTemplate,
  kUnknownDoctor,
  kUnknownSlot,
  kSlotTaken,
  kSlotExpired,
  kHoldExpired,
  kUnknownTicket,
  kUnknownAppointment,
  kAlreadyStarted,
  kWindowInPast,
  kIllegalTransition,
  kPreconditionFailed,
  // requests / registry
  kUnknownPatient,
  kUnknownRequest,
  kUnknownSpecialty,
  kInvalidFilter,
  kUsernameTaken,
  kWeakCredential,
  kInvalidCredentials,
  kUnauthenticated,
  kForbidden,
  kValidation,
  kStorage,
  // simulator
  kInvalidConfig,
  kMismatchedConfigs,
};

// Stable machine-readable name, e.g. "SLOT_TAKEN". These strings are part of
// the wire format and must not change.
std::string_view CodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mass

#endif  // MASS_CORE_ERROR_H_
