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

#ifndef MASS_SCHEDULING_WAVE_TEMPLATE_H_
#define MASS_SCHEDULING_WAVE_TEMPLATE_H_

namespace mass::scheduling {

// Layout of one clinic hour under modified-wave booking:
//
//   minute 0            wave_size patients share the first slot
//   slot_length * k     one patient each, k = 1 .. SequentialSlots()
//   60 - catchup_window the rest of the hour stays unbooked
struct WaveTemplate {
  static constexpr int kHourLength = 60;

  int slot_length = 10;
  int wave_size = 2;
  int catchup_window = 10;

  // Throws Error(kInvalidTemplate).
  void Validate() const;

  int SequentialSlots() const {
    return (kHourLength - catchup_window - slot_length) / slot_length;
  }
  int SlotsPerHour() const { return wave_size + SequentialSlots(); }

  friend bool operator==(const WaveTemplate&, const WaveTemplate&) = default;
};

}  // namespace mass::scheduling

#endif  // MASS_SCHEDULING_WAVE_TEMPLATE_H_
