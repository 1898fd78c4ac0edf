// Copyright 2026 The Risklab Authors
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

#ifndef RISKLAB_CONTAGIOUSNESS_H_
#define RISKLAB_CONTAGIOUSNESS_H_

#include <array>
#include <cstdint>

namespace risklab {

// Privacy-preserving quantization of days-since-symptom-onset used by the
// exposure notification app. Level kNone carries a structurally fixed weight
// of zero in the risk model.
enum class Level : std::uint8_t { kNone = 1, kStandard = 2, kHigh = 3 };

inline constexpr int kLutMinDay = -14;
inline constexpr int kLutMaxDay = 14;
inline constexpr int kLutDays = kLutMaxDay - kLutMinDay + 1;

// Fixed lookup table from integer days since symptom onset to a
// contagiousness level. Total on [-14, 14]; real-valued onsets are rounded
// to the nearest day and clamped to the table range.
class ContagiousnessLut {
 public:
  // Every day maps to kNone until assigned.
  ContagiousnessLut();

  // Assigns `level` to all integer days in [from_day, to_day] (inclusive).
  void assign(int from_day, int to_day, Level level);

  Level level_of(double onset_days) const;
  Level level_of_day(int day) const;

  bool operator==(const ContagiousnessLut&) const = default;

 private:
  std::array<Level, kLutDays> levels_;
};

// Default table: high contagiousness for onsets in [-2, 4], standard for
// [-5, -3] and [5, 10], none elsewhere. Brackets the infectiousness peak at
// about -0.7 days.
ContagiousnessLut default_lut();

}  // namespace risklab

#endif  // RISKLAB_CONTAGIOUSNESS_H_
