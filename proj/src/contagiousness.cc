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

#include "risklab/contagiousness.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace risklab {

ContagiousnessLut::ContagiousnessLut() { levels_.fill(Level::kNone); }

void ContagiousnessLut::assign(int from_day, int to_day, Level level) {
  if (from_day > to_day || from_day < kLutMinDay || to_day > kLutMaxDay) {
    throw std::out_of_range("ContagiousnessLut::assign: bad day range");
  }
  for (int day = from_day; day <= to_day; ++day) {
    levels_[static_cast<std::size_t>(day - kLutMinDay)] = level;
  }
}

Level ContagiousnessLut::level_of(double onset_days) const {
  const int day = static_cast<int>(std::lround(onset_days));
  return level_of_day(std::clamp(day, kLutMinDay, kLutMaxDay));
}

Level ContagiousnessLut::level_of_day(int day) const {
  day = std::clamp(day, kLutMinDay, kLutMaxDay);
  return levels_[static_cast<std::size_t>(day - kLutMinDay)];
}

ContagiousnessLut default_lut() {
  ContagiousnessLut lut;
  lut.assign(-5, -3, Level::kStandard);
  lut.assign(-2, 4, Level::kHigh);
  lut.assign(5, 10, Level::kStandard);
  return lut;
}

}  // namespace risklab
