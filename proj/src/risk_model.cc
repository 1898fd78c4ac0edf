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

#include "risklab/risk_model.h"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace risklab {

int bucket_of(double attenuation_db, const std::array<double, 3>& thresholds) {
  if (!(attenuation_db > 0 && attenuation_db <= 100)) {
    throw std::domain_error("bucket_of: attenuation " +
                            std::to_string(attenuation_db) +
                            " outside (0, 100]");
  }
  for (int b = 0; b < 3; ++b) {
    if (attenuation_db <= thresholds[static_cast<std::size_t>(b)]) {
      return b + 1;
    }
  }
  return 4;
}

std::array<double, 4> bucket_durations(
    std::span<const MicroExposure> micro,
    const std::array<double, 3>& thresholds) {
  std::array<double, 4> durations = {0, 0, 0, 0};
  for (const MicroExposure& m : micro) {
    durations[static_cast<std::size_t>(
        bucket_of(m.attenuation_db, thresholds) - 1)] += m.duration_min;
  }
  return durations;
}

double level_weight(Level level, const RiskParams& params) {
  switch (level) {
    case Level::kNone:
      return 0.0;
    case Level::kStandard:
      return params.con_weights[0];
    case Level::kHigh:
      return params.con_weights[1];
  }
  return 0.0;
}

double exposure_risk(std::span<const MicroExposure> micro, Level level,
                     const RiskParams& params) {
  const std::array<double, 4> durations =
      bucket_durations(micro, params.ble_thresholds);
  double weighted_minutes = 0;
  for (std::size_t b = 0; b < 4; ++b) {
    weighted_minutes += durations[b] * params.ble_weights[b];
  }
  return weighted_minutes * level_weight(level, params);
}

double exposure_risk(const ObservedExposure& obs, const RiskParams& params) {
  const MicroExposure micro{.duration_min = obs.duration_min,
                            .attenuation_db = obs.attenuation_db};
  return exposure_risk(std::span<const MicroExposure>(&micro, 1), obs.level,
                       params);
}

BagRisk bag_risk(std::span<const ObservedExposure> observations,
                 const RiskParams& params) {
  BagRisk result;
  for (const ObservedExposure& obs : observations) {
    result.score += exposure_risk(obs, params);
  }
  result.probability = -std::expm1(-params.mu * result.score);
  return result;
}

double oracle_score(const Bag& bag, const SimParams& sim) {
  std::vector<double> hazards;
  hazards.reserve(bag.events.size());
  for (const ExposureEvent& event : bag.events) {
    hazards.push_back(event.hazard);
  }
  return bag_infection_probability(hazards, sim);
}

}  // namespace risklab
