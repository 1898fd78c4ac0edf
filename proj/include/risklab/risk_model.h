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

#ifndef RISKLAB_RISK_MODEL_H_
#define RISKLAB_RISK_MODEL_H_

#include <array>
#include <span>

#include "risklab/bags.h"
#include "risklab/risk_params.h"

namespace risklab {

// One constant-attenuation slice of an exposure window.
struct MicroExposure {
  double duration_min = 0;
  double attenuation_db = 0;
};

// Bucket index in {1,2,3,4} such that t[b-1] < a <= t[b], with implicit
// boundaries t0 = 0 and t4 = 100. Throws std::domain_error outside (0, 100].
int bucket_of(double attenuation_db, const std::array<double, 3>& thresholds);

// Total duration falling in each attenuation bucket. The four entries sum to
// the total duration exactly.
std::array<double, 4> bucket_durations(std::span<const MicroExposure> micro,
                                       const std::array<double, 3>& thresholds);

// Weight applied to a contagiousness level; level none is always 0.
double level_weight(Level level, const RiskParams& params);

// Bilinear per-exposure risk: (sum_b duration_b * weight_b) * level weight.
double exposure_risk(std::span<const MicroExposure> micro, Level level,
                     const RiskParams& params);
double exposure_risk(const ObservedExposure& obs, const RiskParams& params);

struct BagRisk {
  double score = 0;        // R: summed per-exposure risk
  double probability = 0;  // Q = 1 - exp(-mu * R)
};

// Aggregates the visible exposures of one bag.
BagRisk bag_risk(std::span<const ObservedExposure> observations,
                 const RiskParams& params);

// Upper-reference scorer: the simulator's own infection probability over ALL
// events in the bag, visible or censored.
double oracle_score(const Bag& bag, const SimParams& sim);

}  // namespace risklab

#endif  // RISKLAB_RISK_MODEL_H_
