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

#ifndef RISKLAB_SIM_CORE_H_
#define RISKLAB_SIM_CORE_H_

#include <span>

#include "risklab/sim_params.h"

namespace risklab {

// Risk factor in (0, 1] given distance in meters: a truncated quadratic,
// min(1, d_min_sq / d^2). Throws std::domain_error for d <= 0.
double distance_risk(double distance_m, const SimParams& params);

// Risk factor in (0, 1] given days since symptom onset of the index case
// (may be negative). Skew-logistic density normalized to peak at 1.
double infectiousness_risk(double onset_days, const SimParams& params);

// Days-since-onset value at which infectiousness_risk attains its maximum:
// inf_loc + inf_scale * ln(inf_shape).
double infectiousness_peak_day(const SimParams& params);

// Hazard score of a single exposure: duration x distance risk x
// infectiousness risk. Requires duration >= 0; distance errors propagate.
double hazard_score(double duration_min, double distance_m, double onset_days,
                    const SimParams& params);

// Converts an accumulated hazard into an infection probability. Exact form
// is 1 - exp(-lambda * hazard); with params.taylor_terms set, the exponential
// is replaced by its truncated Taylor series and the result clamped to [0, 1].
// Throws std::domain_error for negative hazard.
double infection_probability(double hazard, const SimParams& params);

// Probability that a user with the given exposure hazards gets infected:
// 1 - (1 - p0) * prod_n (1 - infection_probability(s_n)).
double bag_infection_probability(std::span<const double> hazards,
                                 const SimParams& params);

// Deterministic bluetooth forward model, the mean of the underlying
// log-normal: exp(ble_offset) * d^ble_slope. Strictly increasing in d.
// Throws std::domain_error for d <= 0.
double distance_to_attenuation(double distance_m, const SimParams& params);

// Analytic inverse of distance_to_attenuation.
double attenuation_to_distance(double attenuation_db, const SimParams& params);

}  // namespace risklab

#endif  // RISKLAB_SIM_CORE_H_
