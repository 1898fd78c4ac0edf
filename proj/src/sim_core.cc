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

#include "risklab/sim_core.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "risklab/errors.h"

namespace risklab {

namespace {

// Unnormalized skew-logistic (type-I generalized logistic) density as a
// function of the standardized coordinate z = (sigma - loc) / scale:
//   g(z) = e^{-z} (1 + e^{-z})^{-(shape+1)}
// For large |z| the direct form overflows, so evaluate through logs.
double log_unnormalized_density(double z, double shape) {
  // log g = -z - (shape + 1) * log(1 + e^{-z})
  //       = -z - (shape + 1) * log1p(exp(-z))        for z >= 0
  //       = shape * z - (shape + 1) * log1p(exp(z))  for z < 0
  if (z >= 0) {
    return -z - (shape + 1.0) * std::log1p(std::exp(-z));
  }
  return shape * z - (shape + 1.0) * std::log1p(std::exp(z));
}

// Peak value of the unnormalized density, attained at z = ln(shape):
// shape^shape / (shape + 1)^(shape + 1), evaluated in log space.
double log_peak_density(double shape) {
  return shape * std::log(shape) - (shape + 1.0) * std::log(shape + 1.0);
}

// Truncated Taylor series of exp(x): sum_{k=0}^{terms-1} x^k / k!.
double taylor_exp(double x, int terms) {
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k < terms; ++k) {
    term *= x / k;
    sum += term;
  }
  return sum;
}

}  // namespace

void validate(const SimParams& params) {
  if (!(params.lambda > 0)) throw ConfigError("sim.lambda must be > 0");
  if (!(params.d_min_sq > 0)) throw ConfigError("sim.d_min_sq must be > 0");
  if (!(params.inf_scale > 0)) throw ConfigError("sim.inf_scale must be > 0");
  if (!(params.inf_shape > 0)) throw ConfigError("sim.inf_shape must be > 0");
  if (!(params.p0 >= 0 && params.p0 <= 1)) {
    throw ConfigError("sim.p0 must be in [0, 1]");
  }
  if (params.taylor_terms && *params.taylor_terms < 1) {
    throw ConfigError("sim.taylor_terms must be >= 1");
  }
}

double distance_risk(double distance_m, const SimParams& params) {
  if (!(distance_m > 0)) {
    throw std::domain_error("distance_risk: distance must be > 0, got " +
                            std::to_string(distance_m));
  }
  return std::min(1.0, params.d_min_sq / (distance_m * distance_m));
}

double infectiousness_risk(double onset_days, const SimParams& params) {
  const double z = (onset_days - params.inf_loc) / params.inf_scale;
  return std::exp(log_unnormalized_density(z, params.inf_shape) -
                  log_peak_density(params.inf_shape));
}

double infectiousness_peak_day(const SimParams& params) {
  return params.inf_loc + params.inf_scale * std::log(params.inf_shape);
}

double hazard_score(double duration_min, double distance_m, double onset_days,
                    const SimParams& params) {
  if (!(duration_min >= 0)) {
    throw std::domain_error("hazard_score: duration must be >= 0");
  }
  return duration_min * distance_risk(distance_m, params) *
         infectiousness_risk(onset_days, params);
}

double infection_probability(double hazard, const SimParams& params) {
  if (!(hazard >= 0)) {
    throw std::domain_error("infection_probability: hazard must be >= 0");
  }
  const double x = -params.lambda * hazard;
  if (!params.taylor_terms) {
    return -std::expm1(x);
  }
  const double p = 1.0 - taylor_exp(x, *params.taylor_terms);
  return std::clamp(p, 0.0, 1.0);
}

double bag_infection_probability(std::span<const double> hazards,
                                 const SimParams& params) {
  double survival = 1.0 - params.p0;
  for (const double hazard : hazards) {
    survival *= 1.0 - infection_probability(hazard, params);
  }
  return 1.0 - survival;
}

double distance_to_attenuation(double distance_m, const SimParams& params) {
  if (!(distance_m > 0)) {
    throw std::domain_error(
        "distance_to_attenuation: distance must be > 0, got " +
        std::to_string(distance_m));
  }
  return std::exp(params.ble_offset + params.ble_slope * std::log(distance_m));
}

double attenuation_to_distance(double attenuation_db, const SimParams& params) {
  if (!(attenuation_db > 0)) {
    throw std::domain_error("attenuation_to_distance: attenuation must be > 0");
  }
  return std::exp((std::log(attenuation_db) - params.ble_offset) /
                  params.ble_slope);
}

}  // namespace risklab
