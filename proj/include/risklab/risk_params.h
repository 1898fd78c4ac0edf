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

#ifndef RISKLAB_RISK_PARAMS_H_
#define RISKLAB_RISK_PARAMS_H_

#include <array>
#include <string>

namespace risklab {

// The 10 learnable parameters of the app's risk score model.
//
// Buckets are indexed by attenuation: bucket 1 covers the lowest attenuations
// (closest exposures, highest risk) so the weights must be non-increasing.
// The implicit bucket boundaries are 0 below and 100 above.
struct RiskParams {
  std::array<double, 3> ble_thresholds = {50.0, 60.0, 70.0};
  std::array<double, 4> ble_weights = {1.0, 0.5, 0.25, 0.0};
  // Weights for levels {standard, high}; level none is fixed at weight 0.
  std::array<double, 2> con_weights = {0.5, 1.0};
  // Scale converting a summed risk score into a probability.
  double mu = 1.0;
};

// Throws ConfigError listing the violated constraint.
void validate(const RiskParams& params);

// The manual configuration deployed by the Swiss health authority:
// thresholds 53/60 dB with bin weights 1.0/0.5/0.0 (third bin ignored) and a
// constant infectiousness weight. Expressed in the 3-threshold form with an
// inert dummy threshold at 99 dB. mu is immaterial to AUC; set to 1.
RiskParams swiss_params();

std::string to_json_string(const RiskParams& params);
RiskParams risk_params_from_json_string(const std::string& text);

// File round-trip of the JSON form. Load validates.
void save_risk_params(const RiskParams& params, const std::string& path);
RiskParams load_risk_params(const std::string& path);

}  // namespace risklab

#endif  // RISKLAB_RISK_PARAMS_H_
