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

#include "risklab/risk_params.h"

#include <fstream>

#include "json.hpp"
#include "risklab/errors.h"

namespace risklab {

void validate(const RiskParams& params) {
  const auto& t = params.ble_thresholds;
  if (!(0 < t[0] && t[0] < t[1] && t[1] < t[2] && t[2] < 100)) {
    throw ConfigError(
        "risk params: ble_thresholds must satisfy 0 < t1 < t2 < t3 < 100");
  }
  const auto& w = params.ble_weights;
  if (!(w[0] >= w[1] && w[1] >= w[2] && w[2] >= w[3] && w[3] >= 0)) {
    throw ConfigError(
        "risk params: ble_weights must be non-increasing and >= 0");
  }
  if (!(params.con_weights[0] >= 0 &&
        params.con_weights[0] <= params.con_weights[1])) {
    throw ConfigError(
        "risk params: con_weights must satisfy 0 <= standard <= high");
  }
  if (!(params.mu > 0)) throw ConfigError("risk params: mu must be > 0");
}

RiskParams swiss_params() {
  RiskParams params;
  params.ble_thresholds = {53.0, 60.0, 99.0};
  params.ble_weights = {1.0, 0.5, 0.0, 0.0};
  params.con_weights = {1.0, 1.0};
  params.mu = 1.0;
  return params;
}

std::string to_json_string(const RiskParams& params) {
  nlohmann::json doc;
  doc["ble_thresholds"] = params.ble_thresholds;
  doc["ble_weights"] = params.ble_weights;
  doc["con_weights"] = params.con_weights;
  doc["mu"] = params.mu;
  return doc.dump(2) + "\n";
}

RiskParams risk_params_from_json_string(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("risk params: invalid JSON: ") + e.what());
  }
  RiskParams params;
  try {
    doc.at("ble_thresholds").get_to(params.ble_thresholds);
    doc.at("ble_weights").get_to(params.ble_weights);
    doc.at("con_weights").get_to(params.con_weights);
    doc.at("mu").get_to(params.mu);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("risk params: missing or malformed key: ") +
                      e.what());
  }
  validate(params);
  return params;
}

void save_risk_params(const RiskParams& params, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << to_json_string(params);
  if (!out) throw IoError("write failed for " + path);
}

RiskParams load_risk_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return risk_params_from_json_string(text);
}

}  // namespace risklab
