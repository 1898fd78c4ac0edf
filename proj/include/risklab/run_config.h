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

#ifndef RISKLAB_RUN_CONFIG_H_
#define RISKLAB_RUN_CONFIG_H_

#include <cstdint>
#include <string>

#include "risklab/eval.h"

namespace risklab {

// Experiment configuration, loaded from one JSON document with nested
// blocks (sim, grid, bags, train, lut, sweep). Unknown keys are rejected so
// a typo cannot silently fall back to a default.
struct RunConfig {
  std::uint64_t seed = 1;
  std::string output_dir = ".";
  TrialConfig trial;
  SweepConfig sweep;

  // Canonical dump of the parsed document; hashed into dataset manifests.
  std::string canonical_json;
};

RunConfig run_config_from_json_string(const std::string& text);
RunConfig load_run_config(const std::string& path);

// The config used when no --config is given: desk-scale grid, calibrated
// lambda, balanced bags, default training protocol.
RunConfig default_run_config();

}  // namespace risklab

#endif  // RISKLAB_RUN_CONFIG_H_
