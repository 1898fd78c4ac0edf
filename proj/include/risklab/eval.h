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

#ifndef RISKLAB_EVAL_H_
#define RISKLAB_EVAL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "risklab/bags.h"
#include "risklab/contagiousness.h"
#include "risklab/learner.h"
#include "risklab/pool.h"
#include "risklab/sim_params.h"

namespace risklab {

enum class Method { kLearned, kSwiss, kOracle };
enum class Split { kTrain, kTest };

std::string to_string(Method method);
std::string to_string(Split split);

// Everything one simulate-train-score trial needs.
struct TrialConfig {
  SimParams sim;
  GridSpec grid = desk_grid();
  BagConfig bags;
  int n_users = 2000;
  TrainConfig train;
  ContagiousnessLut lut = default_lut();
};

struct TrialResult {
  std::uint64_t trial_seed = 0;
  int max_bag_size = 0;
  double censor_prob = 0;
  PositiveScenario scenario = PositiveScenario::kUniformOneToThree;
  std::optional<int> taylor_terms;
  Method method = Method::kLearned;
  Split split = Split::kTrain;
  double auc = 0;
};

// One full trial: build pool, assemble/censor/split bags, train on the
// observed train bags, then report AUC for the learned, Swiss and oracle
// scorers on both splits (6 rows). Deterministic in (config, seed).
std::vector<TrialResult> run_trial(const TrialConfig& config,
                                   std::uint64_t seed);

// Model-mismatch trial: the simulator draws labels through a Taylor dose
// response with `taylor_terms` terms while the learner keeps the exact
// exponential form.
std::vector<TrialResult> run_mismatch_trial(int taylor_terms,
                                            const TrialConfig& config,
                                            std::uint64_t seed);

enum class SweepAxis { kBagSize, kCensorProb, kTaylorTerms };

std::string to_string(SweepAxis axis);

struct SweepConfig {
  SweepAxis axis = SweepAxis::kBagSize;
  std::vector<double> values = {4, 8, 16, 32};
  int n_trials = 5;
};

void validate(const SweepConfig& config);

// Per-axis default value lists from the experiment protocol.
std::vector<double> default_axis_values(SweepAxis axis);

struct SweepRow {
  double axis_value = 0;
  std::uint64_t trial_seed = 0;
  Method method = Method::kLearned;
  Split split = Split::kTrain;
  double auc = 0;
};

struct SummaryRow {
  double axis_value = 0;
  Method method = Method::kLearned;
  Split split = Split::kTrain;
  double mean_auc = 0;
  double stderr_auc = 0;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::kBagSize;
  std::vector<SweepRow> rows;          // fixed order: value, trial, method, split
  std::vector<SummaryRow> summary;     // fixed order: value, method, split
};

// Runs n_trials per axis value with trial seeds base_seed + trial_index
// (the same seed set at every axis value, so comparisons are paired).
// Trials run in parallel up to the RISKLAB_THREADS cap; aggregation order is
// fixed, so results are identical regardless of thread count.
SweepResult sweep(const TrialConfig& base, const SweepConfig& config,
                  std::uint64_t base_seed);

// Worker cap: RISKLAB_THREADS if set (minimum 1), else hardware concurrency.
int worker_limit();

// results CSV:  axis,axis_value,trial_seed,method,split,auc
// summary CSV:  axis,axis_value,method,split,mean_auc,stderr_auc
std::string results_csv(const SweepResult& result);
std::string summary_csv(const SweepResult& result);

}  // namespace risklab

#endif  // RISKLAB_EVAL_H_
