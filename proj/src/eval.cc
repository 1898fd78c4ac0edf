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

#include "risklab/eval.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "risklab/errors.h"
#include "risklab/metrics.h"
#include "risklab/risk_model.h"
#include "risklab/text_format.h"

namespace risklab {

namespace {

// App-model methods rank by the summed risk score R rather than the
// probability Q = 1 - exp(-mu R): the ordering is identical but R cannot
// saturate to 1.0 in floating point the way Q does for large mu * R.
double auc_of(std::span<const Bag> bags, const SimParams& sim,
              const ContagiousnessLut& lut, Method method,
              const RiskParams& learned) {
  std::vector<double> scores;
  std::vector<int> labels;
  scores.reserve(bags.size());
  labels.reserve(bags.size());
  for (const Bag& bag : bags) {
    double score = 0;
    switch (method) {
      case Method::kOracle:
        score = oracle_score(bag, sim);
        break;
      case Method::kSwiss: {
        const std::vector<ObservedExposure> obs = observe(bag, sim, lut);
        score = bag_risk(obs, swiss_params()).score;
        break;
      }
      case Method::kLearned: {
        const std::vector<ObservedExposure> obs = observe(bag, sim, lut);
        score = bag_risk(obs, learned).score;
        break;
      }
    }
    scores.push_back(score);
    labels.push_back(bag.label ? 1 : 0);
  }
  return roc_auc(scores, labels);
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::kLearned:
      return "learned";
    case Method::kSwiss:
      return "swiss";
    case Method::kOracle:
      return "oracle";
  }
  return "unknown";
}

std::string to_string(Split split) {
  return split == Split::kTrain ? "train" : "test";
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kBagSize:
      return "bag_size";
    case SweepAxis::kCensorProb:
      return "censor_prob";
    case SweepAxis::kTaylorTerms:
      return "taylor_terms";
  }
  return "unknown";
}

std::vector<TrialResult> run_trial(const TrialConfig& config,
                                   std::uint64_t seed) {
  validate(config.sim);
  validate(config.bags);
  validate(config.train);

  // One stream drives the data pipeline in a fixed stage order; training
  // owns a separate stream so changing train settings cannot perturb the
  // generated data.
  Rng rng(seed);
  const std::vector<ExposureEvent> pool =
      build_pool(config.grid, config.sim, rng);
  std::vector<Bag> bags = assemble_bags(pool, config.n_users, config.bags, rng);
  apply_censoring(bags, config.bags, rng);
  auto [train_bags, test_bags] = split(std::move(bags), config.bags.train_frac, rng);

  TrainConfig train_config = config.train;
  train_config.rng_seed = seed ^ 0x9e3779b97f4a7c15ULL;
  const std::vector<ObservedBag> observed_train =
      observe_bags(train_bags, config.sim, config.lut);
  const TrainResult trained = train(observed_train, train_config);

  std::vector<TrialResult> results;
  for (const Method method :
       {Method::kLearned, Method::kSwiss, Method::kOracle}) {
    for (const Split split_id : {Split::kTrain, Split::kTest}) {
      const std::span<const Bag> subset =
          split_id == Split::kTrain ? std::span<const Bag>(train_bags)
                                    : std::span<const Bag>(test_bags);
      TrialResult row;
      row.trial_seed = seed;
      row.max_bag_size = config.bags.max_bag_size;
      row.censor_prob = config.bags.censor_prob;
      row.scenario = config.bags.positive_scenario;
      row.taylor_terms = config.sim.taylor_terms;
      row.method = method;
      row.split = split_id;
      row.auc = auc_of(subset, config.sim, config.lut, method, trained.params);
      results.push_back(row);
    }
  }
  return results;
}

std::vector<TrialResult> run_mismatch_trial(int taylor_terms,
                                            const TrialConfig& config,
                                            std::uint64_t seed) {
  TrialConfig mismatch = config;
  mismatch.sim.taylor_terms = taylor_terms;
  return run_trial(mismatch, seed);
}

void validate(const SweepConfig& config) {
  if (config.values.empty()) throw ConfigError("sweep.values must be non-empty");
  if (config.n_trials < 1) throw ConfigError("sweep.n_trials must be >= 1");
}

std::vector<double> default_axis_values(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kBagSize:
      return {4, 8, 16, 32};
    case SweepAxis::kCensorProb:
      return {0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
    case SweepAxis::kTaylorTerms:
      return {2, 4, 6, 8};
  }
  return {};
}

int worker_limit() {
  if (const char* env = std::getenv("RISKLAB_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed >= 1) return parsed;
    return 1;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

SweepResult sweep(const TrialConfig& base, const SweepConfig& config,
                  std::uint64_t base_seed) {
  validate(config);

  struct Task {
    std::size_t value_index;
    int trial_index;
    TrialConfig config;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (std::size_t vi = 0; vi < config.values.size(); ++vi) {
    const double value = config.values[vi];
    TrialConfig trial_config = base;
    switch (config.axis) {
      case SweepAxis::kBagSize:
        trial_config.bags.max_bag_size = static_cast<int>(value);
        break;
      case SweepAxis::kCensorProb:
        trial_config.bags.censor_prob = value;
        break;
      case SweepAxis::kTaylorTerms:
        trial_config.sim.taylor_terms = static_cast<int>(value);
        break;
    }
    for (int t = 0; t < config.n_trials; ++t) {
      tasks.push_back(Task{vi, t, trial_config,
                           base_seed + static_cast<std::uint64_t>(t)});
    }
  }

  // Trials are independent; run them on a small worker pool and collect into
  // preallocated slots so the output order never depends on scheduling.
  std::vector<std::vector<TrialResult>> trial_rows(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const int n_workers =
      std::max(1, std::min<int>(worker_limit(),
                                static_cast<int>(tasks.size())));
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(n_workers));
  for (int w = 0; w < n_workers; ++w) {
    workers.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        try {
          trial_rows[i] = run_trial(tasks[i].config, tasks[i].seed);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& worker : workers) worker.join();
  if (failure) std::rethrow_exception(failure);

  SweepResult result;
  result.axis = config.axis;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    for (const TrialResult& row : trial_rows[i]) {
      result.rows.push_back(SweepRow{config.values[tasks[i].value_index],
                                     row.trial_seed, row.method, row.split,
                                     row.auc});
    }
  }

  for (const double value : config.values) {
    for (const Method method :
         {Method::kLearned, Method::kSwiss, Method::kOracle}) {
      for (const Split split_id : {Split::kTrain, Split::kTest}) {
        std::vector<double> aucs;
        for (const SweepRow& row : result.rows) {
          if (row.axis_value == value && row.method == method &&
              row.split == split_id) {
            aucs.push_back(row.auc);
          }
        }
        const MeanStderr stats = mean_stderr(aucs);
        result.summary.push_back(
            SummaryRow{value, method, split_id, stats.mean, stats.stderr_});
      }
    }
  }
  return result;
}

std::string results_csv(const SweepResult& result) {
  std::string csv = "axis,axis_value,trial_seed,method,split,auc\n";
  const std::string axis = to_string(result.axis);
  for (const SweepRow& row : result.rows) {
    csv += axis;
    csv += ',';
    csv += format_double(row.axis_value);
    csv += ',';
    csv += std::to_string(row.trial_seed);
    csv += ',';
    csv += to_string(row.method);
    csv += ',';
    csv += to_string(row.split);
    csv += ',';
    csv += format_double(row.auc);
    csv += '\n';
  }
  return csv;
}

std::string summary_csv(const SweepResult& result) {
  std::string csv = "axis,axis_value,method,split,mean_auc,stderr_auc\n";
  const std::string axis = to_string(result.axis);
  for (const SummaryRow& row : result.summary) {
    csv += axis;
    csv += ',';
    csv += format_double(row.axis_value);
    csv += ',';
    csv += to_string(row.method);
    csv += ',';
    csv += to_string(row.split);
    csv += ',';
    csv += format_double(row.mean_auc);
    csv += ',';
    csv += format_double(row.stderr_auc);
    csv += '\n';
  }
  return csv;
}

}  // namespace risklab
