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
//
// Command-line front end for the risklab pipeline. Subcommands mirror the
// pipeline stages so each artifact can be produced and inspected on its own:
//
//   risklab simulate --config cfg.json --seed 1 --out out/
//   risklab train    --dataset out/dataset.txt --config cfg.json --out out/
//   risklab evaluate --dataset out/dataset.txt --params out/params.json
//   risklab sweep    --config cfg.json --seed 1 --out out/
//
// Exit codes: 0 success, 2 config error, 3 I/O error, 4 metric undefined.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "risklab/dataset.h"
#include "risklab/errors.h"
#include "risklab/eval.h"
#include "risklab/metrics.h"
#include "risklab/risk_model.h"
#include "risklab/run_config.h"
#include "risklab/text_format.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitMetric = 4;
constexpr std::uint64_t kTrainSeedSalt = 0x9e3779b97f4a7c15ULL;

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::string preset;
};

risklab::RunConfig load_config(const CommonArgs& args) {
  risklab::RunConfig config = args.config_path.empty()
                                  ? risklab::default_run_config()
                                  : risklab::load_run_config(args.config_path);
  if (args.seed) config.seed = *args.seed;
  if (!args.preset.empty()) {
    if (args.preset == "paper-lambda") {
      config.trial.sim.lambda = risklab::kEmpiricalLambda;
    } else if (args.preset == "swiss") {
      throw risklab::ConfigError(
          "--preset swiss only applies to the evaluate subcommand");
    } else {
      throw risklab::ConfigError("unknown preset '" + args.preset + "'");
    }
  }
  return config;
}

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw risklab::IoError("cannot create output directory " + dir + ": " +
                           ec.message());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw risklab::IoError("cannot write " + path);
  out << text;
  if (!out) throw risklab::IoError("write failed for " + path);
}

std::string effective_config_hash(const risklab::RunConfig& config,
                                  const CommonArgs& args) {
  return risklab::fnv1a_hex(config.canonical_json + "|seed=" +
                            std::to_string(config.seed) +
                            "|preset=" + args.preset);
}

int cmd_simulate(const CommonArgs& args) {
  const risklab::RunConfig config = load_config(args);
  ensure_out_dir(args.out_dir);

  risklab::Rng rng(config.seed);
  const std::vector<risklab::ExposureEvent> pool =
      risklab::build_pool(config.trial.grid, config.trial.sim, rng);
  std::vector<risklab::Bag> bags = risklab::assemble_bags(
      pool, config.trial.n_users, config.trial.bags, rng);
  risklab::apply_censoring(bags, config.trial.bags, rng);
  auto [train_bags, test_bags] =
      risklab::split(std::move(bags), config.trial.bags.train_frac, rng);

  risklab::DatasetManifest manifest;
  manifest.config_hash = effective_config_hash(config, args);
  manifest.seed = config.seed;
  manifest.n_pool_events = static_cast<long>(pool.size());
  manifest.n_pool_positives = static_cast<long>(
      std::count_if(pool.begin(), pool.end(),
                    [](const risklab::ExposureEvent& e) { return e.infected; }));
  manifest.n_bags = static_cast<long>(train_bags.size() + test_bags.size());
  for (const risklab::Bag& bag : train_bags) {
    manifest.train_user_ids.push_back(bag.user_id);
  }
  for (const risklab::Bag& bag : test_bags) {
    manifest.test_user_ids.push_back(bag.user_id);
  }

  std::vector<risklab::BagRecord> records;
  records.reserve(static_cast<std::size_t>(manifest.n_bags));
  for (const risklab::Bag& bag : train_bags) {
    records.push_back(
        risklab::make_record(bag, config.trial.sim, config.trial.lut));
  }
  for (const risklab::Bag& bag : test_bags) {
    records.push_back(
        risklab::make_record(bag, config.trial.sim, config.trial.lut));
  }
  std::sort(records.begin(), records.end(),
            [](const risklab::BagRecord& a, const risklab::BagRecord& b) {
              return a.user_id < b.user_id;
            });

  const std::string dataset_path = args.out_dir + "/dataset.txt";
  risklab::write_dataset(records, dataset_path);
  risklab::write_manifest(manifest, risklab::manifest_path_for(dataset_path));

  std::cout << "wrote " << dataset_path << " (" << manifest.n_bags
            << " bags; pool " << manifest.n_pool_events << " events, "
            << manifest.n_pool_positives << " positive)\n";
  return 0;
}

// Bags in manifest order, so file-based training reproduces the in-memory
// trial bit for bit.
std::vector<risklab::ObservedBag> observed_subset(
    const std::vector<risklab::BagRecord>& records,
    const std::vector<std::uint64_t>& user_ids) {
  std::vector<risklab::ObservedBag> result;
  result.reserve(user_ids.size());
  for (const std::uint64_t id : user_ids) {
    const auto it = std::find_if(records.begin(), records.end(),
                                 [id](const risklab::BagRecord& record) {
                                   return record.user_id == id;
                                 });
    if (it == records.end()) {
      throw risklab::ConfigError("manifest user id " + std::to_string(id) +
                                 " not present in dataset");
    }
    result.push_back(risklab::to_observed(*it));
  }
  return result;
}

int cmd_train(const std::string& dataset_path, const CommonArgs& args) {
  const risklab::RunConfig config = load_config(args);
  ensure_out_dir(args.out_dir);

  const std::vector<risklab::BagRecord> records =
      risklab::read_dataset(dataset_path);
  const risklab::DatasetManifest manifest =
      risklab::read_manifest(risklab::manifest_path_for(dataset_path));
  const std::vector<risklab::ObservedBag> train_bags =
      observed_subset(records, manifest.train_user_ids);

  risklab::TrainConfig train_config = config.trial.train;
  train_config.rng_seed = (args.seed ? *args.seed : manifest.seed) ^
                          kTrainSeedSalt;
  const risklab::TrainResult result = risklab::train(train_bags, train_config);

  const std::string params_path = args.out_dir + "/params.json";
  risklab::save_risk_params(result.params, params_path);

  std::string trace = "iteration,temperature,batch_loss\n";
  for (const risklab::TraceRow& row : result.trace) {
    trace += std::to_string(row.iteration);
    trace += ',';
    trace += risklab::format_double(row.temperature);
    trace += ',';
    trace += risklab::format_double(row.batch_loss);
    trace += '\n';
  }
  write_text_file(args.out_dir + "/loss_trace.csv", trace);

  std::cout << "wrote " << params_path << " and loss_trace.csv ("
            << result.trace.size() << " iterations)\n";
  return 0;
}

int cmd_evaluate(const std::string& dataset_path,
                 const std::vector<std::string>& params_paths,
                 const CommonArgs& args) {
  bool swiss_preset = false;
  if (args.preset == "swiss") {
    swiss_preset = true;
  } else if (!args.preset.empty()) {
    throw risklab::ConfigError("evaluate only supports --preset swiss, got '" +
                               args.preset + "'");
  }
  ensure_out_dir(args.out_dir);
  const std::vector<risklab::BagRecord> records =
      risklab::read_dataset(dataset_path);
  const risklab::DatasetManifest manifest =
      risklab::read_manifest(risklab::manifest_path_for(dataset_path));

  struct Scorer {
    std::string name;
    risklab::RiskParams params;
  };
  std::vector<Scorer> scorers;
  for (const std::string& path : params_paths) {
    scorers.push_back(
        Scorer{std::filesystem::path(path).stem().string(),
               risklab::load_risk_params(path)});
  }
  if (swiss_preset || scorers.empty()) {
    scorers.push_back(Scorer{"swiss", risklab::swiss_params()});
  }

  const std::vector<risklab::ObservedBag> train_bags =
      observed_subset(records, manifest.train_user_ids);
  const std::vector<risklab::ObservedBag> test_bags =
      observed_subset(records, manifest.test_user_ids);

  std::string csv = "method,split,auc\n";
  for (const Scorer& scorer : scorers) {
    for (const auto* bags : {&train_bags, &test_bags}) {
      std::vector<double> scores;
      std::vector<int> labels;
      for (const risklab::ObservedBag& bag : *bags) {
        // Rank by the raw risk sum; same ordering as the probability but
        // safe from floating-point saturation at large mu.
        scores.push_back(risklab::bag_risk(bag.exposures, scorer.params).score);
        labels.push_back(bag.label ? 1 : 0);
      }
      const double auc = risklab::roc_auc(scores, labels);
      csv += scorer.name;
      csv += ',';
      csv += bags == &train_bags ? "train" : "test";
      csv += ',';
      csv += risklab::format_double(auc);
      csv += '\n';
    }
  }
  const std::string results_path = args.out_dir + "/results.csv";
  write_text_file(results_path, csv);
  std::cout << csv;
  return 0;
}

int cmd_sweep(const CommonArgs& args) {
  const risklab::RunConfig config = load_config(args);
  ensure_out_dir(args.out_dir);

  const risklab::SweepResult result =
      risklab::sweep(config.trial, config.sweep, config.seed);
  write_text_file(args.out_dir + "/results.csv",
                  risklab::results_csv(result));
  write_text_file(args.out_dir + "/summary.csv",
                  risklab::summary_csv(result));
  std::cout << "wrote results.csv (" << result.rows.size()
            << " rows) and summary.csv (" << result.summary.size()
            << " rows) to " << args.out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exposure notification risk score simulation and learning"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string dataset_path;
  std::vector<std::string> params_paths;

  const auto add_common = [&](CLI::App* cmd, bool with_preset = true) {
    cmd->add_option("--config", args.config_path, "Run config JSON");
    cmd->add_option("--seed", args.seed, "Seed override");
    cmd->add_option("--out", args.out_dir, "Output directory");
    if (with_preset) {
      cmd->add_option("--preset", args.preset, "swiss|paper-lambda");
    }
  };

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Generate a dataset file plus manifest");
  add_common(simulate);

  CLI::App* train_cmd = app.add_subcommand(
      "train", "Learn risk parameters from a dataset's train split");
  train_cmd->add_option("--dataset", dataset_path, "Dataset file")->required();
  add_common(train_cmd, /*with_preset=*/false);

  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Score a dataset with stored or preset risk parameters");
  evaluate->add_option("--dataset", dataset_path, "Dataset file")->required();
  evaluate->add_option("--params", params_paths, "Risk params JSON file(s)");
  evaluate->add_option("--preset", args.preset,
                       "swiss: also score the Swiss baseline");
  evaluate->add_option("--out", args.out_dir, "Output directory");

  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Run a trial sweep and emit results and summary CSVs");
  add_common(sweep_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(args);
    if (train_cmd->parsed()) return cmd_train(dataset_path, args);
    if (evaluate->parsed()) {
      return cmd_evaluate(dataset_path, params_paths, args);
    }
    if (sweep_cmd->parsed()) return cmd_sweep(args);
  } catch (const risklab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const risklab::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const risklab::MetricError& e) {
    std::cerr << "metric error: " << e.what() << "\n";
    return kExitMetric;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitConfig;
  }
  return 0;
}
