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

#include "risklab/run_config.h"

#include <fstream>
#include <set>

#include "json.hpp"
#include "risklab/errors.h"

namespace risklab {

namespace {

using nlohmann::json;

// Rejects keys that are not in the allowed set; strict configs keep typos
// from silently becoming defaults.
void check_keys(const json& block, const std::string& name,
                const std::set<std::string>& allowed) {
  if (!block.is_object()) {
    throw ConfigError("config: '" + name + "' must be an object");
  }
  for (const auto& [key, value] : block.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("config: unknown key '" + name + "." + key + "'");
    }
  }
}

template <typename T>
void read_into(const json& block, const std::string& name,
               const std::string& key, T& out) {
  if (!block.contains(key)) return;
  try {
    block.at(key).get_to(out);
  } catch (const json::exception& e) {
    throw ConfigError("config: bad value for '" + name + "." + key +
                      "': " + e.what());
  }
}

void parse_sim(const json& block, SimParams& sim) {
  check_keys(block, "sim",
             {"lambda", "d_min_sq", "inf_loc", "inf_scale", "inf_shape",
              "inf_tau", "ble_offset", "ble_slope", "p0", "taylor_terms"});
  read_into(block, "sim", "lambda", sim.lambda);
  read_into(block, "sim", "d_min_sq", sim.d_min_sq);
  read_into(block, "sim", "inf_loc", sim.inf_loc);
  read_into(block, "sim", "inf_scale", sim.inf_scale);
  read_into(block, "sim", "inf_shape", sim.inf_shape);
  read_into(block, "sim", "inf_tau", sim.inf_tau);
  read_into(block, "sim", "ble_offset", sim.ble_offset);
  read_into(block, "sim", "ble_slope", sim.ble_slope);
  read_into(block, "sim", "p0", sim.p0);
  if (block.contains("taylor_terms") && !block.at("taylor_terms").is_null()) {
    int terms = 0;
    read_into(block, "sim", "taylor_terms", terms);
    sim.taylor_terms = terms;
  }
  validate(sim);
}

void parse_grid(const json& block, GridSpec& grid) {
  check_keys(block, "grid",
             {"n_dist", "d_range", "n_dur", "dur_range", "onset_range"});
  read_into(block, "grid", "n_dist", grid.n_dist);
  read_into(block, "grid", "n_dur", grid.n_dur);
  if (block.contains("d_range")) {
    std::array<double, 2> range{};
    read_into(block, "grid", "d_range", range);
    grid.dist_min_m = range[0];
    grid.dist_max_m = range[1];
  }
  if (block.contains("dur_range")) {
    std::array<double, 2> range{};
    read_into(block, "grid", "dur_range", range);
    grid.dur_min_min = range[0];
    grid.dur_max_min = range[1];
  }
  if (block.contains("onset_range")) {
    std::array<int, 2> range{};
    read_into(block, "grid", "onset_range", range);
    grid.onset_min_days = range[0];
    grid.onset_max_days = range[1];
  }
  validate(grid);
}

PositiveScenario scenario_from_string(const std::string& name) {
  if (name == "exactly_one") return PositiveScenario::kExactlyOne;
  if (name == "uniform_one_to_three") {
    return PositiveScenario::kUniformOneToThree;
  }
  throw ConfigError(
      "config: bags.positive_scenario must be 'exactly_one' or "
      "'uniform_one_to_three', got '" +
      name + "'");
}

void parse_bags(const json& block, BagConfig& bags, int& n_users) {
  check_keys(block, "bags",
             {"n_users", "max_bag_size", "nb_p", "nb_r", "positive_scenario",
              "censor_prob", "train_frac", "positive_frac"});
  read_into(block, "bags", "n_users", n_users);
  read_into(block, "bags", "max_bag_size", bags.max_bag_size);
  read_into(block, "bags", "nb_p", bags.nb_p);
  read_into(block, "bags", "nb_r", bags.nb_r);
  if (block.contains("positive_scenario")) {
    std::string name;
    read_into(block, "bags", "positive_scenario", name);
    bags.positive_scenario = scenario_from_string(name);
  }
  read_into(block, "bags", "censor_prob", bags.censor_prob);
  read_into(block, "bags", "train_frac", bags.train_frac);
  read_into(block, "bags", "positive_frac", bags.positive_frac);
  validate(bags);
  if (n_users < 1) throw ConfigError("config: bags.n_users must be >= 1");
}

void parse_train(const json& block, TrainConfig& train) {
  check_keys(block, "train",
             {"iterations", "batch_size", "learning_rate", "temperature_start",
              "temperature_end", "temperature_ramp"});
  read_into(block, "train", "iterations", train.iterations);
  read_into(block, "train", "batch_size", train.batch_size);
  read_into(block, "train", "learning_rate", train.learning_rate);
  read_into(block, "train", "temperature_start", train.temperature_start);
  read_into(block, "train", "temperature_end", train.temperature_end);
  if (block.contains("temperature_ramp")) {
    std::string ramp;
    read_into(block, "train", "temperature_ramp", ramp);
    if (ramp == "geometric") {
      train.ramp = TemperatureRamp::kGeometric;
    } else if (ramp == "linear") {
      train.ramp = TemperatureRamp::kLinear;
    } else {
      throw ConfigError(
          "config: train.temperature_ramp must be 'geometric' or 'linear'");
    }
  }
  validate(train);
}

Level level_from_string(const std::string& name) {
  if (name == "none") return Level::kNone;
  if (name == "standard") return Level::kStandard;
  if (name == "high") return Level::kHigh;
  throw ConfigError("config: lut level must be none/standard/high, got '" +
                    name + "'");
}

void parse_lut(const json& block, ContagiousnessLut& lut) {
  check_keys(block, "lut", {"entries"});
  if (!block.contains("entries")) return;
  lut = ContagiousnessLut();  // unlisted days stay at level none
  for (const json& entry : block.at("entries")) {
    check_keys(entry, "lut.entries[]", {"from", "to", "level"});
    int from = 0;
    int to = 0;
    std::string level;
    read_into(entry, "lut.entries[]", "from", from);
    read_into(entry, "lut.entries[]", "to", to);
    read_into(entry, "lut.entries[]", "level", level);
    try {
      lut.assign(from, to, level_from_string(level));
    } catch (const std::out_of_range& e) {
      throw ConfigError(std::string("config: lut entry out of range: ") +
                        e.what());
    }
  }
}

SweepAxis axis_from_string(const std::string& name) {
  if (name == "bag_size") return SweepAxis::kBagSize;
  if (name == "censor_prob") return SweepAxis::kCensorProb;
  if (name == "taylor_terms") return SweepAxis::kTaylorTerms;
  throw ConfigError(
      "config: sweep.axis must be bag_size/censor_prob/taylor_terms, got '" +
      name + "'");
}

void parse_sweep(const json& block, SweepConfig& sweep) {
  check_keys(block, "sweep", {"axis", "values", "n_trials"});
  if (block.contains("axis")) {
    std::string axis;
    read_into(block, "sweep", "axis", axis);
    sweep.axis = axis_from_string(axis);
    if (!block.contains("values")) {
      sweep.values = default_axis_values(sweep.axis);
    }
  }
  read_into(block, "sweep", "values", sweep.values);
  read_into(block, "sweep", "n_trials", sweep.n_trials);
  validate(sweep);
}

}  // namespace

RunConfig run_config_from_json_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  check_keys(doc, "config",
             {"seed", "output_dir", "sim", "grid", "bags", "train", "lut",
              "sweep"});

  RunConfig config;
  read_into(doc, "config", "seed", config.seed);
  read_into(doc, "config", "output_dir", config.output_dir);
  if (doc.contains("sim")) parse_sim(doc.at("sim"), config.trial.sim);
  if (doc.contains("grid")) parse_grid(doc.at("grid"), config.trial.grid);
  if (doc.contains("bags")) {
    parse_bags(doc.at("bags"), config.trial.bags, config.trial.n_users);
  }
  if (doc.contains("train")) parse_train(doc.at("train"), config.trial.train);
  if (doc.contains("lut")) parse_lut(doc.at("lut"), config.trial.lut);
  if (doc.contains("sweep")) parse_sweep(doc.at("sweep"), config.sweep);

  config.canonical_json = doc.dump();
  return config;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return run_config_from_json_string(text);
}

RunConfig default_run_config() {
  RunConfig config;
  config.canonical_json = "{}";
  return config;
}

}  // namespace risklab
