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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <vector>

#include "doctest.h"
#include "risklab/errors.h"
#include "risklab/metrics.h"
#include "risklab/random.h"
#include "risklab/risk_model.h"

namespace risklab {
namespace {

RiskParams random_feasible_params(Rng& rng) {
  RiskParams params;
  const double t1 = 20.0 + rng.uniform01() * 30.0;
  const double t2 = t1 + 1.0 + rng.uniform01() * 15.0;
  const double t3 = t2 + 1.0 + rng.uniform01() * 15.0;
  params.ble_thresholds = {t1, t2, t3};
  double w = rng.uniform01() * 2.0;
  for (std::size_t b = 4; b-- > 0;) {
    params.ble_weights[b] = w;
    w += rng.uniform01();
  }
  const double standard = rng.uniform01();
  params.con_weights = {standard, standard + rng.uniform01()};
  params.mu = 0.001 + rng.uniform01() * 0.2;
  return params;
}

ObservedExposure random_observation(Rng& rng) {
  return ObservedExposure{
      .duration_min = rng.uniform01() * 60.0,
      .attenuation_db = 25.0 + rng.uniform01() * 74.0,
      .level = static_cast<Level>(rng.uniform_int(1, 3)),
  };
}

TEST_CASE("bucket boundaries are left-open right-closed") {
  const std::array<double, 3> thresholds = {50.0, 60.0, 70.0};
  CHECK(bucket_of(50.0, thresholds) == 1);  // exactly at t1
  CHECK(bucket_of(50.0000001, thresholds) == 2);
  CHECK(bucket_of(55.0, thresholds) == 2);
  CHECK(bucket_of(60.0, thresholds) == 2);
  CHECK(bucket_of(70.0, thresholds) == 3);
  CHECK(bucket_of(70.0000001, thresholds) == 4);
  CHECK(bucket_of(100.0, thresholds) == 4);
  CHECK(bucket_of(1.0, thresholds) == 1);
  CHECK_THROWS_AS(bucket_of(0.0, thresholds), std::domain_error);
  CHECK_THROWS_AS(bucket_of(100.5, thresholds), std::domain_error);
}

TEST_CASE("bucket durations accumulate and conserve minutes") {
  const std::array<double, 3> thresholds = {50.0, 60.0, 70.0};

  const std::vector<MicroExposure> single = {{15.0, 55.0}};
  CHECK(bucket_durations(single, thresholds) ==
        std::array<double, 4>{0, 15.0, 0, 0});

  const std::vector<MicroExposure> two = {{10.0, 40.0}, {5.0, 45.0}};
  CHECK(bucket_durations(two, thresholds) ==
        std::array<double, 4>{15.0, 0, 0, 0});

  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<MicroExposure> micro;
    double total = 0;
    for (int i = 0; i < rng.uniform_int(0, 10); ++i) {
      micro.push_back({rng.uniform01() * 30.0, 1.0 + rng.uniform01() * 99.0});
      total += micro.back().duration_min;
    }
    const std::array<double, 4> durations = bucket_durations(micro, thresholds);
    CHECK(durations[0] + durations[1] + durations[2] + durations[3] ==
          doctest::Approx(total).epsilon(1e-12));
  }
}

TEST_CASE("exposure risk is bilinear in duration and weights") {
  RiskParams params;
  params.ble_thresholds = {50.0, 60.0, 70.0};
  params.ble_weights = {2.0, 1.0, 0.5, 0.0};
  params.con_weights = {1.0, 1.5};

  const std::vector<MicroExposure> micro = {{15.0, 40.0}};  // bucket 1
  CHECK(exposure_risk(micro, Level::kHigh, params) == doctest::Approx(45.0));
  CHECK(exposure_risk(micro, Level::kNone, params) == 0.0);

  const std::vector<MicroExposure> doubled = {{30.0, 40.0}};
  CHECK(exposure_risk(doubled, Level::kHigh, params) ==
        doctest::Approx(2.0 * exposure_risk(micro, Level::kHigh, params)));
}

TEST_CASE("bag risk basics") {
  RiskParams params;
  CHECK(bag_risk({}, params).score == 0.0);
  CHECK(bag_risk({}, params).probability == 0.0);

  const std::vector<ObservedExposure> one = {
      {.duration_min = 10.0, .attenuation_db = 45.0, .level = Level::kHigh}};
  const BagRisk result = bag_risk(one, params);
  CHECK(result.probability ==
        doctest::Approx(1.0 - std::exp(-params.mu * result.score))
            .epsilon(1e-12));
}

TEST_CASE("independent-exposure identity holds for the app model") {
  // 1 - prod(1 - q_n) with q_n = 1 - exp(-mu r_n) collapses to
  // 1 - exp(-mu sum r_n), the aggregated form.
  Rng rng(22);
  for (int trial = 0; trial < 1000; ++trial) {
    const RiskParams params = random_feasible_params(rng);
    std::vector<ObservedExposure> observations;
    for (int i = 0; i < rng.uniform_int(0, 6); ++i) {
      observations.push_back(random_observation(rng));
    }
    double product = 1.0;
    for (const ObservedExposure& obs : observations) {
      product *= std::exp(-params.mu * exposure_risk(obs, params));
    }
    const double via_product = 1.0 - product;
    const double via_sum = bag_risk(observations, params).probability;
    CHECK(std::fabs(via_product - via_sum) <= 1e-12);
  }
}

TEST_CASE("score ordering does not depend on mu") {
  Rng rng(23);
  RiskParams params = random_feasible_params(rng);
  std::vector<std::vector<ObservedExposure>> bags;
  std::vector<int> labels;
  for (int i = 0; i < 60; ++i) {
    std::vector<ObservedExposure> bag;
    for (int n = 0; n < rng.uniform_int(1, 5); ++n) {
      bag.push_back(random_observation(rng));
    }
    bags.push_back(bag);
    labels.push_back(rng.bernoulli(0.5) ? 1 : 0);
  }
  labels[0] = 0;
  labels[1] = 1;

  const auto auc_with_mu = [&](double mu) {
    RiskParams scaled = params;
    scaled.mu = mu;
    std::vector<double> scores;
    for (const auto& bag : bags) {
      scores.push_back(bag_risk(bag, scaled).probability);
    }
    return roc_auc(scores, labels);
  };
  // AUC from raw scores R is the reference; any mu that keeps Q away from
  // floating-point saturation (mu * R well below ~700) reproduces it.
  std::vector<double> raw_scores;
  for (const auto& bag : bags) raw_scores.push_back(bag_risk(bag, params).score);
  const double reference = roc_auc(raw_scores, labels);
  for (const double mu : {1e-6, 1e-4, 1e-3}) {
    CHECK(auc_with_mu(mu) == doctest::Approx(reference).epsilon(1e-12));
  }
}

TEST_CASE("lower attenuation never lowers the risk") {
  Rng rng(24);
  for (int trial = 0; trial < 200; ++trial) {
    const RiskParams params = random_feasible_params(rng);
    const double tau = 1.0 + rng.uniform01() * 59.0;
    const Level level = static_cast<Level>(rng.uniform_int(2, 3));
    double a_low = 1.0 + rng.uniform01() * 98.0;
    double a_high = 1.0 + rng.uniform01() * 98.0;
    if (a_low > a_high) std::swap(a_low, a_high);
    const std::vector<MicroExposure> low = {{tau, a_low}};
    const std::vector<MicroExposure> high = {{tau, a_high}};
    CHECK(exposure_risk(low, level, params) >=
          exposure_risk(high, level, params) - 1e-12);
  }
}

TEST_CASE("swiss configuration") {
  const RiskParams params = swiss_params();
  CHECK_NOTHROW(validate(params));
  CHECK(bucket_of(50.0, params.ble_thresholds) == 1);
  CHECK(params.ble_weights[bucket_of(50.0, params.ble_thresholds) - 1] == 1.0);
  CHECK(bucket_of(55.0, params.ble_thresholds) == 2);
  CHECK(params.ble_weights[bucket_of(55.0, params.ble_thresholds) - 1] == 0.5);
  CHECK(params.ble_weights[bucket_of(70.0, params.ble_thresholds) - 1] == 0.0);
  const std::vector<ObservedExposure> ignored = {
      {.duration_min = 60.0, .attenuation_db = 70.0, .level = Level::kHigh}};
  CHECK(bag_risk(ignored, params).score == 0.0);
}

TEST_CASE("oracle score delegates to the simulator") {
  SimParams sim;
  Bag bag;
  for (int i = 0; i < 3; ++i) {
    ExposureEvent event;
    event.duration_min = 20.0;
    event.distance_m = 1.0;
    event.onset_days = 0.0;
    event.hazard = hazard_score(20.0, 1.0, 0.0, sim);
    bag.events.push_back(event);
  }
  bag.visible = {1, 0, 1};  // censoring must not affect the oracle

  std::vector<double> hazards;
  for (const ExposureEvent& event : bag.events) hazards.push_back(event.hazard);
  CHECK(oracle_score(bag, sim) ==
        doctest::Approx(bag_infection_probability(hazards, sim))
            .epsilon(1e-15));

  // Adding an event with positive hazard strictly increases the score.
  const double before = oracle_score(bag, sim);
  bag.events.push_back(bag.events[0]);
  bag.visible.push_back(1);
  CHECK(oracle_score(bag, sim) > before);

  const Bag empty;
  CHECK(oracle_score(empty, sim) == 0.0);
}

TEST_CASE("risk params validation names the violated constraint") {
  RiskParams params;
  CHECK_NOTHROW(validate(params));

  RiskParams bad = params;
  bad.ble_thresholds = {60.0, 50.0, 70.0};
  CHECK_THROWS_WITH_AS(validate(bad), doctest::Contains("ble_thresholds"),
                       ConfigError);
  bad = params;
  bad.ble_weights = {0.1, 0.5, 0.2, 0.0};
  CHECK_THROWS_WITH_AS(validate(bad), doctest::Contains("ble_weights"),
                       ConfigError);
  bad = params;
  bad.con_weights = {1.5, 1.0};
  CHECK_THROWS_WITH_AS(validate(bad), doctest::Contains("con_weights"),
                       ConfigError);
  bad = params;
  bad.mu = 0.0;
  CHECK_THROWS_WITH_AS(validate(bad), doctest::Contains("mu"), ConfigError);
}

TEST_CASE("risk params json round-trip") {
  Rng rng(25);
  for (int trial = 0; trial < 20; ++trial) {
    const RiskParams params = random_feasible_params(rng);
    const RiskParams loaded =
        risk_params_from_json_string(to_json_string(params));
    CHECK(loaded.ble_thresholds == params.ble_thresholds);
    CHECK(loaded.ble_weights == params.ble_weights);
    CHECK(loaded.con_weights == params.con_weights);
    CHECK(loaded.mu == params.mu);
  }

  const std::string path =
      (std::filesystem::temp_directory_path() / "risklab_params_test.json")
          .string();
  const RiskParams params = swiss_params();
  save_risk_params(params, path);
  const RiskParams loaded = load_risk_params(path);
  CHECK(loaded.ble_thresholds == params.ble_thresholds);
  CHECK(loaded.mu == params.mu);
  std::remove(path.c_str());

  CHECK_THROWS_AS(risk_params_from_json_string("{"), ConfigError);
  CHECK_THROWS_AS(risk_params_from_json_string("{\"mu\": 1}"), ConfigError);
}

}  // namespace
}  // namespace risklab
