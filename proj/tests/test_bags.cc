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
#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "risklab/bags.h"
#include "risklab/errors.h"

namespace risklab {
namespace {

// Small synthetic pool: `n_pos` clearly positive events then `n_neg`
// negatives, with distinguishable features.
std::vector<ExposureEvent> toy_pool(int n_pos, int n_neg) {
  std::vector<ExposureEvent> pool;
  for (int i = 0; i < n_pos + n_neg; ++i) {
    ExposureEvent event;
    event.duration_min = 10.0 + i;
    event.distance_m = 1.0 + 0.01 * i;
    event.onset_days = 0.0;
    event.hazard = 5.0;
    event.infected = i < n_pos;
    pool.push_back(event);
  }
  return pool;
}

// Independent pmf oracle via the ratio recurrence
//   pmf(k+1) / pmf(k) = p (k + r) / (k + 1), pmf(0) = (1-p)^r,
// truncated to {1..max} and renormalized.
std::vector<double> truncated_pmf_oracle(double p, double r, int max) {
  std::vector<double> pmf;
  double value = std::pow(1.0 - p, r);  // pmf(0)
  for (int k = 0; k < max; ++k) {
    value *= p * (k + r) / (k + 1.0);
    pmf.push_back(value);  // pmf(k + 1)
  }
  double total = 0;
  for (const double v : pmf) total += v;
  for (double& v : pmf) v /= total;
  return pmf;
}

TEST_CASE("bag size sampler: single-point support") {
  BagConfig config;
  config.max_bag_size = 1;
  Rng rng(1);
  for (int i = 0; i < 100; ++i) CHECK(sample_bag_size(config, rng) == 1);
}

TEST_CASE("bag size sampler stays in range") {
  BagConfig config;
  config.max_bag_size = 8;
  TruncatedNegBinomial dist(config.nb_p, config.nb_r, config.max_bag_size);
  Rng rng(2);
  for (int i = 0; i < 100000; ++i) {
    const int k = dist.sample(rng);
    CHECK(k >= 1);
    CHECK(k <= 8);
  }
}

TEST_CASE("bag size sampler matches the analytic truncated pmf") {
  const double p = 0.5;
  const double r = 2.0;
  const int max = 8;
  const std::vector<double> expected = truncated_pmf_oracle(p, r, max);

  TruncatedNegBinomial dist(p, r, max);
  for (int k = 1; k <= max; ++k) {
    CHECK(dist.pmf(k) ==
          doctest::Approx(expected[static_cast<std::size_t>(k - 1)])
              .epsilon(1e-9));
  }

  const int n = 1000000;
  std::vector<int> counts(static_cast<std::size_t>(max), 0);
  Rng rng(3);
  for (int i = 0; i < n; ++i) ++counts[static_cast<std::size_t>(dist.sample(rng) - 1)];
  for (int k = 1; k <= max; ++k) {
    const double pk = expected[static_cast<std::size_t>(k - 1)];
    const double freq = counts[static_cast<std::size_t>(k - 1)] /
                        static_cast<double>(n);
    const double se = std::sqrt(pk * (1.0 - pk) / n);
    CHECK(std::fabs(freq - pk) <= 3.0 * se);
  }
}

TEST_CASE("exactly-one scenario puts one positive in each positive bag") {
  const std::vector<ExposureEvent> pool = toy_pool(10, 200);
  BagConfig config;
  config.max_bag_size = 4;
  config.positive_scenario = PositiveScenario::kExactlyOne;
  Rng rng(5);
  const std::vector<Bag> bags = assemble_bags(pool, 500, config, rng);
  int n_positive_bags = 0;
  for (const Bag& bag : bags) {
    const long positives = std::count_if(
        bag.events.begin(), bag.events.end(),
        [](const ExposureEvent& e) { return e.infected; });
    CHECK(bag.label == (positives > 0));
    if (bag.label) {
      ++n_positive_bags;
      CHECK(positives == 1);
    } else {
      CHECK(positives == 0);
    }
    CHECK(bag.events.size() >= 1);
    CHECK(bag.events.size() <= 4);
    CHECK(bag.visible.size() == bag.events.size());
    CHECK(std::all_of(bag.visible.begin(), bag.visible.end(),
                      [](std::uint8_t v) { return v == 1; }));
  }
  CHECK(n_positive_bags > 0);
  CHECK(n_positive_bags < 500);
}

TEST_CASE("uniform scenario spreads positive counts a third each") {
  const std::vector<ExposureEvent> pool = toy_pool(30, 400);
  BagConfig config;
  config.max_bag_size = 8;
  config.positive_frac = 1.0;  // every bag positive, sharpens the histogram
  config.positive_scenario = PositiveScenario::kUniformOneToThree;
  Rng rng(6);
  const std::vector<Bag> bags = assemble_bags(pool, 100000, config, rng);

  std::array<long, 3> histogram = {0, 0, 0};
  long eligible = 0;
  for (const Bag& bag : bags) {
    if (bag.events.size() < 3) continue;  // cap can bite below size 3
    const long positives = std::count_if(
        bag.events.begin(), bag.events.end(),
        [](const ExposureEvent& e) { return e.infected; });
    REQUIRE(positives >= 1);
    REQUIRE(positives <= 3);
    ++histogram[static_cast<std::size_t>(positives - 1)];
    ++eligible;
  }
  for (const long count : histogram) {
    const double freq = static_cast<double>(count) /
                        static_cast<double>(eligible);
    const double se = std::sqrt((1.0 / 3.0) * (2.0 / 3.0) /
                                static_cast<double>(eligible));
    CHECK(std::fabs(freq - 1.0 / 3.0) <= 3.0 * se);
  }
}

TEST_CASE("events are not repeated within a bag") {
  const std::vector<ExposureEvent> pool = toy_pool(5, 40);
  BagConfig config;
  config.max_bag_size = 32;
  Rng rng(7);
  const std::vector<Bag> bags = assemble_bags(pool, 300, config, rng);
  for (const Bag& bag : bags) {
    std::vector<double> durations;
    for (const ExposureEvent& event : bag.events) {
      durations.push_back(event.duration_min);  // unique per pool event
    }
    std::sort(durations.begin(), durations.end());
    CHECK(std::adjacent_find(durations.begin(), durations.end()) ==
          durations.end());
  }
}

TEST_CASE("assembling reports insufficient positives") {
  const std::vector<ExposureEvent> pool = toy_pool(1, 50);
  BagConfig config;
  config.max_bag_size = 4;
  config.positive_scenario = PositiveScenario::kUniformOneToThree;
  Rng rng(8);
  CHECK_THROWS_WITH_AS(assemble_bags(pool, 10, config, rng),
                       doctest::Contains("requires at least 3"), ConfigError);
}

TEST_CASE("assembling reports insufficient negatives") {
  const std::vector<ExposureEvent> pool = toy_pool(5, 2);
  BagConfig config;
  config.max_bag_size = 4;
  Rng rng(9);
  CHECK_THROWS_AS(assemble_bags(pool, 10, config, rng), ConfigError);
}

TEST_CASE("censoring with probability zero and one") {
  const std::vector<ExposureEvent> pool = toy_pool(10, 100);
  BagConfig config;
  config.max_bag_size = 4;
  config.positive_scenario = PositiveScenario::kExactlyOne;
  Rng rng(10);
  std::vector<Bag> bags = assemble_bags(pool, 400, config, rng);

  config.censor_prob = 0.0;
  apply_censoring(bags, config, rng);
  for (const Bag& bag : bags) {
    CHECK(std::all_of(bag.visible.begin(), bag.visible.end(),
                      [](std::uint8_t v) { return v == 1; }));
  }

  config.censor_prob = 1.0;
  apply_censoring(bags, config, rng);
  for (const Bag& bag : bags) {
    for (std::size_t n = 0; n < bag.events.size(); ++n) {
      CHECK(bag.visible[n] == (bag.events[n].infected ? 0 : 1));
    }
    // Labels never flip: a fully censored positive bag stays positive.
    const bool any_positive = std::any_of(
        bag.events.begin(), bag.events.end(),
        [](const ExposureEvent& e) { return e.infected; });
    CHECK(bag.label == any_positive);
  }
}

TEST_CASE("censoring hides the configured fraction of positives") {
  const std::vector<ExposureEvent> pool = toy_pool(50, 300);
  BagConfig config;
  config.max_bag_size = 4;
  config.positive_frac = 1.0;
  config.positive_scenario = PositiveScenario::kUniformOneToThree;
  config.censor_prob = 0.4;
  Rng rng(11);
  std::vector<Bag> bags = assemble_bags(pool, 80000, config, rng);
  apply_censoring(bags, config, rng);

  long hidden = 0;
  long total = 0;
  for (const Bag& bag : bags) {
    for (std::size_t n = 0; n < bag.events.size(); ++n) {
      if (!bag.events[n].infected) {
        CHECK(bag.visible[n] == 1);  // negatives are never censored
        continue;
      }
      ++total;
      if (!bag.visible[n]) ++hidden;
    }
  }
  CHECK(total > 100000);
  const double freq = static_cast<double>(hidden) / static_cast<double>(total);
  const double se =
      std::sqrt(0.4 * 0.6 / static_cast<double>(total));
  CHECK(std::fabs(freq - 0.4) <= 3.0 * se);
}

TEST_CASE("observation maps features and filters hidden events") {
  SimParams sim;
  const ContagiousnessLut lut = default_lut();

  Bag bag;
  bag.label = true;
  for (int i = 0; i < 4; ++i) {
    ExposureEvent event;
    event.duration_min = 15.0;
    event.distance_m = 1.0;
    event.onset_days = 0.0;  // level high in the default table
    event.infected = i == 0;
    bag.events.push_back(event);
  }
  bag.visible = {0, 1, 1, 1};  // the positive cause is hidden

  const std::vector<ObservedExposure> observed = observe(bag, sim, lut);
  REQUIRE(observed.size() == 3);
  CHECK(bag.label == true);
  for (const ObservedExposure& obs : observed) {
    CHECK(obs.attenuation_db == doctest::Approx(50.400444778065487));
    CHECK(obs.level == Level::kHigh);
  }

  Bag empty_bag;
  empty_bag.events.push_back(bag.events[0]);
  empty_bag.visible = {0};
  CHECK(observe(empty_bag, sim, lut).empty());
}

TEST_CASE("observation clamps attenuations above the domain cap") {
  SimParams sim;
  const ContagiousnessLut lut = default_lut();
  ExposureEvent far_event;
  far_event.duration_min = 5.0;
  far_event.distance_m = 40.0;  // ~109 dB under the forward model
  far_event.onset_days = 0.0;
  std::size_t clamped = 0;
  const ObservedExposure obs = observe_event(far_event, sim, lut, &clamped);
  CHECK(obs.attenuation_db == 100.0);
  CHECK(clamped == 1);
}

TEST_CASE("default lut levels") {
  const ContagiousnessLut lut = default_lut();
  CHECK(lut.level_of(-6.0) == Level::kNone);
  CHECK(lut.level_of(-5.0) == Level::kStandard);
  CHECK(lut.level_of(-3.0) == Level::kStandard);
  CHECK(lut.level_of(-2.0) == Level::kHigh);
  CHECK(lut.level_of(0.0) == Level::kHigh);
  CHECK(lut.level_of(4.0) == Level::kHigh);
  CHECK(lut.level_of(5.0) == Level::kStandard);
  CHECK(lut.level_of(10.0) == Level::kStandard);
  CHECK(lut.level_of(11.0) == Level::kNone);
  // Rounding and clamping keep the mapping total.
  CHECK(lut.level_of(-0.4) == Level::kHigh);
  CHECK(lut.level_of(25.0) == Level::kNone);
}

TEST_CASE("split sizes, disjointness and determinism") {
  const std::vector<ExposureEvent> pool = toy_pool(5, 60);
  BagConfig config;
  Rng rng(12);
  std::vector<Bag> bags = assemble_bags(pool, 10, config, rng);

  Rng split_rng_a(20);
  auto [train_a, test_a] = split(bags, 0.8, split_rng_a);
  CHECK(train_a.size() == 8);
  CHECK(test_a.size() == 2);

  std::vector<std::uint64_t> seen;
  for (const Bag& bag : train_a) seen.push_back(bag.user_id);
  for (const Bag& bag : test_a) seen.push_back(bag.user_id);
  std::sort(seen.begin(), seen.end());
  CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());

  Rng split_rng_b(20);
  auto [train_b, test_b] = split(bags, 0.8, split_rng_b);
  REQUIRE(train_a.size() == train_b.size());
  for (std::size_t i = 0; i < train_a.size(); ++i) {
    CHECK(train_a[i].user_id == train_b[i].user_id);
  }
}

TEST_CASE("full pipeline is reproducible from the seed") {
  SimParams sim;
  BagConfig config;
  config.censor_prob = 0.3;
  const auto run = [&](std::uint64_t seed) {
    Rng rng(seed);
    const std::vector<ExposureEvent> pool = build_pool(desk_grid(), sim, rng);
    std::vector<Bag> bags = assemble_bags(pool, 200, config, rng);
    apply_censoring(bags, config, rng);
    return split(std::move(bags), config.train_frac, rng);
  };
  const auto [train_a, test_a] = run(77);
  const auto [train_b, test_b] = run(77);
  REQUIRE(train_a.size() == train_b.size());
  REQUIRE(test_a.size() == test_b.size());
  for (std::size_t i = 0; i < train_a.size(); ++i) {
    CHECK(train_a[i].user_id == train_b[i].user_id);
    REQUIRE(train_a[i].events.size() == train_b[i].events.size());
    for (std::size_t n = 0; n < train_a[i].events.size(); ++n) {
      CHECK(train_a[i].events[n].hazard == train_b[i].events[n].hazard);
      CHECK(train_a[i].visible[n] == train_b[i].visible[n]);
    }
  }
}

TEST_CASE("bag config validation") {
  BagConfig config;
  CHECK_NOTHROW(validate(config));
  BagConfig bad = config;
  bad.nb_p = 1.0;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = config;
  bad.max_bag_size = 0;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = config;
  bad.train_frac = 1.0;
  CHECK_THROWS_AS(validate(bad), ConfigError);
}

}  // namespace
}  // namespace risklab
