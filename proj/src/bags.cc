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

#include "risklab/bags.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "risklab/errors.h"

namespace risklab {

namespace {

constexpr double kMaxAttenuationDb = 100.0;

// Draws `count` distinct indices in [0, size) by rejection. Fine for the
// small counts used here (bag sizes are tiny relative to the pool).
std::vector<std::size_t> sample_distinct(std::size_t size, std::size_t count,
                                         Rng& rng) {
  std::vector<std::size_t> picked;
  picked.reserve(count);
  while (picked.size() < count) {
    const std::size_t candidate =
        static_cast<std::size_t>(rng.uniform_below(size));
    if (std::find(picked.begin(), picked.end(), candidate) == picked.end()) {
      picked.push_back(candidate);
    }
  }
  return picked;
}

}  // namespace

void validate(const BagConfig& config) {
  if (config.max_bag_size < 1) {
    throw ConfigError("bags.max_bag_size must be >= 1");
  }
  if (!(config.nb_p > 0 && config.nb_p < 1)) {
    throw ConfigError("bags.nb_p must be in (0, 1)");
  }
  if (!(config.nb_r > 0)) throw ConfigError("bags.nb_r must be > 0");
  if (!(config.censor_prob >= 0 && config.censor_prob <= 1)) {
    throw ConfigError("bags.censor_prob must be in [0, 1]");
  }
  if (!(config.train_frac > 0 && config.train_frac < 1)) {
    throw ConfigError("bags.train_frac must be in (0, 1)");
  }
  if (!(config.positive_frac >= 0 && config.positive_frac <= 1)) {
    throw ConfigError("bags.positive_frac must be in [0, 1]");
  }
}

TruncatedNegBinomial::TruncatedNegBinomial(double p, double r, int max_size) {
  if (!(p > 0 && p < 1) || !(r > 0) || max_size < 1) {
    throw ConfigError("TruncatedNegBinomial: need p in (0,1), r > 0, max >= 1");
  }
  // Untruncated log-pmf via lgamma, then renormalize over {1..max_size}.
  std::vector<double> pmf(static_cast<std::size_t>(max_size));
  for (int k = 1; k <= max_size; ++k) {
    const double log_pmf = std::lgamma(k + r) - std::lgamma(k + 1.0) -
                           std::lgamma(r) + r * std::log1p(-p) +
                           k * std::log(p);
    pmf[static_cast<std::size_t>(k - 1)] = std::exp(log_pmf);
  }
  const double total = std::accumulate(pmf.begin(), pmf.end(), 0.0);
  cdf_.resize(pmf.size());
  double running = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    running += pmf[i] / total;
    cdf_[i] = running;
  }
  cdf_.back() = 1.0;
}

int TruncatedNegBinomial::sample(Rng& rng) const {
  const double u = rng.uniform01();
  const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
  return static_cast<int>(it - cdf_.begin()) + 1;
}

double TruncatedNegBinomial::pmf(int k) const {
  if (k < 1 || k > max_size()) return 0.0;
  const std::size_t i = static_cast<std::size_t>(k - 1);
  return i == 0 ? cdf_[0] : cdf_[i] - cdf_[i - 1];
}

int sample_bag_size(const BagConfig& config, Rng& rng) {
  return TruncatedNegBinomial(config.nb_p, config.nb_r, config.max_bag_size)
      .sample(rng);
}

std::vector<Bag> assemble_bags(std::span<const ExposureEvent> pool,
                               int n_users, const BagConfig& config, Rng& rng) {
  validate(config);
  if (n_users < 1) throw ConfigError("bags.n_users must be >= 1");

  std::vector<std::size_t> positives;
  std::vector<std::size_t> negatives;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    (pool[i].infected ? positives : negatives).push_back(i);
  }

  const int scenario_max =
      config.positive_scenario == PositiveScenario::kExactlyOne ? 1 : 3;
  const std::size_t required_positives = static_cast<std::size_t>(
      std::min(scenario_max, config.max_bag_size));
  if (positives.size() < required_positives) {
    throw ConfigError(
        "assemble_bags: pool has " + std::to_string(positives.size()) +
        " positive events but the positive scenario requires at least " +
        std::to_string(required_positives));
  }
  if (negatives.size() < static_cast<std::size_t>(config.max_bag_size)) {
    throw ConfigError(
        "assemble_bags: pool has " + std::to_string(negatives.size()) +
        " negative events but bags need up to " +
        std::to_string(config.max_bag_size));
  }

  const TruncatedNegBinomial size_dist(config.nb_p, config.nb_r,
                                       config.max_bag_size);

  std::vector<Bag> bags;
  bags.reserve(static_cast<std::size_t>(n_users));
  for (int user = 0; user < n_users; ++user) {
    Bag bag;
    bag.user_id = static_cast<std::uint64_t>(user);
    const int size = size_dist.sample(rng);
    const bool positive = rng.bernoulli(config.positive_frac);

    int n_pos = 0;
    if (positive) {
      n_pos = config.positive_scenario == PositiveScenario::kExactlyOne
                  ? 1
                  : rng.uniform_int(1, 3);
      n_pos = std::min(n_pos, size);
    }

    bag.events.reserve(static_cast<std::size_t>(size));
    for (const std::size_t idx : sample_distinct(
             positives.size(), static_cast<std::size_t>(n_pos), rng)) {
      bag.events.push_back(pool[positives[idx]]);
    }
    for (const std::size_t idx : sample_distinct(
             negatives.size(), static_cast<std::size_t>(size - n_pos), rng)) {
      bag.events.push_back(pool[negatives[idx]]);
    }
    bag.visible.assign(bag.events.size(), 1);
    bag.label = positive;
    bags.push_back(std::move(bag));
  }
  return bags;
}

void apply_censoring(std::vector<Bag>& bags, const BagConfig& config,
                     Rng& rng) {
  for (Bag& bag : bags) {
    for (std::size_t n = 0; n < bag.events.size(); ++n) {
      if (bag.events[n].infected) {
        bag.visible[n] = rng.bernoulli(config.censor_prob) ? 0 : 1;
      }
    }
  }
}

ObservedExposure observe_event(const ExposureEvent& event,
                               const SimParams& params,
                               const ContagiousnessLut& lut,
                               std::size_t* clamp_count) {
  ObservedExposure obs;
  obs.duration_min = event.duration_min;
  obs.attenuation_db = distance_to_attenuation(event.distance_m, params);
  if (obs.attenuation_db > kMaxAttenuationDb) {
    obs.attenuation_db = kMaxAttenuationDb;
    if (clamp_count != nullptr) ++*clamp_count;
  }
  obs.level = lut.level_of(event.onset_days);
  return obs;
}

std::vector<ObservedExposure> observe(const Bag& bag, const SimParams& params,
                                      const ContagiousnessLut& lut,
                                      std::size_t* clamp_count) {
  std::vector<ObservedExposure> observed;
  for (std::size_t n = 0; n < bag.events.size(); ++n) {
    if (bag.visible[n]) {
      observed.push_back(observe_event(bag.events[n], params, lut, clamp_count));
    }
  }
  return observed;
}

ObservedBag observe_bag(const Bag& bag, const SimParams& params,
                        const ContagiousnessLut& lut,
                        std::size_t* clamp_count) {
  return ObservedBag{
      .user_id = bag.user_id,
      .exposures = observe(bag, params, lut, clamp_count),
      .label = bag.label,
  };
}

std::vector<ObservedBag> observe_bags(std::span<const Bag> bags,
                                      const SimParams& params,
                                      const ContagiousnessLut& lut,
                                      std::size_t* clamp_count) {
  std::vector<ObservedBag> observed;
  observed.reserve(bags.size());
  for (const Bag& bag : bags) {
    observed.push_back(observe_bag(bag, params, lut, clamp_count));
  }
  return observed;
}

std::pair<std::vector<Bag>, std::vector<Bag>> split(std::vector<Bag> bags,
                                                    double train_frac,
                                                    Rng& rng) {
  if (!(train_frac > 0 && train_frac < 1)) {
    throw ConfigError("split: train_frac must be in (0, 1)");
  }
  std::vector<std::size_t> order(bags.size());
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);

  const std::size_t n_train = static_cast<std::size_t>(
      std::floor(static_cast<double>(bags.size()) * train_frac));
  std::pair<std::vector<Bag>, std::vector<Bag>> result;
  result.first.reserve(n_train);
  result.second.reserve(bags.size() - n_train);
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto& dest = i < n_train ? result.first : result.second;
    dest.push_back(std::move(bags[order[i]]));
  }
  return result;
}

}  // namespace risklab
