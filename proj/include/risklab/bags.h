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

#ifndef RISKLAB_BAGS_H_
#define RISKLAB_BAGS_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "risklab/contagiousness.h"
#include "risklab/pool.h"
#include "risklab/random.h"

namespace risklab {

// How many infection-positive events a positive bag receives.
enum class PositiveScenario {
  kExactlyOne,
  kUniformOneToThree,
};

struct BagConfig {
  int max_bag_size = 4;
  // Truncated negative binomial over bag sizes {1, ..., max_bag_size}.
  double nb_p = 0.5;
  double nb_r = 2.0;
  PositiveScenario positive_scenario = PositiveScenario::kUniformOneToThree;
  double censor_prob = 0.0;
  double train_frac = 0.8;
  // Fraction of bags constructed as positive. Not part of the published
  // protocol; balanced classes maximize AUC estimation efficiency.
  double positive_frac = 0.5;
};

void validate(const BagConfig& config);

// One user's set of exposure events. `visible` is a parallel mask: entry n
// tells whether event n is visible to the user's app. The bag label is set
// at construction and never changed by censoring.
struct Bag {
  std::uint64_t user_id = 0;
  std::vector<ExposureEvent> events;
  std::vector<std::uint8_t> visible;
  bool label = false;
};

// App-visible view of a single exposure.
struct ObservedExposure {
  double duration_min = 0;
  double attenuation_db = 0;
  Level level = Level::kNone;
};

// App-visible view of a bag: only the visible exposures, plus the outcome.
struct ObservedBag {
  std::uint64_t user_id = 0;
  std::vector<ObservedExposure> exposures;
  bool label = false;
};

// Sampler for the truncated negative binomial bag-size distribution.
// pmf(k) = Gamma(k+r)/(k! Gamma(r)) (1-p)^r p^k restricted to {1..max_size}
// and renormalized; draws by inverse CDF.
class TruncatedNegBinomial {
 public:
  TruncatedNegBinomial(double p, double r, int max_size);

  int sample(Rng& rng) const;
  double pmf(int k) const;
  int max_size() const { return static_cast<int>(cdf_.size()); }

 private:
  std::vector<double> cdf_;  // cdf_[k-1] = P(size <= k)
};

// Draws a bag size in [1, config.max_bag_size].
int sample_bag_size(const BagConfig& config, Rng& rng);

// Assembles n_users bags from the pool. Sizes come from sample_bag_size; a
// bag is positive with probability positive_frac. Positive bags receive
// positive events per the configured scenario (capped at the bag size) with
// remaining slots filled by negatives; negative bags hold only negatives.
// Events are drawn without replacement within a bag but may be shared across
// bags. All visibility flags start at 1.
// Throws ConfigError if the pool lacks the required positives or negatives.
std::vector<Bag> assemble_bags(std::span<const ExposureEvent> pool,
                               int n_users, const BagConfig& config, Rng& rng);

// Hides each infection-positive event independently with probability
// config.censor_prob. Negative events stay visible; bag labels are
// untouched (censoring hides causes, not outcomes).
void apply_censoring(std::vector<Bag>& bags, const BagConfig& config, Rng& rng);

// Observed features of one ground-truth event. Attenuations above 100 dB are
// clamped to 100 (the model's domain boundary); `clamp_count`, when given,
// is incremented for each clamp.
ObservedExposure observe_event(const ExposureEvent& event,
                               const SimParams& params,
                               const ContagiousnessLut& lut,
                               std::size_t* clamp_count = nullptr);

// App-visible exposures of a bag: visible events only, with distance mapped
// to attenuation and onset quantized to a contagiousness level.
std::vector<ObservedExposure> observe(const Bag& bag, const SimParams& params,
                                      const ContagiousnessLut& lut,
                                      std::size_t* clamp_count = nullptr);

ObservedBag observe_bag(const Bag& bag, const SimParams& params,
                        const ContagiousnessLut& lut,
                        std::size_t* clamp_count = nullptr);

std::vector<ObservedBag> observe_bags(std::span<const Bag> bags,
                                      const SimParams& params,
                                      const ContagiousnessLut& lut,
                                      std::size_t* clamp_count = nullptr);

// Random partition into (train, test) with floor(size * train_frac) train
// bags. No bag lands in both splits.
std::pair<std::vector<Bag>, std::vector<Bag>> split(std::vector<Bag> bags,
                                                    double train_frac,
                                                    Rng& rng);

}  // namespace risklab

#endif  // RISKLAB_BAGS_H_
