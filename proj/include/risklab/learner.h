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

#ifndef RISKLAB_LEARNER_H_
#define RISKLAB_LEARNER_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "risklab/bags.h"
#include "risklab/random.h"
#include "risklab/risk_model.h"
#include "risklab/risk_params.h"

namespace risklab {

// Floor applied to the monotonicity deltas and to mu by project().
inline constexpr double kMinDelta = 1e-6;
inline constexpr double kMinMu = 1e-9;
// Minimum separation between adjacent thresholds after projection, in dB.
inline constexpr double kThresholdGap = 0.5;
// Probability clamp inside the cross-entropy; keeps fully censored positive
// bags (estimated probability 0) from producing infinite loss.
inline constexpr double kProbClamp = 1e-12;
// Cap on the L2 norm of a batch gradient. A censored-positive bag whose
// visible risk sum is nearly zero contributes a gradient that scales like
// 1/R; the cap keeps such spikes from derailing the trajectory.
inline constexpr double kGradClipNorm = 25.0;

// Unconstrained-ish parameterization the optimizer walks over. Attenuation
// weights are stored in risk-ascending order (base_weight belongs to the
// largest-attenuation bucket) as a base plus positive steps, which makes the
// reconstructed weights monotone by construction once the steps are
// projected positive. Contagiousness weights use the same trick.
struct LearnableParams {
  std::array<double, 3> thresholds = {50.0, 60.0, 70.0};
  double base_weight = 0.1;                      // lowest-risk bucket weight
  std::array<double, 3> weight_steps = {0.1, 0.1, 0.1};
  double con_base = 0.5;                         // weight of level standard
  double con_step = 0.5;                         // high = con_base + con_step
  double mu = 0.01;
};

// Hard-threshold reconstruction; the result satisfies every RiskParams
// invariant when the input is feasible (post-projection).
RiskParams to_risk_params(const LearnableParams& params);

// Flat view of the 10 scalars on the normalized optimization scale:
// thresholds divided by 100, mu in log space (the cross-entropy gradient in
// natural mu behaves like -1/mu near zero, which no fixed step size
// survives), everything else raw. Order:
// [t1, t2, t3, base_weight, step2, step3, step4, con_base, con_step, ln mu].
inline constexpr int kParamCount = 10;
using ParamVector = std::array<double, kParamCount>;
ParamVector pack(const LearnableParams& params);
LearnableParams unpack(const ParamVector& vec);

// Differentiable relaxation of bucket_durations: mass for bucket b is
// sigmoid_t(a - edge_b) * sigmoid_t(edge_{b+1} - a) with edges
// (0, t1, t2, t3, 100). An infinite temperature reproduces the hard
// left-open/right-closed bucketing exactly.
std::array<double, 4> soft_bucket_durations(
    std::span<const MicroExposure> micro,
    const std::array<double, 3>& thresholds, double temperature);

// Binary cross entropy of one bag against its label, with the estimated
// probability computed through soft binning and clamped to
// [kProbClamp, 1 - kProbClamp].
double bag_loss(const ObservedBag& bag, const LearnableParams& params,
                double temperature);

// Mean loss over a batch.
double batch_loss(std::span<const ObservedBag> batch,
                  const LearnableParams& params, double temperature);

// Analytic gradient of the mean batch loss with respect to the normalized
// parameter vector. Clamped probabilities contribute zero gradient.
ParamVector batch_gradient(std::span<const ObservedBag> batch,
                           const LearnableParams& params, double temperature);

// Projection onto the feasible set: steps and mu floored, weights
// non-negative, thresholds sorted then separated by kThresholdGap inside
// (0, 100). Idempotent on feasible parameters.
LearnableParams project(LearnableParams params);

enum class TemperatureRamp { kGeometric, kLinear };

struct TrainConfig {
  int iterations = 1000;
  int batch_size = 100;
  double learning_rate = 0.05;
  double temperature_start = 0.2;
  double temperature_end = 20.0;
  TemperatureRamp ramp = TemperatureRamp::kGeometric;
  std::uint64_t rng_seed = 0;
};

void validate(const TrainConfig& config);

// Annealing schedule over the iteration budget.
double temperature_at(const TrainConfig& config, int iteration);

// Threshold starting point: 25/50/75 percentiles of the visible attenuations
// so no bucket starts empty. Weights and mu start at small fixed values.
LearnableParams initial_params(std::span<const ObservedBag> bags);

struct TraceRow {
  int iteration = 0;
  double temperature = 0;
  double batch_loss = 0;
};

struct TrainResult {
  RiskParams params;       // hard-threshold reconstruction of `raw`
  LearnableParams raw;
  std::vector<TraceRow> trace;
};

// Projected minibatch SGD with per-iteration temperature annealing.
// Deterministic for a fixed config (bags are sampled with replacement from
// a private stream seeded by config.rng_seed).
TrainResult train(std::span<const ObservedBag> bags, const TrainConfig& config);

}  // namespace risklab

#endif  // RISKLAB_LEARNER_H_
