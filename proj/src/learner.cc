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

#include "risklab/learner.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "risklab/errors.h"

namespace risklab {

namespace {

constexpr double kLowerEdge = 0.0;
constexpr double kUpperEdge = 100.0;

double sigmoid(double t, double x) {
  const double tx = t * x;
  if (tx >= 0) {
    return 1.0 / (1.0 + std::exp(-tx));
  }
  const double e = std::exp(tx);
  return e / (1.0 + e);
}

// Natural-units gradient accumulator, same layout as ParamVector but with
// thresholds in dB.
struct GradAccum {
  std::array<double, kParamCount> g = {};
};

// Forward pass of one bag with optional gradient accumulation. Returns the
// cross-entropy loss; when `accum` is non-null, adds d loss / d params
// (natural units) into it.
double bag_eval(const ObservedBag& bag, const LearnableParams& p,
                double temperature, GradAccum* accum) {
  const std::array<double, 4> w = [&] {
    const double w4 = p.base_weight;
    const double w3 = w4 + p.weight_steps[0];
    const double w2 = w3 + p.weight_steps[1];
    const double w1 = w2 + p.weight_steps[2];
    return std::array<double, 4>{w1, w2, w3, w4};
  }();
  const std::array<double, 5> edges = {kLowerEdge, p.thresholds[0],
                                       p.thresholds[1], p.thresholds[2],
                                       kUpperEdge};

  double risk_sum = 0.0;  // R
  // dR/d(bucket weight), dR/d(threshold), dR/d(con_base), dR/d(con_step)
  std::array<double, 4> d_risk_d_w = {};
  std::array<double, 3> d_risk_d_theta = {};
  double d_risk_d_con_base = 0.0;
  double d_risk_d_con_step = 0.0;

  for (const ObservedExposure& obs : bag.exposures) {
    const double level_w = obs.level == Level::kNone ? 0.0
                           : obs.level == Level::kStandard
                               ? p.con_base
                               : p.con_base + p.con_step;
    const MicroExposure micro{.duration_min = obs.duration_min,
                              .attenuation_db = obs.attenuation_db};
    const std::array<double, 4> mass = soft_bucket_durations(
        std::span<const MicroExposure>(&micro, 1), p.thresholds, temperature);

    double weighted_minutes = 0.0;
    for (std::size_t b = 0; b < 4; ++b) weighted_minutes += mass[b] * w[b];
    risk_sum += weighted_minutes * level_w;

    if (accum == nullptr) continue;

    for (std::size_t b = 0; b < 4; ++b) d_risk_d_w[b] += level_w * mass[b];
    if (obs.level != Level::kNone) {
      d_risk_d_con_base += weighted_minutes;
      if (obs.level == Level::kHigh) d_risk_d_con_step += weighted_minutes;
    }
    if (level_w != 0.0 && std::isfinite(temperature)) {
      const double a = obs.attenuation_db;
      const double tau = obs.duration_min;
      // Threshold m is the upper edge of bucket m and lower edge of m+1.
      for (std::size_t m = 0; m < 3; ++m) {
        const double lower_m = sigmoid(temperature, a - edges[m]);
        const double upper_m = sigmoid(temperature, edges[m + 1] - a);
        const double lower_next = sigmoid(temperature, a - edges[m + 1]);
        const double upper_next = sigmoid(temperature, edges[m + 2] - a);
        const double d_mass_m =
            tau * lower_m * temperature * upper_m * (1.0 - upper_m);
        const double d_mass_next =
            -tau * temperature * lower_next * (1.0 - lower_next) * upper_next;
        d_risk_d_theta[m] +=
            level_w * (w[m] * d_mass_m + w[m + 1] * d_mass_next);
      }
    }
  }

  const double q_raw = -std::expm1(-p.mu * risk_sum);
  const double q = std::clamp(q_raw, kProbClamp, 1.0 - kProbClamp);
  const double loss =
      bag.label ? -std::log(q) : -std::log1p(-q);

  if (accum != nullptr) {
    // The clamp is flat: clamped probabilities get no gradient.
    const bool clamped = q_raw < kProbClamp || q_raw > 1.0 - kProbClamp;
    if (!clamped) {
      const double d_loss_d_q = bag.label ? -1.0 / q : 1.0 / (1.0 - q);
      const double exp_term = std::exp(-p.mu * risk_sum);
      const double d_loss_d_risk = d_loss_d_q * p.mu * exp_term;
      const double d_loss_d_mu = d_loss_d_q * risk_sum * exp_term;

      for (std::size_t m = 0; m < 3; ++m) {
        accum->g[m] += d_loss_d_risk * d_risk_d_theta[m];
      }
      // Attenuation-order weight gradients fold back onto the base/steps:
      // base feeds every bucket; step j feeds buckets of higher risk.
      const double gw1 = d_loss_d_risk * d_risk_d_w[0];
      const double gw2 = d_loss_d_risk * d_risk_d_w[1];
      const double gw3 = d_loss_d_risk * d_risk_d_w[2];
      const double gw4 = d_loss_d_risk * d_risk_d_w[3];
      accum->g[3] += gw1 + gw2 + gw3 + gw4;  // base_weight
      accum->g[4] += gw1 + gw2 + gw3;        // step2 (buckets 3 and riskier)
      accum->g[5] += gw1 + gw2;              // step3
      accum->g[6] += gw1;                    // step4
      accum->g[7] += d_loss_d_risk * d_risk_d_con_base;
      accum->g[8] += d_loss_d_risk * d_risk_d_con_step;
      accum->g[9] += d_loss_d_mu;
    }
  }
  return loss;
}

}  // namespace

RiskParams to_risk_params(const LearnableParams& p) {
  RiskParams out;
  out.ble_thresholds = p.thresholds;
  const double w4 = p.base_weight;
  const double w3 = w4 + p.weight_steps[0];
  const double w2 = w3 + p.weight_steps[1];
  const double w1 = w2 + p.weight_steps[2];
  out.ble_weights = {w1, w2, w3, w4};
  out.con_weights = {p.con_base, p.con_base + p.con_step};
  out.mu = p.mu;
  return out;
}

ParamVector pack(const LearnableParams& p) {
  return {p.thresholds[0] / 100.0,
          p.thresholds[1] / 100.0,
          p.thresholds[2] / 100.0,
          p.base_weight,
          p.weight_steps[0],
          p.weight_steps[1],
          p.weight_steps[2],
          p.con_base,
          p.con_step,
          std::log(p.mu)};
}

LearnableParams unpack(const ParamVector& v) {
  LearnableParams p;
  p.thresholds = {v[0] * 100.0, v[1] * 100.0, v[2] * 100.0};
  p.base_weight = v[3];
  p.weight_steps = {v[4], v[5], v[6]};
  p.con_base = v[7];
  p.con_step = v[8];
  p.mu = std::exp(v[9]);
  return p;
}

std::array<double, 4> soft_bucket_durations(
    std::span<const MicroExposure> micro,
    const std::array<double, 3>& thresholds, double temperature) {
  const std::array<double, 5> edges = {kLowerEdge, thresholds[0],
                                       thresholds[1], thresholds[2],
                                       kUpperEdge};
  std::array<double, 4> durations = {0, 0, 0, 0};
  const bool hard = std::isinf(temperature);
  for (const MicroExposure& m : micro) {
    for (std::size_t b = 0; b < 4; ++b) {
      double factor;
      if (hard) {
        // Infinite temperature means the exact left-open/right-closed rule.
        factor = (m.attenuation_db > edges[b] &&
                  m.attenuation_db <= edges[b + 1])
                     ? 1.0
                     : 0.0;
      } else {
        factor = sigmoid(temperature, m.attenuation_db - edges[b]) *
                 sigmoid(temperature, edges[b + 1] - m.attenuation_db);
      }
      durations[b] += m.duration_min * factor;
    }
  }
  return durations;
}

double bag_loss(const ObservedBag& bag, const LearnableParams& params,
                double temperature) {
  return bag_eval(bag, params, temperature, nullptr);
}

double batch_loss(std::span<const ObservedBag> batch,
                  const LearnableParams& params, double temperature) {
  double total = 0.0;
  for (const ObservedBag& bag : batch) {
    total += bag_eval(bag, params, temperature, nullptr);
  }
  return batch.empty() ? 0.0 : total / static_cast<double>(batch.size());
}

ParamVector batch_gradient(std::span<const ObservedBag> batch,
                           const LearnableParams& params, double temperature) {
  GradAccum accum;
  for (const ObservedBag& bag : batch) {
    bag_eval(bag, params, temperature, &accum);
  }
  ParamVector grad = {};
  if (batch.empty()) return grad;
  const double scale = 1.0 / static_cast<double>(batch.size());
  for (int i = 0; i < kParamCount; ++i) {
    grad[static_cast<std::size_t>(i)] =
        accum.g[static_cast<std::size_t>(i)] * scale;
  }
  // Chain rule onto the normalized coordinates: theta is stepped as
  // theta/100 and mu as ln(mu).
  for (std::size_t m = 0; m < 3; ++m) grad[m] *= 100.0;
  grad[9] *= params.mu;
  return grad;
}

LearnableParams project(LearnableParams p) {
  for (double& step : p.weight_steps) step = std::max(step, kMinDelta);
  p.base_weight = std::max(p.base_weight, 0.0);
  p.con_base = std::max(p.con_base, 0.0);
  p.con_step = std::max(p.con_step, kMinDelta);
  p.mu = std::max(p.mu, kMinMu);

  std::sort(p.thresholds.begin(), p.thresholds.end());
  const double g = kThresholdGap;
  p.thresholds[0] = std::clamp(p.thresholds[0], g, 100.0 - 3.0 * g);
  p.thresholds[1] =
      std::clamp(p.thresholds[1], p.thresholds[0] + g, 100.0 - 2.0 * g);
  p.thresholds[2] =
      std::clamp(p.thresholds[2], p.thresholds[1] + g, 100.0 - g);
  return p;
}

void validate(const TrainConfig& config) {
  // Zero iterations is allowed: the result is the projected initialization.
  if (config.iterations < 0) throw ConfigError("train.iterations must be >= 0");
  if (config.batch_size < 1) throw ConfigError("train.batch_size must be >= 1");
  if (!(config.learning_rate >= 0)) {
    throw ConfigError("train.learning_rate must be >= 0");
  }
  if (!(config.temperature_start > 0)) {
    throw ConfigError("train.temperature_start must be > 0");
  }
  if (!(config.temperature_end >= config.temperature_start)) {
    throw ConfigError("train.temperature_end must be >= temperature_start");
  }
}

double temperature_at(const TrainConfig& config, int iteration) {
  if (config.iterations <= 1) return config.temperature_start;
  const double frac = static_cast<double>(iteration) /
                      static_cast<double>(config.iterations - 1);
  if (config.ramp == TemperatureRamp::kLinear) {
    return config.temperature_start +
           frac * (config.temperature_end - config.temperature_start);
  }
  return config.temperature_start *
         std::pow(config.temperature_end / config.temperature_start, frac);
}

LearnableParams initial_params(std::span<const ObservedBag> bags) {
  std::vector<double> attenuations;
  for (const ObservedBag& bag : bags) {
    for (const ObservedExposure& obs : bag.exposures) {
      attenuations.push_back(obs.attenuation_db);
    }
  }
  LearnableParams p;
  if (!attenuations.empty()) {
    std::sort(attenuations.begin(), attenuations.end());
    const auto percentile = [&](double q) {
      const double pos = q * static_cast<double>(attenuations.size() - 1);
      return attenuations[static_cast<std::size_t>(std::lround(pos))];
    };
    p.thresholds = {percentile(0.25), percentile(0.50), percentile(0.75)};
  }
  return p;
}

TrainResult train(std::span<const ObservedBag> bags,
                  const TrainConfig& config) {
  if (bags.empty()) throw ConfigError("train: training set is empty");
  validate(config);

  Rng rng(config.rng_seed);
  LearnableParams params = project(initial_params(bags));

  std::vector<ObservedBag> batch(static_cast<std::size_t>(config.batch_size));
  TrainResult result;
  result.trace.reserve(static_cast<std::size_t>(config.iterations));

  for (int iter = 0; iter < config.iterations; ++iter) {
    const double temperature = temperature_at(config, iter);
    for (auto& slot : batch) {
      slot = bags[static_cast<std::size_t>(rng.uniform_below(bags.size()))];
    }
    const double loss = batch_loss(batch, params, temperature);
    ParamVector grad = batch_gradient(batch, params, temperature);

    double norm_sq = 0.0;
    for (const double g : grad) norm_sq += g * g;
    if (norm_sq > kGradClipNorm * kGradClipNorm) {
      const double shrink = kGradClipNorm / std::sqrt(norm_sq);
      for (double& g : grad) g *= shrink;
    }

    ParamVector v = pack(params);
    bool moved = false;
    for (std::size_t i = 0; i < kParamCount; ++i) {
      const double delta = config.learning_rate * grad[i];
      if (delta != 0.0) moved = true;
      v[i] -= delta;
    }
    // Skipping the no-op rewrite keeps zero-rate runs bit-identical to the
    // initialization (pack/unpack round-trips mu through exp(log(mu))).
    if (moved) params = project(unpack(v));
    result.trace.push_back(TraceRow{iter, temperature, loss});
  }

  result.raw = params;
  result.params = to_risk_params(params);
  return result;
}

}  // namespace risklab
