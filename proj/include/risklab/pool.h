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

#ifndef RISKLAB_POOL_H_
#define RISKLAB_POOL_H_

#include <vector>

#include "risklab/random.h"
#include "risklab/sim_core.h"
#include "risklab/sim_params.h"

namespace risklab {

// One ground-truth exposure between an index case and a user. `hazard` is
// cached from the generating SimParams; `infected` is the sampled
// event-level outcome.
struct ExposureEvent {
  double duration_min = 0;
  double distance_m = 0;
  double onset_days = 0;
  double hazard = 0;
  bool infected = false;
};

// Uniform 3-d grid of exposure features. Distances and durations are
// linearly spaced with the endpoints included; symptom onsets take every
// integer day in [onset_min_days, onset_max_days]. The full-size experiment
// grid (80 x 20 x 21 = 33600 events) is the default.
struct GridSpec {
  int n_dist = 80;
  double dist_min_m = 0.1;
  double dist_max_m = 5.0;
  int n_dur = 20;
  double dur_min_min = 5.0;
  double dur_max_min = 60.0;
  int onset_min_days = -10;
  int onset_max_days = 10;

  int n_onset() const { return onset_max_days - onset_min_days + 1; }
  long total_events() const {
    return static_cast<long>(n_dist) * n_dur * n_onset();
  }
};

// Desk-scale grid used by the fast experiment protocol: 20 x 10 x 21.
GridSpec desk_grid();

// Throws ConfigError naming the offending field.
void validate(const GridSpec& grid);

// Builds the Cartesian grid of exposure events and samples each event's
// infection label from Bernoulli(infection_probability(hazard)). Labels are
// sampled once here and reused by every bag containing the event.
std::vector<ExposureEvent> build_pool(const GridSpec& grid,
                                      const SimParams& params, Rng& rng);

}  // namespace risklab

#endif  // RISKLAB_POOL_H_
