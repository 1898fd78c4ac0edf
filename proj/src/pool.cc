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

#include "risklab/pool.h"

#include <vector>

#include "risklab/errors.h"

namespace risklab {

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> points;
  points.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    points.push_back(lo);
    return points;
  }
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) {
    points.push_back(i + 1 == n ? hi : lo + step * i);
  }
  return points;
}

}  // namespace

GridSpec desk_grid() {
  GridSpec grid;
  grid.n_dist = 20;
  grid.n_dur = 10;
  return grid;
}

void validate(const GridSpec& grid) {
  if (grid.n_dist < 1) throw ConfigError("grid.n_dist must be >= 1");
  if (grid.n_dur < 1) throw ConfigError("grid.n_dur must be >= 1");
  if (!(grid.dist_min_m > 0)) throw ConfigError("grid.d_range must be > 0");
  if (grid.n_dist > 1 && !(grid.dist_min_m < grid.dist_max_m)) {
    throw ConfigError("grid.d_range must be non-degenerate");
  }
  if (!(grid.dur_min_min >= 0)) throw ConfigError("grid.dur_range must be >= 0");
  if (grid.n_dur > 1 && !(grid.dur_min_min < grid.dur_max_min)) {
    throw ConfigError("grid.dur_range must be non-degenerate");
  }
  if (grid.onset_min_days > grid.onset_max_days) {
    throw ConfigError("grid.onset_range must have min <= max");
  }
}

std::vector<ExposureEvent> build_pool(const GridSpec& grid,
                                      const SimParams& params, Rng& rng) {
  validate(grid);
  validate(params);

  const std::vector<double> distances =
      linspace(grid.dist_min_m, grid.dist_max_m, grid.n_dist);
  const std::vector<double> durations =
      linspace(grid.dur_min_min, grid.dur_max_min, grid.n_dur);

  std::vector<ExposureEvent> pool;
  pool.reserve(static_cast<std::size_t>(grid.total_events()));
  for (const double d : distances) {
    for (const double tau : durations) {
      for (int onset = grid.onset_min_days; onset <= grid.onset_max_days;
           ++onset) {
        ExposureEvent event;
        event.duration_min = tau;
        event.distance_m = d;
        event.onset_days = onset;
        event.hazard = hazard_score(tau, d, event.onset_days, params);
        event.infected =
            rng.bernoulli(infection_probability(event.hazard, params));
        pool.push_back(event);
      }
    }
  }
  return pool;
}

}  // namespace risklab
