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

#ifndef RISKLAB_METRICS_H_
#define RISKLAB_METRICS_H_

#include <span>

namespace risklab {

// Area under the ROC curve via the rank (Mann-Whitney) statistic with
// midrank tie handling: P(score+ > score-) + 0.5 * P(tie).
// Throws MetricError unless both classes are present.
double roc_auc(std::span<const double> scores, std::span<const int> labels);

struct MeanStderr {
  double mean = 0;
  double stderr_ = 0;  // sample stddev / sqrt(n); 0 for n == 1
};

MeanStderr mean_stderr(std::span<const double> values);

}  // namespace risklab

#endif  // RISKLAB_METRICS_H_
