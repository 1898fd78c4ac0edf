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
#include <vector>

#include "doctest.h"
#include "risklab/errors.h"
#include "risklab/metrics.h"
#include "risklab/random.h"

namespace risklab {
namespace {

TEST_CASE("auc on separable and inverted inputs") {
  const std::vector<int> labels = {0, 0, 1, 1};
  CHECK(roc_auc(std::vector<double>{1, 2, 3, 4}, labels) == doctest::Approx(1.0));
  CHECK(roc_auc(std::vector<double>{4, 3, 2, 1}, labels) == doctest::Approx(0.0));
  CHECK(roc_auc(std::vector<double>{1, 1}, std::vector<int>{0, 1}) ==
        doctest::Approx(0.5));
}

TEST_CASE("auc rejects single-class input") {
  CHECK_THROWS_AS(roc_auc(std::vector<double>{1, 2}, std::vector<int>{1, 1}),
                  MetricError);
  CHECK_THROWS_AS(roc_auc(std::vector<double>{1, 2}, std::vector<int>{0, 0}),
                  MetricError);
}

TEST_CASE("auc is invariant under strictly increasing transforms") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> scores;
    std::vector<int> labels;
    for (int i = 0; i < 40; ++i) {
      scores.push_back(rng.uniform01());
      labels.push_back(rng.bernoulli(0.5) ? 1 : 0);
    }
    labels[0] = 0;
    labels[1] = 1;
    std::vector<double> transformed;
    for (const double s : scores) transformed.push_back(std::exp(3.0 * s) - 2.0);
    CHECK(roc_auc(scores, labels) ==
          doctest::Approx(roc_auc(transformed, labels)).epsilon(1e-12));
  }
}

TEST_CASE("auc of negated tie-free scores is the complement") {
  Rng rng(9);
  std::vector<double> scores;
  std::vector<int> labels;
  for (int i = 0; i < 101; ++i) {
    scores.push_back(rng.uniform01());  // ties have probability zero
    labels.push_back(i % 3 == 0 ? 1 : 0);
  }
  std::vector<double> negated;
  for (const double s : scores) negated.push_back(-s);
  CHECK(roc_auc(scores, labels) + roc_auc(negated, labels) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mean and standard error") {
  const std::vector<double> single = {0.7};
  CHECK(mean_stderr(single).mean == doctest::Approx(0.7));
  CHECK(mean_stderr(single).stderr_ == 0.0);

  const std::vector<double> values = {0.7, 0.72, 0.68, 0.71, 0.69};
  const MeanStderr stats = mean_stderr(values);
  // Oracle: explicit sample stddev / sqrt(n).
  double mean = 0;
  for (const double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  const double expected =
      std::sqrt(ss / (values.size() - 1.0)) / std::sqrt(values.size());
  CHECK(stats.mean == doctest::Approx(mean).epsilon(1e-12));
  CHECK(stats.stderr_ == doctest::Approx(expected).epsilon(1e-12));

  const std::vector<double> constant = {0.5, 0.5, 0.5};
  CHECK(mean_stderr(constant).mean == doctest::Approx(0.5));
  CHECK(mean_stderr(constant).stderr_ == doctest::Approx(0.0));
}

}  // namespace
}  // namespace risklab
