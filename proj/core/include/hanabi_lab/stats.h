// Copyright 2026 The Hanabi Lab Authors
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

// Proportion and location tests used to compare experimental conditions.

#ifndef HANABI_LAB_STATS_H_
#define HANABI_LAB_STATS_H_

#include <cstdint>
#include <span>
#include <string>

namespace hanabi_lab::stats {

// Two-sided Fisher exact test on [[a, b], [c, d]]: the total probability of
// tables with the observed margins that are no more likely than the observed
// one (relative tolerance 1e-7). Throws std::invalid_argument on a zero
// margin or negative count.
double FisherExactTwoSided(int a, int b, int c, int d);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Wilson score interval, clamped to [0, 1]. Throws on n == 0.
Interval WilsonCi(int successes, int n, double confidence = 0.95);

// 2 asin(sqrt(p1)) - 2 asin(sqrt(p2)).
double CohensH(double p1, double p2);

// (a d) / (b c); +infinity when b c == 0 < a d. Throws on 0/0.
double OddsRatio(int a, int b, int c, int d);

struct MannWhitneyResult {
  double u = 0.0;  // for xs
  double p = 1.0;  // two-sided
  bool exact = false;
};

// Exact permutation distribution of the (tie-aware) rank sum when both
// samples have at most kMannWhitneyExactMax values; otherwise the normal
// approximation with tie and continuity correction. Throws on an empty sample.
inline constexpr int kMannWhitneyExactMax = 8;
MannWhitneyResult MannWhitneyU(std::span<const double> xs, std::span<const double> ys);

// Fraction of label shuffles with |mean difference| >= observed, with add-one
// smoothing: (hits + 1) / (iterations + 1). Work is split into a fixed number
// of shards with their own sub-seeds, so the result does not depend on how
// many threads run them.
inline constexpr int kPermutationShards = 8;
double PermutationTestMeans(std::span<const double> xs, std::span<const double> ys,
                            int iterations = 100000, std::uint64_t seed = 0);

struct ComparisonResult {
  std::string test_name = "fisher";
  int n_a = 0;
  int n_b = 0;
  int successes_a = 0;
  int successes_b = 0;
  double rate_a = 0.0;
  double rate_b = 0.0;
  double p_value = 1.0;
  double odds_ratio = 0.0;  // NaN for a 0/0 table
  double cohens_h = 0.0;
  Interval ci_a;
  Interval ci_b;
};

ComparisonResult CompareProportions(int successes_a, int n_a, int successes_b, int n_b);

struct ScoreComparison {
  int n_a = 0;
  int n_b = 0;
  double mean_a = 0.0;
  double mean_b = 0.0;
  MannWhitneyResult mann_whitney;
  double permutation_p = 1.0;
};

ScoreComparison CompareScores(std::span<const double> xs, std::span<const double> ys,
                              int iterations = 100000, std::uint64_t seed = 0);

}  // namespace hanabi_lab::stats

#endif  // HANABI_LAB_STATS_H_
