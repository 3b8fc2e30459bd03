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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "hanabi_lab/stats.h"
#include "stat_oracles.h"

namespace hanabi_lab::stats {
namespace {

using testing::BruteFisher;
using testing::BruteMannWhitney;

double ExactPermutationMeans(const std::vector<double>& xs, const std::vector<double>& ys) {
  std::vector<double> pooled = xs;
  pooled.insert(pooled.end(), ys.begin(), ys.end());
  const int n = static_cast<int>(pooled.size());
  const int n1 = static_cast<int>(xs.size());
  const double sum = std::accumulate(pooled.begin(), pooled.end(), 0.0);
  auto diff = [&](double s1) { return std::abs(s1 / n1 - (sum - s1) / (n - n1)); };
  const double observed = diff(std::accumulate(xs.begin(), xs.end(), 0.0));
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + n1, true);
  std::uint64_t hits = 0, total = 0;
  do {
    double s1 = 0.0;
    for (int i = 0; i < n; ++i) {
      if (pick[i]) s1 += pooled[i];
    }
    ++total;
    if (diff(s1) >= observed - 1e-12) ++hits;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace

TEST_CASE("reported proportion statistics") {
  CHECK(FisherExactTwoSided(16, 4, 2, 18) < 1e-4);
  CHECK(FisherExactTwoSided(18, 2, 18, 2) == 1.0);
  CHECK(OddsRatio(16, 4, 2, 18) == 36.0);
  CHECK(CohensH(1.0, 0.667) == doctest::Approx(1.23).epsilon(0.005 / 1.23));

  const Interval w = WilsonCi(16, 20);
  CHECK(std::round(w.lo * 100) / 100 == doctest::Approx(0.58));
  CHECK(std::round(w.hi * 100) / 100 == doctest::Approx(0.92));
  CHECK(w.lo == doctest::Approx(0.584).epsilon(0.001));
  CHECK(w.hi == doctest::Approx(0.919).epsilon(0.001));
}

TEST_CASE("derived proportion statistics") {
  // Reference values from scipy.stats.fisher_exact.
  CHECK(FisherExactTwoSided(16, 4, 2, 18) == doctest::Approx(1.6643814099924754e-05).epsilon(1e-9));
  CHECK(FisherExactTwoSided(7, 3, 2, 8) == doctest::Approx(0.06977851869492736).epsilon(1e-9));

  const Interval z = WilsonCi(0, 20);
  CHECK(z.lo == 0.0);
  const Interval two = WilsonCi(2, 20);
  CHECK(two.lo == doctest::Approx(0.028).epsilon(0.02));
  CHECK(two.hi == doctest::Approx(0.301).epsilon(0.005));
  CHECK(WilsonCi(20, 20).hi == 1.0);

  CHECK(OddsRatio(18, 2, 15, 5) == doctest::Approx(3.0));
  CHECK(OddsRatio(5, 5, 5, 5) == 1.0);
  CHECK(std::isinf(OddsRatio(20, 0, 2, 18)));
  CHECK_THROWS_AS(OddsRatio(0, 3, 0, 4), std::invalid_argument);

  CHECK(CohensH(0.8, 0.1) == doctest::Approx(1.571).epsilon(1e-3));
  CHECK(CohensH(0.4, 0.4) == 0.0);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(FisherExactTwoSided(0, 0, 3, 4), std::invalid_argument);
  CHECK_THROWS_AS(FisherExactTwoSided(0, 3, 0, 4), std::invalid_argument);
  CHECK_THROWS_AS(FisherExactTwoSided(-1, 3, 2, 4), std::invalid_argument);
  CHECK_THROWS_AS(WilsonCi(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(WilsonCi(5, 4), std::invalid_argument);
  const std::vector<double> empty;
  const std::vector<double> one = {1.0};
  CHECK_THROWS_AS(MannWhitneyU(empty, one), std::invalid_argument);
  CHECK_THROWS_AS(PermutationTestMeans(one, empty), std::invalid_argument);
}

TEST_CASE("Fisher matches enumeration on every table with n <= 12") {
  int tables = 0;
  for (int n = 1; n <= 12; ++n) {
    for (int a = 0; a <= n; ++a) {
      for (int b = 0; a + b <= n; ++b) {
        for (int c = 0; a + b + c <= n; ++c) {
          const int d = n - a - b - c;
          if (a + b == 0 || c + d == 0 || a + c == 0 || b + d == 0) continue;
          ++tables;
          const double p = FisherExactTwoSided(a, b, c, d);
          CHECK(p == doctest::Approx(BruteFisher(a, b, c, d)).epsilon(1e-12));
          CHECK(p >= 0.0);
          CHECK(p <= 1.0);
          // Row swap, column swap, transpose.
          CHECK(FisherExactTwoSided(c, d, a, b) == doctest::Approx(p).epsilon(1e-12));
          CHECK(FisherExactTwoSided(b, a, d, c) == doctest::Approx(p).epsilon(1e-12));
          CHECK(FisherExactTwoSided(a, c, b, d) == doctest::Approx(p).epsilon(1e-12));
        }
      }
    }
  }
  CHECK(tables > 1000);
}

TEST_CASE("Mann-Whitney matches enumeration for samples up to 8") {
  std::mt19937_64 gen(7);
  for (int n = 2; n <= 12; ++n) {
    for (int n1 = 1; n1 < n; ++n1) {
      for (int rep = 0; rep < 4; ++rep) {
        // Small integer values force ties; rep 3 draws continuous values.
        std::uniform_int_distribution<int> small(0, 4);
        std::normal_distribution<double> normal(0.0, 1.0);
        std::vector<double> xs, ys;
        for (int i = 0; i < n; ++i) {
          const double v = rep < 3 ? small(gen) : normal(gen);
          (i < n1 ? xs : ys).push_back(v);
        }
        CAPTURE(n);
        CAPTURE(n1);
        const MannWhitneyResult r = MannWhitneyU(xs, ys);
        REQUIRE(r.exact == (n1 <= 8 && n - n1 <= 8));
        if (r.exact) CHECK(r.p == doctest::Approx(BruteMannWhitney(xs, ys)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("Mann-Whitney at the crossover size") {
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<int> score(0, 10);
  for (int rep = 0; rep < 3; ++rep) {
    std::vector<double> xs(8), ys(8);
    for (double& x : xs) x = score(gen);
    for (double& y : ys) y = score(gen) + 1;
    MannWhitneyResult r = MannWhitneyU(xs, ys);
    CHECK(r.exact);
    CHECK(r.p == doctest::Approx(BruteMannWhitney(xs, ys)).epsilon(1e-9));

    ys.push_back(score(gen) + 1);
    r = MannWhitneyU(xs, ys);
    CHECK_FALSE(r.exact);
    CHECK(std::abs(r.p - BruteMannWhitney(xs, ys)) < 0.03);
  }
}

TEST_CASE("Mann-Whitney normal approximation") {
  // Reference values from scipy.stats.mannwhitneyu(method="asymptotic").
  const std::vector<double> a = {-1.18, -1.15, 0.67, -2.29, -0.14, -2.26, 1.1, 0.2,
                                 1.36,  -0.5,  0.4,  -0.29, -0.74, 0.15,  -1.26};
  const std::vector<double> b = {0.25, 1.3, 0.66, 0.19, 2.79, 0.66, 0.01,
                                 0.76, 0.08, 0.21, 0.25, 2.63, 0.62, 0.78};
  MannWhitneyResult r = MannWhitneyU(a, b);
  CHECK_FALSE(r.exact);
  CHECK(r.u == 43.0);
  CHECK(r.p == doctest::Approx(0.007258594458504646).epsilon(1e-9));

  const std::vector<double> t = {3, 3, 3, 4, 4, 5, 5, 5, 6, 2, 2, 3, 4, 4, 1, 0, 5, 5, 3, 3};
  const std::vector<double> u = {4, 4, 5, 5, 6, 6, 3, 3, 4, 5, 5, 7, 2, 3, 4, 4, 6, 5, 5, 4};
  r = MannWhitneyU(t, u);
  CHECK_FALSE(r.exact);
  CHECK(r.p == doctest::Approx(0.042912987660241306).epsilon(1e-9));
}

TEST_CASE("score comparison with ten games per arm") {
  // Means 3.4 vs 4.5 with a spread of a few points, ten games each.
  const std::vector<double> xs = {0, 1, 2, 3, 3, 4, 5, 5, 6, 5};
  const std::vector<double> ys = {1, 2, 3, 4, 5, 5, 6, 6, 7, 6};
  const ScoreComparison s = CompareScores(xs, ys, 20000, 1);
  CHECK(s.mean_a == doctest::Approx(3.4));
  CHECK(s.mean_b == doctest::Approx(4.5));
  CHECK(s.mann_whitney.p > 0.08);
  CHECK(s.mann_whitney.p < 0.30);
  CHECK(s.permutation_p > 0.05);
  CHECK(s.permutation_p < 0.40);
}

TEST_CASE("permutation test") {
  const std::vector<double> same = {2, 4, 4, 5, 7};
  CHECK(PermutationTestMeans(same, same, 5000, 3) == 1.0);

  const std::vector<double> xs = {1, 3, 2, 5, 4};
  const std::vector<double> ys = {6, 4, 8, 7, 5};
  const double p1 = PermutationTestMeans(xs, ys, 100000, 9);
  CHECK(p1 == PermutationTestMeans(xs, ys, 100000, 9));
  CHECK(p1 > 0.0);
  CHECK(p1 <= 1.0);
  CHECK(p1 == doctest::Approx(ExactPermutationMeans(xs, ys)).epsilon(0.1));
  CHECK(std::abs(p1 - ExactPermutationMeans(xs, ys)) < 0.005);

  // Below the threading threshold the same shards run inline.
  const double small = PermutationTestMeans(xs, ys, 1000, 9);
  CHECK(small == PermutationTestMeans(xs, ys, 1000, 9));
  CHECK(small >= 1.0 / 1001.0);

  const std::vector<double> far_a = {0, 0, 0, 0, 0, 0, 0, 0};
  const std::vector<double> far_b = {9, 9, 9, 9, 9, 9, 9, 9};
  CHECK(PermutationTestMeans(far_a, far_b, 999, 0) == doctest::Approx(1.0 / 1000.0).epsilon(1.0));
}

TEST_CASE("Wilson interval properties") {
  for (int n = 1; n <= 60; ++n) {
    for (int s = 0; s <= n; ++s) {
      const Interval w = WilsonCi(s, n);
      const double rate = static_cast<double>(s) / n;
      CHECK(w.lo >= 0.0);
      CHECK(w.hi <= 1.0);
      CHECK(w.lo <= rate + 1e-12);
      CHECK(w.hi >= rate - 1e-12);
    }
  }
  for (double rate : {0.1, 0.25, 0.5, 0.8}) {
    double prev = 2.0;
    for (int n = 20; n <= 400; n += 20) {
      const Interval w = WilsonCi(static_cast<int>(std::lround(rate * n)), n);
      CHECK(w.hi - w.lo < prev);
      prev = w.hi - w.lo;
    }
  }
  CHECK(WilsonCi(8, 20, 0.99).hi - WilsonCi(8, 20, 0.99).lo > WilsonCi(8, 20).hi - WilsonCi(8, 20).lo);
}

TEST_CASE("Cohen's h is antisymmetric") {
  for (double p1 = 0.0; p1 <= 1.0; p1 += 0.05) {
    for (double p2 = 0.0; p2 <= 1.0; p2 += 0.05) {
      CHECK(CohensH(p1, p2) == doctest::Approx(-CohensH(p2, p1)));
    }
  }
}

TEST_CASE("proportion comparison") {
  const ComparisonResult r = CompareProportions(16, 20, 2, 20);
  CHECK(r.test_name == "fisher");
  CHECK(r.rate_a == 0.8);
  CHECK(r.rate_b == 0.1);
  CHECK(r.odds_ratio == 36.0);
  CHECK(r.p_value < 1e-4);
  CHECK(r.cohens_h == doctest::Approx(CohensH(0.8, 0.1)));
  CHECK(r.ci_a.lo <= r.rate_a);
  CHECK(r.ci_b.hi >= r.rate_b);

  const ComparisonResult all = CompareProportions(20, 20, 20, 20);
  CHECK(all.p_value == 1.0);
  CHECK(all.cohens_h == 0.0);
  CHECK(std::isnan(all.odds_ratio));
}

}  // namespace hanabi_lab::stats
