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

#include "hanabi_lab/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "hanabi_lab/rng.h"

namespace hanabi_lab::stats {
namespace {

constexpr double kRelTol = 1e-7;

double LogChoose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double Mean(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Midranks of the pooled sample, doubled so that they are integers.
std::vector<int> DoubledMidranks(const std::vector<double>& pooled) {
  const int n = static_cast<int>(pooled.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return pooled[a] < pooled[b]; });
  std::vector<int> ranks(n);
  for (int i = 0; i < n;) {
    int j = i;
    while (j + 1 < n && pooled[idx[j + 1]] == pooled[idx[i]]) ++j;
    for (int k = i; k <= j; ++k) ranks[idx[k]] = (i + 1) + (j + 1);
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double FisherExactTwoSided(int a, int b, int c, int d) {
  if (a < 0 || b < 0 || c < 0 || d < 0) throw std::invalid_argument("negative count");
  const int r1 = a + b, r2 = c + d, c1 = a + c, c2 = b + d;
  if (r1 == 0 || r2 == 0 || c1 == 0 || c2 == 0) throw std::invalid_argument("zero margin");
  const int n = r1 + r2;
  auto log_p = [&](int x) { return LogChoose(r1, x) + LogChoose(r2, c1 - x) - LogChoose(n, c1); };
  const double observed = log_p(a);
  double in = 0.0, out = 0.0;
  for (int x = std::max(0, c1 - r2); x <= std::min(r1, c1); ++x) {
    const double lp = log_p(x);
    (lp <= observed + std::log1p(kRelTol) ? in : out) += std::exp(lp);
  }
  return in / (in + out);
}

Interval WilsonCi(int successes, int n, double confidence) {
  if (n <= 0) throw std::invalid_argument("n must be positive");
  if (successes < 0 || successes > n) throw std::invalid_argument("successes out of range");
  if (!(confidence > 0.0 && confidence < 1.0)) throw std::invalid_argument("confidence in (0,1)");
  const double z = boost::math::quantile(boost::math::normal(), 1.0 - (1.0 - confidence) / 2.0);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  const double lo = successes == 0 ? 0.0 : std::clamp(center - half, 0.0, 1.0);
  const double hi = successes == n ? 1.0 : std::clamp(center + half, 0.0, 1.0);
  return Interval{lo, hi};
}

double CohensH(double p1, double p2) {
  return 2.0 * std::asin(std::sqrt(p1)) - 2.0 * std::asin(std::sqrt(p2));
}

double OddsRatio(int a, int b, int c, int d) {
  if (a < 0 || b < 0 || c < 0 || d < 0) throw std::invalid_argument("negative count");
  const double num = static_cast<double>(a) * d;
  const double den = static_cast<double>(b) * c;
  if (den == 0.0) {
    if (num == 0.0) throw std::invalid_argument("odds ratio is 0/0");
    return std::numeric_limits<double>::infinity();
  }
  return num / den;
}

MannWhitneyResult MannWhitneyU(std::span<const double> xs, std::span<const double> ys) {
  if (xs.empty() || ys.empty()) throw std::invalid_argument("empty sample");
  const int n1 = static_cast<int>(xs.size());
  const int n2 = static_cast<int>(ys.size());
  const int n = n1 + n2;
  std::vector<double> pooled(xs.begin(), xs.end());
  pooled.insert(pooled.end(), ys.begin(), ys.end());
  const std::vector<int> r2 = DoubledMidranks(pooled);
  const int w2 = std::accumulate(r2.begin(), r2.begin() + n1, 0);

  MannWhitneyResult res;
  res.u = w2 / 2.0 - n1 * (n1 + 1) / 2.0;
  // On the doubled scale E[W] = n1 (n + 1), an integer.
  const int center2 = n1 * (n + 1);
  const int dev = std::abs(w2 - center2);

  if (n1 <= kMannWhitneyExactMax && n2 <= kMannWhitneyExactMax) {
    res.exact = true;
    const int max_sum = std::accumulate(r2.begin(), r2.end(), 0);
    // ways[k][s]: subsets of size k with doubled rank sum s.
    std::vector<std::vector<double>> ways(n1 + 1, std::vector<double>(max_sum + 1, 0.0));
    ways[0][0] = 1.0;
    for (int i = 0; i < n; ++i) {
      for (int k = std::min(i + 1, n1); k >= 1; --k) {
        for (int s = max_sum; s >= r2[i]; --s) ways[k][s] += ways[k - 1][s - r2[i]];
      }
    }
    double hits = 0.0, total = 0.0;
    for (int s = 0; s <= max_sum; ++s) {
      total += ways[n1][s];
      if (std::abs(s - center2) >= dev) hits += ways[n1][s];
    }
    res.p = std::min(1.0, hits / total);
    return res;
  }

  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  double ties = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    ties += t * t * t - t;
    i = j;
  }
  const double mu = n1 * n2 / 2.0;
  const double var = n1 * n2 / 12.0 * ((n + 1.0) - ties / (static_cast<double>(n) * (n - 1.0)));
  if (var <= 0.0) {
    res.p = 1.0;
    return res;
  }
  const double diff = std::max(0.0, std::abs(res.u - mu) - 0.5);
  const double z = diff / std::sqrt(var);
  res.p = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(boost::math::normal(), z)));
  return res;
}

double PermutationTestMeans(std::span<const double> xs, std::span<const double> ys, int iterations,
                            std::uint64_t seed) {
  if (xs.empty() || ys.empty()) throw std::invalid_argument("empty sample");
  if (iterations < 1) throw std::invalid_argument("iterations must be positive");
  const double observed = std::abs(Mean(xs) - Mean(ys));
  const double tol = 1e-12 * std::max(1.0, observed);
  std::vector<double> pooled(xs.begin(), xs.end());
  pooled.insert(pooled.end(), ys.begin(), ys.end());
  const double total = std::accumulate(pooled.begin(), pooled.end(), 0.0);
  const std::size_t n1 = xs.size();
  const double n2 = static_cast<double>(ys.size());

  std::vector<long long> hits(kPermutationShards, 0);
  auto shard = [&](int s) {
    const int count = iterations / kPermutationShards + (s < iterations % kPermutationShards ? 1 : 0);
    std::mt19937_64 gen(DeriveSeed(seed, static_cast<std::uint64_t>(s)));
    std::vector<double> v = pooled;
    long long h = 0;
    for (int it = 0; it < count; ++it) {
      // Partial Fisher-Yates: the first n1 positions form the relabeled xs.
      double sum = 0.0;
      for (std::size_t i = 0; i < n1; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(UniformBelow(gen, v.size() - i));
        std::swap(v[i], v[j]);
        sum += v[i];
      }
      const double diff = std::abs(sum / static_cast<double>(n1) - (total - sum) / n2);
      if (diff >= observed - tol) ++h;
    }
    hits[s] = h;
  };
  std::vector<std::thread> pool;
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (iterations >= 20000 && hw > 1) {
    for (int s = 0; s < kPermutationShards; ++s) pool.emplace_back(shard, s);
    for (auto& t : pool) t.join();
  } else {
    for (int s = 0; s < kPermutationShards; ++s) shard(s);
  }
  const long long h = std::accumulate(hits.begin(), hits.end(), 0LL);
  return (static_cast<double>(h) + 1.0) / (static_cast<double>(iterations) + 1.0);
}

ComparisonResult CompareProportions(int successes_a, int n_a, int successes_b, int n_b) {
  ComparisonResult r;
  r.n_a = n_a;
  r.n_b = n_b;
  r.successes_a = successes_a;
  r.successes_b = successes_b;
  r.rate_a = static_cast<double>(successes_a) / n_a;
  r.rate_b = static_cast<double>(successes_b) / n_b;
  const int a = successes_a, b = n_a - successes_a, c = successes_b, d = n_b - successes_b;
  const bool degenerate = a + c == 0 || b + d == 0;
  r.p_value = degenerate ? 1.0 : FisherExactTwoSided(a, b, c, d);
  try {
    r.odds_ratio = OddsRatio(a, b, c, d);
  } catch (const std::invalid_argument&) {
    r.odds_ratio = std::numeric_limits<double>::quiet_NaN();
  }
  r.cohens_h = CohensH(r.rate_a, r.rate_b);
  r.ci_a = WilsonCi(successes_a, n_a);
  r.ci_b = WilsonCi(successes_b, n_b);
  return r;
}

ScoreComparison CompareScores(std::span<const double> xs, std::span<const double> ys, int iterations,
                              std::uint64_t seed) {
  ScoreComparison s;
  s.n_a = static_cast<int>(xs.size());
  s.n_b = static_cast<int>(ys.size());
  s.mean_a = Mean(xs);
  s.mean_b = Mean(ys);
  s.mann_whitney = MannWhitneyU(xs, ys);
  s.permutation_p = PermutationTestMeans(xs, ys, iterations, seed);
  return s;
}

}  // namespace hanabi_lab::stats
