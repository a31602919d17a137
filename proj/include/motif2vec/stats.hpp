// Copyright 2026 The motif2vec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Wilcoxon rank-sum (Mann-Whitney U) two-sided test.
//
// Observations from both samples are ranked jointly, ties receiving
// midranks. The statistic is U1 = R1 - n1*(n1+1)/2 where R1 is the rank sum
// of the first sample. Under the null hypothesis the sample labels are an
// exchangeable uniform choice of n1 positions out of n1+n2, which gives U1 a
// symmetric distribution on [0, n1*n2].
//
// For small tie-free samples (n1+n2 <= 12) the p-value is exact: the number
// of label assignments with statistic u follows the recurrence
//   count(n1, n2, u) = count(n1-1, n2, u-n2) + count(n1, n2-1, u)
// and the two-sided p doubles the smaller tail. Larger or tied samples use
// the normal approximation with tie correction and a 0.5 continuity
// correction towards the mean, as in standard statistics packages.

#ifndef MOTIF2VEC_STATS_HPP
#define MOTIF2VEC_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "motif2vec/errors.hpp"

namespace motif2vec {

struct WilcoxonResult {
  double u_statistic = 0.0;  // U for the first sample
  double p_value = 1.0;      // two-sided
};

namespace detail {

// Null distribution of the rank sum R1 for a tie-free sample: counts[r] is
// the number of n1-subsets of ranks {1..n} with sum r. Subset-sum DP; counts
// fit comfortably in 64 bits for the n <= 12 exact regime.
inline std::vector<std::int64_t> rank_sum_counts(int n1, int n) {
  const int max_sum = n * (n + 1) / 2;
  std::vector<std::vector<std::int64_t>> ways(
      n1 + 1, std::vector<std::int64_t>(max_sum + 1, 0));
  ways[0][0] = 1;
  for (int rank = 1; rank <= n; ++rank) {
    for (int m = std::min(n1, rank); m >= 1; --m) {
      for (int r = max_sum; r >= rank; --r) {
        ways[m][r] += ways[m - 1][r - rank];
      }
    }
  }
  return ways[n1];
}

inline double normal_sf_two_sided(double z_abs) {
  // 2 * (1 - Phi(z)) = erfc(z / sqrt(2))
  return std::erfc(z_abs / std::sqrt(2.0));
}

}  // namespace detail

inline double euclidean(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw LengthMismatch("euclidean: sizes " + std::to_string(u.size()) +
                         " vs " + std::to_string(v.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = u[i] - v[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

inline WilcoxonResult wilcoxon_rank_sum(std::span<const double> a,
                                        std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw EmptySequence("wilcoxon_rank_sum: both samples must be non-empty");
  }
  const std::size_t n1 = a.size();
  const std::size_t n2 = b.size();
  const std::size_t n = n1 + n2;

  // Joint midranks.
  std::vector<std::pair<double, int>> pooled;  // (value, label: 0 = a)
  pooled.reserve(n);
  for (const double x : a) {
    pooled.emplace_back(x, 0);
  }
  for (const double x : b) {
    pooled.emplace_back(x, 1);
  }
  std::sort(pooled.begin(), pooled.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });

  double rank_sum_a = 0.0;
  double tie_term = 0.0;  // sum of t^3 - t over tie groups
  bool has_ties = false;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && pooled[j].first == pooled[i].first) {
      ++j;
    }
    const std::size_t t = j - i;
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (pooled[k].second == 0) {
        rank_sum_a += midrank;
      }
    }
    if (t > 1) {
      has_ties = true;
      tie_term += static_cast<double>(t) * t * t - static_cast<double>(t);
    }
    i = j;
  }

  const double u1 =
      rank_sum_a - static_cast<double>(n1) * (n1 + 1) / 2.0;
  const double max_u = static_cast<double>(n1) * static_cast<double>(n2);

  WilcoxonResult result;
  result.u_statistic = u1;

  if (!has_ties && n <= 12) {
    // Exact two-sided p: double the smaller tail, capped at 1. With no ties
    // U1 is an integer, and U1 <= u corresponds to R1 <= u + n1*(n1+1)/2.
    const std::vector<std::int64_t> counts =
        detail::rank_sum_counts(static_cast<int>(n1), static_cast<int>(n));
    const int offset = static_cast<int>(n1 * (n1 + 1) / 2);
    const int u_low =
        static_cast<int>(std::llround(std::min(u1, max_u - u1)));
    std::int64_t tail = 0;
    std::int64_t total = 0;
    for (int u = 0; u <= static_cast<int>(max_u); ++u) {
      const std::int64_t c = counts[u + offset];
      total += c;
      if (u <= u_low) {
        tail += c;
      }
    }
    result.p_value = std::min(
        1.0, 2.0 * static_cast<double>(tail) / static_cast<double>(total));
    return result;
  }

  const double mean_u = max_u / 2.0;
  const double tie_correction =
      tie_term / (static_cast<double>(n) * (static_cast<double>(n) - 1.0));
  const double variance =
      max_u / 12.0 * (static_cast<double>(n) + 1.0 - tie_correction);
  if (variance <= 0.0) {
    result.p_value = 1.0;  // every observation tied
    return result;
  }
  const double z =
      std::max(std::fabs(u1 - mean_u) - 0.5, 0.0) / std::sqrt(variance);
  result.p_value = detail::normal_sf_two_sided(z);
  return result;
}

}  // namespace motif2vec

#endif  // MOTIF2VEC_STATS_HPP
