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
// Segment-level melodic similarity measures over equal-length sequences:
//
//   diffint  - mean absolute difference of signed interval sequences
//   citydist - L1 distance between MIDI pitch sequences
//   corrdist - 1 minus the Pearson correlation of duration-weighted pitch
//              series (each note's pitch repeated duration/tatum times)
//
// These definitions are normative for this project so that reported scores
// are reproducible.

#ifndef MOTIF2VEC_MELODIC_HPP
#define MOTIF2VEC_MELODIC_HPP

#include <cmath>
#include <cstdlib>
#include <span>
#include <string>
#include <vector>

#include "motif2vec/encoding.hpp"
#include "motif2vec/errors.hpp"
#include "motif2vec/rational.hpp"

namespace motif2vec {

struct SegmentRealization {
  std::vector<int> intervals;        // flattened signed semitones
  std::vector<int> pitches;          // anchored MIDI pitches, intervals+1 long
  std::vector<int> weighted_series;  // pitch repeated duration/tatum times
};

// Expands a token sequence into concrete pitches. `durations` must hold one
// entry per note (flattened intervals + 1) and every duration must be an
// integer multiple of `tatum`.
inline SegmentRealization realize(const TokenSequence& tokens, int anchor_pitch,
                                  std::span<const Rational> durations,
                                  const Rational& tatum) {
  SegmentRealization seg;
  seg.intervals = flatten_intervals(tokens);
  if (durations.size() != seg.intervals.size() + 1) {
    throw LengthMismatch(
        "realize: " + std::to_string(durations.size()) + " durations for " +
        std::to_string(seg.intervals.size() + 1) + " notes");
  }
  seg.pitches.reserve(durations.size());
  seg.pitches.push_back(anchor_pitch);
  for (const int delta : seg.intervals) {
    seg.pitches.push_back(seg.pitches.back() + delta);
  }
  for (std::size_t i = 0; i < durations.size(); ++i) {
    const Rational reps = durations[i] / tatum;
    if (reps.denominator() != 1 || reps.numerator() <= 0) {
      throw NonDivisibleDuration("duration " + format_rational(durations[i]) +
                                 " is not a positive multiple of tatum " +
                                 format_rational(tatum));
    }
    for (std::int64_t r = 0; r < reps.numerator(); ++r) {
      seg.weighted_series.push_back(seg.pitches[i]);
    }
  }
  return seg;
}

inline double diffint(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) {
    throw LengthMismatch("diffint: sizes " + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()));
  }
  if (a.empty()) {
    throw EmptySequence("diffint: empty interval lists");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += std::abs(a[i] - b[i]);
  }
  return sum / static_cast<double>(a.size());
}

inline double citydist(std::span<const int> p, std::span<const int> q) {
  if (p.size() != q.size()) {
    throw LengthMismatch("citydist: sizes " + std::to_string(p.size()) +
                         " vs " + std::to_string(q.size()));
  }
  if (p.empty()) {
    throw EmptySequence("citydist: empty pitch lists");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    sum += std::abs(p[i] - q[i]);
  }
  return sum;
}

inline double corrdist(std::span<const int> x, std::span<const int> y) {
  if (x.size() != y.size()) {
    throw LengthMismatch("corrdist: sizes " + std::to_string(x.size()) +
                         " vs " + std::to_string(y.size()));
  }
  if (x.size() < 2) {
    throw EmptySequence("corrdist: needs at least 2 samples");
  }
  const std::size_t n = x.size();
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);

  double cov = 0.0, var_x = 0.0, var_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    cov += dx * dy;
    var_x += dx * dx;
    var_y += dy * dy;
  }

  // Zero-variance series have no defined correlation; fix the distance at 0
  // for two equal constant series and 1 otherwise.
  if (var_x == 0.0 && var_y == 0.0) {
    return x[0] == y[0] ? 0.0 : 1.0;
  }
  if (var_x == 0.0 || var_y == 0.0) {
    return 1.0;
  }
  double r = cov / std::sqrt(var_x * var_y);
  r = std::min(1.0, std::max(-1.0, r));
  return 1.0 - r;
}

}  // namespace motif2vec

#endif  // MOTIF2VEC_MELODIC_HPP
