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
// Substitution-based embedding evaluation.
//
// For each sampled melodic segment the first multi-word token is replaced
// by (a) its rank-1 same-size neighbor, (b) its rank-2 neighbor and (c) a
// random token with cosine below the threshold h, giving a related, a close
// and a distant variant. Melodic similarity between the reference and each
// variant is measured with diffint, citydist and corrdist; a Wilcoxon
// rank-sum test contrasts the related and distant score vectors, and the
// Euclidean distance between score vectors fills the summary table.

#ifndef MOTIF2VEC_EVALUATION_HPP
#define MOTIF2VEC_EVALUATION_HPP

#include <algorithm>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "motif2vec/encoding.hpp"
#include "motif2vec/errors.hpp"
#include "motif2vec/melodic.hpp"
#include "motif2vec/rng.hpp"
#include "motif2vec/similarity.hpp"
#include "motif2vec/stats.hpp"

namespace motif2vec {

inline const std::vector<std::string>& measure_names() {
  static const std::vector<std::string> names = {"diffint", "citydist",
                                                 "corrdist"};
  return names;
}

struct VariantTriple {
  TokenSequence reference;
  TokenSequence top_variant;      // mw -> rank-1 neighbor
  TokenSequence close_variant;    // mw -> rank-2 neighbor
  TokenSequence distant_variant;  // mw -> unrelated token (cosine < h)
  std::size_t replaced_at = 0;
  std::string replaced_token;
};

// A segment ready for realization: token sequence plus the note data the
// melodic measures need. Variants are anchored at the reference's first
// pitch and reuse its durations.
struct EvalSegment {
  TokenSequence tokens;
  int anchor_pitch = 60;
  std::vector<Rational> durations;  // one per note; empty = all quarters
};

inline bool has_multiword(const TokenSequence& seq) {
  return std::any_of(seq.tokens.begin(), seq.tokens.end(),
                     [](const std::string& t) { return is_multiword(t); });
}

namespace detail {

// Uniform sample of n indices without replacement: seeded Fisher-Yates
// prefix shuffle.
inline std::vector<std::size_t> sample_indices(std::size_t population,
                                               std::size_t n, Rng& rng) {
  std::vector<std::size_t> indices(population);
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + rng::bounded(rng, population - i);
    std::swap(indices[i], indices[j]);
  }
  indices.resize(n);
  return indices;
}

}  // namespace detail

// Uniform sample, without replacement, of n segments that contain at least
// one multi-word token.
inline std::vector<TokenSequence> sample_segments(
    std::span<const TokenSequence> corpus, std::size_t n, Rng& rng) {
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (has_multiword(corpus[i])) {
      eligible.push_back(i);
    }
  }
  if (eligible.size() < n) {
    throw NotEnoughSegments("need " + std::to_string(n) +
                            " segments with multi-words, corpus has " +
                            std::to_string(eligible.size()));
  }
  std::vector<TokenSequence> sample;
  sample.reserve(n);
  for (const std::size_t pick : detail::sample_indices(eligible.size(), n, rng)) {
    sample.push_back(corpus[eligible[pick]]);
  }
  return sample;
}

// Builds the three variants of a segment. The replaced occurrence is the
// first multi-word present in the model vocabulary (or a seeded-random one
// when random_occurrence is set). All four sequences have equal token and
// note counts and differ only at the replaced index.
inline VariantTriple make_variants(const TokenSequence& seg,
                                   const EmbeddingModel& model, double h,
                                   Rng& rng, bool random_occurrence = false) {
  std::vector<std::size_t> occurrences;
  for (std::size_t i = 0; i < seg.tokens.size(); ++i) {
    if (is_multiword(seg.tokens[i]) && model.vocab.contains(seg.tokens[i])) {
      occurrences.push_back(i);
    }
  }
  if (occurrences.empty()) {
    throw NoMultiWord("segment '" + seg.song_id +
                      "' has no multi-word token in the model vocabulary");
  }
  const std::size_t at =
      random_occurrence ? occurrences[rng::bounded(rng, occurrences.size())]
                        : occurrences.front();
  const std::string& target = seg.tokens[at];

  const TokenFilter same_size = same_size_filter(model, target);
  const NeighborList ranked = nearest(model, target, 2, same_size);
  if (ranked.neighbors.size() < 2) {
    throw NoMultiWord("vocabulary has fewer than 2 same-size neighbors for '" +
                      target + "'");
  }
  const std::string unrelated = pick_unrelated(model, target, h, rng, same_size);

  VariantTriple triple;
  triple.reference = seg;
  triple.replaced_at = at;
  triple.replaced_token = target;
  const auto substitute = [&](const std::string& replacement) {
    TokenSequence out = seg;
    out.tokens[at] = replacement;
    return out;
  };
  triple.top_variant = substitute(ranked.neighbors[0].token);
  triple.close_variant = substitute(ranked.neighbors[1].token);
  triple.distant_variant = substitute(unrelated);

  // Same-size substitution must keep note counts aligned.
  const std::size_t reference_notes = flatten_intervals(seg).size();
  for (const TokenSequence* variant :
       {&triple.top_variant, &triple.close_variant, &triple.distant_variant}) {
    if (flatten_intervals(*variant).size() != reference_notes) {
      throw Error("variant changed note count for segment '" + seg.song_id +
                  "'");
    }
  }
  return triple;
}

struct EvalConfig {
  std::size_t n_segments = 2000;
  double h = 0.2;
  std::uint64_t seed = 42;
  Rational tatum = Rational(1, 4);  // sixteenth grid
  int workers = 1;
  bool random_occurrence = false;
};

struct MeasureScores {
  std::vector<double> top;      // sim(c, c+)
  std::vector<double> close;    // sim(c, c_close)
  std::vector<double> distant;  // sim(c, c-)
};

struct WilcoxonEntry {
  double statistic = 0.0;
  double p_value = 1.0;
};

struct DistancePair {
  double d_close = 0.0;    // euclidean(top scores, close scores)
  double d_distant = 0.0;  // euclidean(top scores, distant scores)
};

struct EvalReport {
  std::map<std::string, MeasureScores> scores;
  std::map<std::string, WilcoxonEntry> wilcoxon;
  std::map<std::string, DistancePair> distances;
  int mw_size = 0;
  std::size_t requested = 0;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  EvalConfig config;
  TrainConfig model_config;
};

// Runs the full evaluation over a substituted corpus for one multi-word
// size. Segments without a usable multi-word (or whose durations do not sit
// on the tatum grid) are skipped and counted.
inline EvalReport run_evaluation(std::span<const EvalSegment> corpus,
                                 const EmbeddingModel& model,
                                 const EvalConfig& config) {
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (has_multiword(corpus[i].tokens)) {
      eligible.push_back(i);
    }
  }
  if (eligible.size() < config.n_segments) {
    throw NotEnoughSegments("need " + std::to_string(config.n_segments) +
                            " segments with multi-words, corpus has " +
                            std::to_string(eligible.size()));
  }
  Rng sample_rng(rng::substream(config.seed, 0x73616d70));  // "samp"
  const std::vector<std::size_t> picks =
      detail::sample_indices(eligible.size(), config.n_segments, sample_rng);

  struct Row {
    bool ok = false;
    double scores[3][3];  // [measure][top|close|distant]
  };
  std::vector<Row> rows(picks.size());
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto evaluate_one = [&](std::size_t row_index) {
    const EvalSegment& segment = corpus[eligible[picks[row_index]]];
    Rng rng(rng::substream(config.seed, 0x76617273, row_index));  // "vars"
    VariantTriple triple;
    try {
      triple = make_variants(segment.tokens, model, config.h, rng,
                             config.random_occurrence);
    } catch (const NoMultiWord&) {
      return;  // skipped, counted by the caller
    }

    const std::size_t notes = flatten_intervals(segment.tokens).size() + 1;
    std::vector<Rational> durations = segment.durations;
    if (durations.empty()) {
      durations.assign(notes, Rational(1));
    }

    SegmentRealization realized[4];
    try {
      const TokenSequence* sequences[4] = {
          &triple.reference, &triple.top_variant, &triple.close_variant,
          &triple.distant_variant};
      for (int v = 0; v < 4; ++v) {
        realized[v] = realize(*sequences[v], segment.anchor_pitch, durations,
                              config.tatum);
      }
    } catch (const NonDivisibleDuration&) {
      return;  // off-grid durations, skip
    }

    Row& row = rows[row_index];
    for (int v = 1; v < 4; ++v) {
      row.scores[0][v - 1] =
          diffint(realized[0].intervals, realized[v].intervals);
      row.scores[1][v - 1] =
          citydist(realized[0].pitches, realized[v].pitches);
      row.scores[2][v - 1] =
          corrdist(realized[0].weighted_series, realized[v].weighted_series);
    }
    row.ok = true;
  };

  const auto run_range = [&](std::size_t begin, std::size_t end) {
    try {
      for (std::size_t i = begin; i < end; ++i) {
        evaluate_one(i);
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) {
        failure = std::current_exception();
      }
    }
  };

  if (config.workers <= 1) {
    run_range(0, rows.size());
  } else {
    std::vector<std::thread> threads;
    const std::size_t chunk =
        (rows.size() + config.workers - 1) / config.workers;
    for (int w = 0; w < config.workers; ++w) {
      const std::size_t begin = std::min(rows.size(), w * chunk);
      const std::size_t end = std::min(rows.size(), begin + chunk);
      threads.emplace_back(run_range, begin, end);
    }
    for (std::thread& t : threads) {
      t.join();
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }

  EvalReport report;
  report.config = config;
  report.model_config = model.config;
  report.mw_size = model.vocab.n();
  report.requested = config.n_segments;
  for (std::size_t m = 0; m < measure_names().size(); ++m) {
    MeasureScores scores;
    for (const Row& row : rows) {
      if (!row.ok) {
        continue;
      }
      scores.top.push_back(row.scores[m][0]);
      scores.close.push_back(row.scores[m][1]);
      scores.distant.push_back(row.scores[m][2]);
    }
    report.scores[measure_names()[m]] = std::move(scores);
  }
  report.evaluated = report.scores.begin()->second.top.size();
  report.skipped = picks.size() - report.evaluated;

  for (const std::string& measure : measure_names()) {
    const MeasureScores& scores = report.scores[measure];
    if (scores.top.empty()) {
      continue;
    }
    const WilcoxonResult test =
        wilcoxon_rank_sum(scores.top, scores.distant);
    report.wilcoxon[measure] = {test.u_statistic, test.p_value};
    report.distances[measure] = {euclidean(scores.top, scores.close),
                                 euclidean(scores.top, scores.distant)};
  }
  return report;
}

// Text table in the shape of the results summary: one row per measure with
// the close/distant distances and the multi-word size.
inline std::string render_table(const EvalReport& report) {
  std::ostringstream out;
  out << "Measure   ref_var_ref_close_var  ref_var_ref_distant_var  mw_size\n";
  for (const std::string& measure : measure_names()) {
    const auto it = report.distances.find(measure);
    if (it == report.distances.end()) {
      continue;
    }
    char line[128];
    std::snprintf(line, sizeof(line), "%-9s %21.3f %24.3f %8d\n",
                  measure.c_str(), it->second.d_close, it->second.d_distant,
                  report.mw_size);
    out << line;
  }
  return out.str();
}

inline nlohmann::json report_to_json(const EvalReport& report) {
  nlohmann::json j;
  j["mw_size"] = report.mw_size;
  j["segments"] = {{"requested", report.requested},
                   {"evaluated", report.evaluated},
                   {"skipped", report.skipped}};
  j["config"] = {{"h", report.config.h},
                 {"seed", report.config.seed},
                 {"n_segments", report.config.n_segments},
                 {"tatum", format_rational(report.config.tatum)},
                 {"workers", report.config.workers},
                 {"random_occurrence", report.config.random_occurrence}};
  j["model"] = {{"dim", report.model_config.dim},
                {"window", report.model_config.window},
                {"negatives", report.model_config.negatives},
                {"epochs", report.model_config.epochs},
                {"lr_start", report.model_config.lr_start},
                {"lr_end", report.model_config.lr_end},
                {"seed", report.model_config.seed},
                {"noise_power", report.model_config.noise_power},
                {"subsample", report.model_config.subsample}};
  for (const auto& [measure, scores] : report.scores) {
    j["scores"][measure] = {{"top", scores.top},
                            {"close", scores.close},
                            {"distant", scores.distant}};
  }
  for (const auto& [measure, test] : report.wilcoxon) {
    j["wilcoxon"][measure] = {{"statistic", test.statistic},
                              {"p_value", test.p_value}};
  }
  for (const auto& [measure, d] : report.distances) {
    j["distances"][measure] = {{"d_close", d.d_close},
                               {"d_distant", d.d_distant}};
  }
  j["table"] = render_table(report);
  return j;
}

}  // namespace motif2vec

#endif  // MOTIF2VEC_EVALUATION_HPP
