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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "motif2vec/encoding.hpp"
#include "motif2vec/rng.hpp"
#include "motif2vec/sgns.hpp"
#include "motif2vec/similarity.hpp"

using motif2vec::EmbeddingModel;
using motif2vec::generate_pairs;
using motif2vec::NoiseTable;
using motif2vec::Rng;
using motif2vec::sample_negative;
using motif2vec::sgd_step;
using motif2vec::softmax_prob;
using motif2vec::TokenSequence;
using motif2vec::TrainConfig;
using motif2vec::TrainingPair;
using motif2vec::TrainStats;
using motif2vec::Vocabulary;

namespace {

Vocabulary vocab_from_counts(
    const std::vector<std::pair<std::string, std::uint64_t>>& entries) {
  std::unordered_map<std::string, std::uint64_t> counts(entries.begin(),
                                                        entries.end());
  return Vocabulary::from_counts(counts, 1, 0);
}

EmbeddingModel make_model(const Vocabulary& vocab, int dim, Rng* rng) {
  EmbeddingModel model;
  model.vocab = vocab;
  model.dim = dim;
  model.config.dim = dim;
  const std::size_t cells = vocab.size() * static_cast<std::size_t>(dim);
  model.input_vectors.assign(cells, 0.0f);
  model.output_vectors.assign(cells, 0.0f);
  if (rng != nullptr) {
    for (float& x : model.input_vectors) {
      x = static_cast<float>(motif2vec::rng::uniform(*rng) - 0.5);
    }
    for (float& x : model.output_vectors) {
      x = static_cast<float>(motif2vec::rng::uniform(*rng) - 0.5);
    }
  }
  return model;
}

// Loss of one (center, context, negatives) instance written independently of
// the implementation: log(1 + e^-x) terms instead of log sigmoid.
double loss_reference(const EmbeddingModel& model, std::uint32_t center,
                      std::uint32_t context,
                      const std::vector<std::uint32_t>& negatives) {
  const auto dot = [&](std::uint32_t out_id) {
    double sum = 0.0;
    for (int j = 0; j < model.dim; ++j) {
      sum += static_cast<double>(model.input(center)[j]) *
             model.output(out_id)[j];
    }
    return sum;
  };
  double loss = std::log1p(std::exp(-dot(context)));
  for (const std::uint32_t n : negatives) {
    loss += std::log1p(std::exp(dot(n)));
  }
  return loss;
}

// Planted two-cluster corpus: songs draw all tokens from one cluster, so
// co-occurrence never crosses clusters.
struct Planted {
  std::vector<TokenSequence> corpus;
  Vocabulary vocab;
  std::set<std::string> cluster_a;
  std::set<std::string> cluster_b;
};

Planted make_planted(std::uint64_t seed, std::size_t songs = 50,
                     std::size_t song_len = 20) {
  Planted planted;
  for (int i = 1; i <= 8; ++i) {
    planted.cluster_a.insert(std::to_string(i) + "1");  // ascending intervals
    planted.cluster_b.insert(std::to_string(i) + "0");  // descending
  }
  const std::vector<std::string> a(planted.cluster_a.begin(),
                                   planted.cluster_a.end());
  const std::vector<std::string> b(planted.cluster_b.begin(),
                                   planted.cluster_b.end());
  Rng rng(seed);
  std::unordered_map<std::string, std::uint64_t> counts;
  for (std::size_t s = 0; s < songs; ++s) {
    const std::vector<std::string>& pool = s % 2 == 0 ? a : b;
    TokenSequence seq;
    seq.song_id = "p" + std::to_string(s);
    for (std::size_t i = 0; i < song_len; ++i) {
      const std::string& token =
          pool[motif2vec::rng::bounded(rng, pool.size())];
      seq.tokens.push_back(token);
      ++counts[token];
    }
    planted.corpus.push_back(std::move(seq));
  }
  planted.vocab = Vocabulary::from_counts(counts, 1, 0);
  return planted;
}

double mean_cosine_gap(const EmbeddingModel& model, const Planted& planted) {
  double within = 0.0, cross = 0.0;
  std::size_t n_within = 0, n_cross = 0;
  for (std::uint32_t i = 0; i < model.vocab.size(); ++i) {
    for (std::uint32_t j = i + 1; j < model.vocab.size(); ++j) {
      const bool i_in_a = planted.cluster_a.count(model.vocab.token(i)) > 0;
      const bool j_in_a = planted.cluster_a.count(model.vocab.token(j)) > 0;
      const double cos = motif2vec::cosine(model.input(i), model.input(j));
      if (i_in_a == j_in_a) {
        within += cos;
        ++n_within;
      } else {
        cross += cos;
        ++n_cross;
      }
    }
  }
  return within / n_within - cross / n_cross;
}

TrainConfig planted_config(std::uint64_t seed) {
  TrainConfig config;
  config.dim = 16;
  config.window = 3;
  config.negatives = 5;
  config.epochs = 20;
  config.seed = seed;
  return config;
}

}  // namespace

TEST_CASE("window 1 emits exactly the adjacent pairs") {
  const std::vector<std::uint32_t> ids = {7, 8, 9};
  Rng rng(1);
  const std::vector<TrainingPair> pairs = generate_pairs(ids, 1, rng);
  const std::vector<TrainingPair> expected = {
      {7, 8}, {8, 7}, {8, 9}, {9, 8}};
  CHECK(pairs == expected);
}

TEST_CASE("a single token yields no pairs") {
  const std::vector<std::uint32_t> ids = {3};
  Rng rng(1);
  CHECK(generate_pairs(ids, 5, rng).empty());
}

TEST_CASE("pair generation matches offset enumeration") {
  // Oracle: replay the per-center width draws and enumerate every in-range
  // (t, t+o) with 1 <= |o| <= b by hand.
  const std::vector<std::uint32_t> ids = {10, 11, 12, 13};
  for (const int window : {1, 2, 3, 5}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Rng impl_rng(seed);
      const std::vector<TrainingPair> pairs =
          generate_pairs(ids, window, impl_rng);

      Rng oracle_rng(seed);
      std::vector<TrainingPair> expected;
      for (int t = 0; t < static_cast<int>(ids.size()); ++t) {
        const int b =
            1 + static_cast<int>(motif2vec::rng::bounded(oracle_rng, window));
        for (int s = t - b; s <= t + b; ++s) {
          if (s == t || s < 0 || s >= static_cast<int>(ids.size())) {
            continue;
          }
          expected.push_back({ids[t], ids[s]});
        }
      }
      CHECK(pairs == expected);
    }
  }
}

TEST_CASE("pair offsets never exceed the window") {
  Rng rng(77);
  std::vector<std::uint32_t> ids(30);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    ids[i] = static_cast<std::uint32_t>(i);  // id == position
  }
  for (const int window : {1, 2, 4, 8}) {
    const std::vector<TrainingPair> pairs = generate_pairs(ids, window, rng);
    for (const TrainingPair& pair : pairs) {
      const int offset = static_cast<int>(pair.context) -
                         static_cast<int>(pair.center);
      CHECK(offset != 0);
      CHECK(std::abs(offset) <= window);
    }
  }
}

TEST_CASE("noise sampling follows count^0.75") {
  SECTION("single-token vocabulary") {
    const Vocabulary vocab = vocab_from_counts({{"21", 3}});
    const NoiseTable table(vocab, 0.75);
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
      CHECK(table.sample(rng) == 0);
      CHECK(sample_negative(table, 0, rng) == 0);  // collision accepted
    }
  }
  SECTION("symmetric counts") {
    const Vocabulary vocab = vocab_from_counts({{"11", 1}, {"21", 1}});
    const NoiseTable table(vocab, 0.75);
    Rng rng(2);
    std::size_t first = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
      if (table.sample(rng) == 0) {
        ++first;
      }
    }
    CHECK(std::fabs(static_cast<double>(first) / draws - 0.5) < 0.01);
  }
  SECTION("8-to-1 counts") {
    const Vocabulary vocab = vocab_from_counts({{"11", 8}, {"21", 1}});
    const NoiseTable table(vocab, 0.75);
    const auto heavy_id = *vocab.id_of("11");
    Rng rng(3);
    std::size_t heavy = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
      if (table.sample(rng) == heavy_id) {
        ++heavy;
      }
    }
    const double expected = std::pow(8.0, 0.75) / (std::pow(8.0, 0.75) + 1.0);
    CHECK(expected == Catch::Approx(0.8262).margin(0.0005));
    CHECK(std::fabs(static_cast<double>(heavy) / draws - expected) < 0.01);
  }
}

TEST_CASE("negatives avoid the positive context when possible") {
  const Vocabulary vocab =
      vocab_from_counts({{"11", 100}, {"21", 1}, {"31", 1}});
  const NoiseTable table(vocab, 0.75);
  const auto heavy_id = *vocab.id_of("11");
  Rng rng(4);
  std::size_t collisions = 0;
  for (int i = 0; i < 2000; ++i) {
    if (sample_negative(table, heavy_id, rng) == heavy_id) {
      ++collisions;
    }
  }
  // heavy token has ~97% raw mass; 8 retries leave ~0.97^9 ~ 76% collisions,
  // far below that without retries only if retry logic works at all
  CHECK(collisions < 1900);
  for (int i = 0; i < 2000; ++i) {
    const auto id = sample_negative(table, *vocab.id_of("21"), rng);
    CHECK(id != *vocab.id_of("21"));  // only ~1/3 raw mass, 8 retries suffice
  }
}

TEST_CASE("sgd step at zero vectors") {
  const Vocabulary vocab = vocab_from_counts({{"11", 1}, {"21", 1}});
  EmbeddingModel model = make_model(vocab, 4, nullptr);
  const std::vector<std::uint32_t> negatives = {1};
  const double loss = sgd_step(model, {0, 1}, negatives, 0.5);
  CHECK(loss == Catch::Approx(2.0 * std::log(2.0)).margin(1e-12));
  for (const float x : model.input_vectors) {
    CHECK(x == 0.0f);  // +0.5 and -0.5 coefficients cancel on the center
  }
}

TEST_CASE("analytic gradients match central finite differences") {
  Rng rng(20260809);
  for (int instance = 0; instance < 100; ++instance) {
    const int dim = 2 + static_cast<int>(motif2vec::rng::bounded(rng, 7));
    const int k = 1 + static_cast<int>(motif2vec::rng::bounded(rng, 3));
    const Vocabulary vocab = vocab_from_counts(
        {{"11", 1}, {"21", 1}, {"31", 1}, {"41", 1}, {"51", 1}});
    EmbeddingModel model = make_model(vocab, dim, &rng);

    const std::uint32_t center = 0;
    const std::uint32_t context =
        1 + static_cast<std::uint32_t>(motif2vec::rng::bounded(rng, 4));
    std::vector<std::uint32_t> negatives;
    for (int i = 0; i < k; ++i) {
      negatives.push_back(
          1 + static_cast<std::uint32_t>(motif2vec::rng::bounded(rng, 4)));
    }

    // Analytic gradient of L = -loss, recovered from the lr=1 update.
    EmbeddingModel stepped = model;
    const double loss =
        sgd_step(stepped, {center, context}, negatives, 1.0);
    CHECK(loss == Catch::Approx(loss_reference(model, center, context,
                                               negatives))
                      .margin(1e-9));

    double err_sq = 0.0, norm_sq = 0.0;
    const double eps = 1e-5;
    for (std::size_t cell = 0; cell < model.input_vectors.size() * 2;
         ++cell) {
      const bool is_input = cell < model.input_vectors.size();
      const std::size_t idx =
          is_input ? cell : cell - model.input_vectors.size();
      auto& vectors =
          is_input ? model.input_vectors : model.output_vectors;
      const auto& stepped_vectors =
          is_input ? stepped.input_vectors : stepped.output_vectors;

      const double analytic =
          static_cast<double>(stepped_vectors[idx]) - vectors[idx];

      // perturb on the float grid and divide by the realized span, else the
      // quantization of eps dominates the comparison
      const float saved = vectors[idx];
      const float plus_val = static_cast<float>(saved + eps);
      const float minus_val = static_cast<float>(saved - eps);
      vectors[idx] = plus_val;
      const double plus = loss_reference(model, center, context, negatives);
      vectors[idx] = minus_val;
      const double minus = loss_reference(model, center, context, negatives);
      vectors[idx] = saved;
      const double span =
          static_cast<double>(plus_val) - static_cast<double>(minus_val);
      // gradient of L is minus the loss gradient
      const double numeric = -(plus - minus) / span;

      err_sq += (analytic - numeric) * (analytic - numeric);
      norm_sq += numeric * numeric;
    }
    CAPTURE(instance, dim, k);
    REQUIRE(norm_sq > 0.0);
    CHECK(std::sqrt(err_sq / norm_sq) < 1e-4);
  }
}

TEST_CASE("one step pulls center and context together") {
  Rng rng(5);
  for (int instance = 0; instance < 50; ++instance) {
    const Vocabulary vocab =
        vocab_from_counts({{"11", 1}, {"21", 1}, {"31", 1}, {"41", 1}});
    EmbeddingModel model = make_model(vocab, 8, &rng);
    for (float& x : model.input_vectors) {
      x *= 0.2f;
    }
    for (float& x : model.output_vectors) {
      x *= 0.2f;
    }
    const std::vector<std::uint32_t> negatives = {2, 3};
    const auto dot_wc = [&]() {
      double sum = 0.0;
      for (int j = 0; j < model.dim; ++j) {
        sum += static_cast<double>(model.input(0)[j]) * model.output(1)[j];
      }
      return sum;
    };
    const double before = dot_wc();
    sgd_step(model, {0, 1}, negatives, 0.025);
    CHECK(dot_wc() > before);
  }
}

TEST_CASE("non-finite updates are detected") {
  const Vocabulary vocab = vocab_from_counts({{"11", 1}, {"21", 1}});
  EmbeddingModel model = make_model(vocab, 2, nullptr);
  model.input_vectors[0] = std::numeric_limits<float>::max();
  model.output_vectors[2] = std::numeric_limits<float>::max();
  const std::vector<std::uint32_t> negatives = {0};
  CHECK_THROWS_AS(sgd_step(model, {0, 1}, negatives, 1e30),
                  motif2vec::NonFiniteUpdate);
}

TEST_CASE("training separates planted clusters") {
  for (const std::uint64_t seed : {11ull, 22ull, 33ull}) {
    const Planted planted = make_planted(1000 + seed);
    const EmbeddingModel model =
        motif2vec::train(planted.corpus, planted.vocab, planted_config(seed));
    CAPTURE(seed);
    CHECK(mean_cosine_gap(model, planted) >= 0.2);
  }
}

TEST_CASE("matrix shapes follow vocabulary and dimension") {
  const Planted planted = make_planted(7);
  TrainConfig config = planted_config(1);
  config.dim = 24;
  config.epochs = 1;
  const EmbeddingModel model =
      motif2vec::train(planted.corpus, planted.vocab, config);
  CHECK(model.input_vectors.size() == planted.vocab.size() * 24);
  CHECK(model.output_vectors.size() == planted.vocab.size() * 24);
}

TEST_CASE("single-worker training is bit-identical across runs") {
  const Planted planted = make_planted(9);
  TrainConfig config = planted_config(123);
  config.epochs = 3;
  const EmbeddingModel first =
      motif2vec::train(planted.corpus, planted.vocab, config);
  const EmbeddingModel second =
      motif2vec::train(planted.corpus, planted.vocab, config);
  CHECK(first.input_vectors == second.input_vectors);
  CHECK(first.output_vectors == second.output_vectors);
}

TEST_CASE("mean epoch loss does not increase beyond tolerance") {
  const Planted planted = make_planted(13);
  TrainConfig config = planted_config(99);
  config.epochs = 10;
  TrainStats stats;
  motif2vec::train(planted.corpus, planted.vocab, config, &stats);
  REQUIRE(stats.epoch_loss.size() == 10);
  for (std::size_t e = 1; e < stats.epoch_loss.size(); ++e) {
    CAPTURE(e, stats.epoch_loss[e - 1], stats.epoch_loss[e]);
    CHECK(stats.epoch_loss[e] <= stats.epoch_loss[e - 1] * 1.01);
  }
}

TEST_CASE("multi-worker training still separates clusters") {
  const Planted planted = make_planted(17);
  TrainConfig config = planted_config(7);
  config.workers = 2;
  const EmbeddingModel model =
      motif2vec::train(planted.corpus, planted.vocab, config);
  CHECK(mean_cosine_gap(model, planted) >= 0.2);
}

TEST_CASE("training rejects degenerate inputs") {
  const Planted planted = make_planted(3);
  TrainConfig config;
  const std::vector<TokenSequence> empty;
  CHECK_THROWS_AS(motif2vec::train(empty, planted.vocab, config),
                  motif2vec::EmptyCorpus);
  const Vocabulary tiny = vocab_from_counts({{"11", 1}});
  CHECK_THROWS_AS(motif2vec::train(planted.corpus, tiny, config),
                  motif2vec::EmptyVocab);
  config.window = 0;
  CHECK_THROWS_AS(motif2vec::train(planted.corpus, planted.vocab, config),
                  motif2vec::ConfigError);
}

TEST_CASE("softmax is uniform for a zero model") {
  const Vocabulary vocab =
      vocab_from_counts({{"11", 1}, {"21", 1}, {"31", 1}, {"41", 1}});
  const EmbeddingModel model = make_model(vocab, 3, nullptr);
  for (std::uint32_t c = 0; c < 4; ++c) {
    CHECK(softmax_prob(model, 0, c) == Catch::Approx(0.25).margin(1e-12));
  }
}

TEST_CASE("softmax probabilities sum to 1") {
  Rng rng(21);
  for (int round = 0; round < 10; ++round) {
    std::vector<std::pair<std::string, std::uint64_t>> entries;
    const std::size_t v = 2 + motif2vec::rng::bounded(rng, 49);
    for (std::size_t i = 0; i < v; ++i) {
      entries.emplace_back(std::to_string(i + 1) + "1", 1);
    }
    const EmbeddingModel model =
        make_model(vocab_from_counts(entries), 6, &rng);
    for (std::uint32_t w = 0; w < std::min<std::size_t>(v, 5); ++w) {
      double total = 0.0;
      for (std::uint32_t c = 0; c < v; ++c) {
        total += softmax_prob(model, w, c);
      }
      CHECK(std::fabs(total - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("softmax argmax lands in the planted cluster") {
  const Planted planted = make_planted(29);
  const EmbeddingModel model =
      motif2vec::train(planted.corpus, planted.vocab, planted_config(4));
  std::size_t in_cluster = 0;
  for (std::uint32_t w = 0; w < model.vocab.size(); ++w) {
    std::uint32_t best = 0;
    double best_p = -1.0;
    for (std::uint32_t c = 0; c < model.vocab.size(); ++c) {
      const double p = softmax_prob(model, w, c);
      if (p > best_p) {
        best_p = p;
        best = c;
      }
    }
    const bool w_in_a = planted.cluster_a.count(model.vocab.token(w)) > 0;
    const bool best_in_a =
        planted.cluster_a.count(model.vocab.token(best)) > 0;
    if (w_in_a == best_in_a) {
      ++in_cluster;
    }
  }
  CHECK(static_cast<double>(in_cluster) >=
        0.9 * static_cast<double>(model.vocab.size()));
}
