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
// Skip-gram with negative sampling over token corpora.
//
// For a (center, context) pair with negatives n_1..n_k the step maximizes
//   L = log sigma(v_c . v_w) + sum_i log sigma(-v_{n_i} . v_w)
// where v_w is the center's input vector and v_c, v_{n_i} are output
// vectors. All gradients of one step are evaluated at the pre-step
// parameters, so a step is an exact gradient ascent step on L.
//
// Training is deterministic for a fixed seed in single-worker mode. With
// more workers the songs are sharded and the matrices updated without locks
// (asynchronous stochastic updates); the per-(song, epoch) RNG substreams
// keep the generated pairs identical regardless of worker count, but update
// interleaving makes only the statistical behaviour reproducible.

#ifndef MOTIF2VEC_SGNS_HPP
#define MOTIF2VEC_SGNS_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "motif2vec/encoding.hpp"
#include "motif2vec/errors.hpp"
#include "motif2vec/rng.hpp"

namespace motif2vec {

struct TrainConfig {
  int dim = 150;
  int window = 5;       // max context offset; per-center width is dynamic
  int negatives = 5;    // noise samples per positive pair
  int epochs = 5;
  double lr_start = 0.025;
  double lr_end = 0.0001;  // linear decay by processed pairs
  std::uint64_t seed = 1;
  double noise_power = 0.75;    // exponent on unigram counts
  std::uint64_t min_count = 1;  // training-vocabulary floor
  double subsample = 0.0;       // frequent-token threshold, 0 = off
  int workers = 1;

  void validate() const {
    if (dim < 1) {
      throw ConfigError("dim must be >= 1");
    }
    if (window < 1) {
      throw ConfigError("window must be >= 1");
    }
    if (negatives < 1) {
      throw ConfigError("negatives must be >= 1");
    }
    if (epochs < 1) {
      throw ConfigError("epochs must be >= 1");
    }
    if (!(lr_start >= lr_end && lr_end > 0.0)) {
      throw ConfigError("need lr_start >= lr_end > 0");
    }
    if (workers < 1) {
      throw ConfigError("workers must be >= 1");
    }
  }
};

struct TrainingPair {
  std::uint32_t center = 0;
  std::uint32_t context = 0;

  bool operator==(const TrainingPair&) const = default;
};

// Paired |V| x dim matrices plus the vocabulary they index.
struct EmbeddingModel {
  Vocabulary vocab;
  int dim = 0;
  std::vector<float> input_vectors;   // v_w, row-major
  std::vector<float> output_vectors;  // v_c, row-major
  TrainConfig config;

  std::span<float> input(std::uint32_t id) {
    return {input_vectors.data() + static_cast<std::size_t>(id) * dim,
            static_cast<std::size_t>(dim)};
  }
  std::span<const float> input(std::uint32_t id) const {
    return {input_vectors.data() + static_cast<std::size_t>(id) * dim,
            static_cast<std::size_t>(dim)};
  }
  std::span<float> output(std::uint32_t id) {
    return {output_vectors.data() + static_cast<std::size_t>(id) * dim,
            static_cast<std::size_t>(dim)};
  }
  std::span<const float> output(std::uint32_t id) const {
    return {output_vectors.data() + static_cast<std::size_t>(id) * dim,
            static_cast<std::size_t>(dim)};
  }
};

// Dynamic-window pair generation: for each center position one width b is
// drawn uniformly from 1..window, and every in-range (center, context) with
// offset |o| <= b is emitted. Consumes exactly one draw per center.
inline std::vector<TrainingPair> generate_pairs(
    std::span<const std::uint32_t> ids, int window, Rng& rng) {
  std::vector<TrainingPair> pairs;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(ids.size());
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    const std::ptrdiff_t b =
        1 + static_cast<std::ptrdiff_t>(rng::bounded(rng, window));
    for (std::ptrdiff_t o = -b; o <= b; ++o) {
      const std::ptrdiff_t s = t + o;
      if (o == 0 || s < 0 || s >= n) {
        continue;
      }
      pairs.push_back({ids[t], ids[s]});
    }
  }
  return pairs;
}

// Unigram noise distribution with counts raised to `power`, sampled by
// binary search over the cumulative weights.
class NoiseTable {
 public:
  NoiseTable(const Vocabulary& vocab, double power) {
    cumulative_.reserve(vocab.size());
    double total = 0.0;
    for (std::uint32_t id = 0; id < vocab.size(); ++id) {
      total += std::pow(static_cast<double>(vocab.count(id)), power);
      cumulative_.push_back(total);
    }
  }

  std::uint32_t sample(Rng& rng) const {
    const double x = rng::uniform(rng) * cumulative_.back();
    const auto it =
        std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
    const std::size_t idx = it - cumulative_.begin();
    return static_cast<std::uint32_t>(
        std::min(idx, cumulative_.size() - 1));
  }

  std::size_t size() const { return cumulative_.size(); }

 private:
  std::vector<double> cumulative_;
};

// Draws a negative id, redrawing when it collides with the positive context
// (up to 8 retries, then the collision is accepted).
inline std::uint32_t sample_negative(const NoiseTable& table,
                                     std::uint32_t positive, Rng& rng) {
  std::uint32_t id = table.sample(rng);
  for (int retry = 0; retry < 8 && id == positive; ++retry) {
    id = table.sample(rng);
  }
  return id;
}

namespace detail {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline double log_sigmoid(double x) {
  // stable: log sigma(x) = -log(1 + e^-x) for x >= 0, x - log(1 + e^x) else
  if (x >= 0.0) {
    return -std::log1p(std::exp(-x));
  }
  return x - std::log1p(std::exp(x));
}

}  // namespace detail

// One gradient-ascent step on L for a pair and its negatives. Returns the
// loss -L. Throws NonFiniteUpdate when an updated entry is non-finite.
inline double sgd_step(EmbeddingModel& model, const TrainingPair& pair,
                       std::span<const std::uint32_t> negatives, double lr) {
  const int dim = model.dim;
  const std::span<float> center = model.input(pair.center);

  // Pass 1: logits, coefficients, loss and the center gradient, all from
  // pre-step parameters.
  double loss = 0.0;
  std::vector<double> coeff(negatives.size() + 1);
  std::vector<double> center_grad(dim, 0.0);

  const auto accumulate = [&](std::span<const float> out_row, bool positive,
                              std::size_t slot) {
    double dot = 0.0;
    for (int j = 0; j < dim; ++j) {
      dot += static_cast<double>(center[j]) * out_row[j];
    }
    const double g =
        positive ? 1.0 - detail::sigmoid(dot) : -detail::sigmoid(dot);
    loss -= detail::log_sigmoid(positive ? dot : -dot);
    coeff[slot] = g;
    for (int j = 0; j < dim; ++j) {
      center_grad[j] += g * out_row[j];
    }
  };

  accumulate(model.output(pair.context), true, 0);
  for (std::size_t k = 0; k < negatives.size(); ++k) {
    accumulate(model.output(negatives[k]), false, k + 1);
  }

  // Pass 2: apply updates. Output rows move along g * v_w; repeated rows
  // accumulate, matching the gradient of the summed loss.
  const auto apply_output = [&](std::span<float> out_row, double g) {
    for (int j = 0; j < dim; ++j) {
      out_row[j] += static_cast<float>(lr * g * center[j]);
    }
  };
  apply_output(model.output(pair.context), coeff[0]);
  for (std::size_t k = 0; k < negatives.size(); ++k) {
    apply_output(model.output(negatives[k]), coeff[k + 1]);
  }
  for (int j = 0; j < dim; ++j) {
    center[j] += static_cast<float>(lr * center_grad[j]);
  }

  const auto check_finite = [&](std::span<const float> row) {
    for (int j = 0; j < dim; ++j) {
      if (!std::isfinite(row[j])) {
        throw NonFiniteUpdate("non-finite embedding entry after update");
      }
    }
  };
  check_finite(center);
  check_finite(model.output(pair.context));
  for (const std::uint32_t id : negatives) {
    check_finite(model.output(id));
  }
  return loss;
}

 // Test oracle for the full softmax: p(context | center) over the whole
// vocabulary. Only sensible for small vocabularies.
inline double softmax_prob(const EmbeddingModel& model, std::uint32_t center,
                           std::uint32_t context) {
  const std::span<const float> w = model.input(center);
  std::vector<double> dots(model.vocab.size());
  double max_dot = -std::numeric_limits<double>::infinity();
  for (std::uint32_t c = 0; c < model.vocab.size(); ++c) {
    const std::span<const float> out = model.output(c);
    double dot = 0.0;
    for (int j = 0; j < model.dim; ++j) {
      dot += static_cast<double>(w[j]) * out[j];
    }
    dots[c] = dot;
    max_dot = std::max(max_dot, dot);
  }
  double denom = 0.0;
  for (const double d : dots) {
    denom += std::exp(d - max_dot);
  }
  return std::exp(dots[context] - max_dot) / denom;
}

struct TrainStats {
  std::vector<double> epoch_loss;  // mean per-pair loss by epoch
  std::uint64_t total_pairs = 0;
  std::size_t skipped_tokens = 0;  // out-of-vocabulary occurrences
};

namespace detail {

// Substream tags so independent draw streams never overlap.
inline constexpr std::uint64_t kInitStream = 0x696e6974;    // vector init
inline constexpr std::uint64_t kWindowStream = 0x77696e64;  // widths+subsampling
inline constexpr std::uint64_t kNoiseStream = 0x6e656773;   // negatives

// Subsampling keep-check and dynamic-window pair generation for one song in
// one epoch. The RNG stream depends only on (seed, song, epoch) so results
// do not depend on worker scheduling.
inline std::vector<TrainingPair> song_pairs(
    std::span<const std::uint32_t> ids, std::span<const double> keep_prob,
    const TrainConfig& config, std::size_t song_index, int epoch) {
  Rng rng(rng::substream(config.seed, kWindowStream, song_index,
                         static_cast<std::uint64_t>(epoch)));
  std::vector<std::uint32_t> kept;
  if (config.subsample > 0.0) {
    kept.reserve(ids.size());
    for (const std::uint32_t id : ids) {
      if (rng::uniform(rng) < keep_prob[id]) {
        kept.push_back(id);
      }
    }
  } else {
    kept.assign(ids.begin(), ids.end());
  }
  return generate_pairs(kept, config.window, rng);
}

}  // namespace detail

// Trains a model over the corpus. The vocabulary is fixed by the caller;
// out-of-vocabulary tokens are skipped. Input vectors start uniform in
// [-0.5/dim, +0.5/dim], output vectors at zero; the learning rate decays
// linearly from lr_start to lr_end over the total number of pairs.
inline EmbeddingModel train(std::span<const TokenSequence> corpus,
                            const Vocabulary& vocab, const TrainConfig& config,
                            TrainStats* stats = nullptr) {
  config.validate();
  if (corpus.empty()) {
    throw EmptyCorpus("train: empty corpus");
  }
  if (vocab.size() < 2) {
    throw EmptyVocab("train: vocabulary needs at least 2 entries, has " +
                     std::to_string(vocab.size()));
  }

  EmbeddingModel model;
  model.vocab = vocab;
  model.dim = config.dim;
  model.config = config;
  const std::size_t cells = vocab.size() * static_cast<std::size_t>(config.dim);
  model.input_vectors.resize(cells);
  model.output_vectors.assign(cells, 0.0f);
  {
    Rng rng(rng::substream(config.seed, detail::kInitStream));
    for (float& x : model.input_vectors) {
      x = static_cast<float>((rng::uniform(rng) - 0.5) / config.dim);
    }
  }

  // Map songs to id sequences.
  std::vector<std::vector<std::uint32_t>> songs;
  songs.reserve(corpus.size());
  std::size_t skipped_tokens = 0;
  for (const TokenSequence& seq : corpus) {
    std::vector<std::uint32_t> ids;
    ids.reserve(seq.tokens.size());
    for (const std::string& token : seq.tokens) {
      if (const auto id = vocab.id_of(token)) {
        ids.push_back(*id);
      } else {
        ++skipped_tokens;
      }
    }
    songs.push_back(std::move(ids));
  }

  // Subsampling keep probabilities (word2vec formula), unused when off.
  std::vector<double> keep_prob(vocab.size(), 1.0);
  if (config.subsample > 0.0) {
    double total_count = 0.0;
    for (std::uint32_t id = 0; id < vocab.size(); ++id) {
      total_count += static_cast<double>(vocab.count(id));
    }
    for (std::uint32_t id = 0; id < vocab.size(); ++id) {
      const double freq = static_cast<double>(vocab.count(id)) / total_count;
      const double keep = (std::sqrt(freq / config.subsample) + 1.0) *
                          config.subsample / freq;
      keep_prob[id] = std::min(1.0, keep);
    }
  }

  // Counting pass: the lr schedule needs the total pair count up front.
  // Replays the same per-(song, epoch) streams the training loop uses.
  std::uint64_t total_pairs = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    for (std::size_t s = 0; s < songs.size(); ++s) {
      total_pairs +=
          detail::song_pairs(songs[s], keep_prob, config, s, epoch).size();
    }
  }

  const NoiseTable noise(vocab, config.noise_power);
  std::atomic<std::uint64_t> processed{0};
  std::vector<double> epoch_loss(config.epochs, 0.0);
  std::vector<std::uint64_t> epoch_pairs(config.epochs, 0);

  const auto run_worker = [&](int worker, int epoch, double& loss_sum,
                              std::uint64_t& pair_count) {
    std::vector<std::uint32_t> negatives(config.negatives);
    for (std::size_t s = static_cast<std::size_t>(worker); s < songs.size();
         s += static_cast<std::size_t>(config.workers)) {
      const std::vector<TrainingPair> pairs =
          detail::song_pairs(songs[s], keep_prob, config, s, epoch);
      if (pairs.empty()) {
        continue;
      }
      Rng noise_rng(rng::substream(config.seed, detail::kNoiseStream, s,
                                   static_cast<std::uint64_t>(epoch)));
      for (const TrainingPair& pair : pairs) {
        const std::uint64_t done =
            processed.fetch_add(1, std::memory_order_relaxed);
        const double progress =
            total_pairs > 0
                ? static_cast<double>(done) / static_cast<double>(total_pairs)
                : 0.0;
        const double lr =
            std::max(config.lr_end,
                     config.lr_start +
                         (config.lr_end - config.lr_start) * progress);
        for (int k = 0; k < config.negatives; ++k) {
          negatives[k] = sample_negative(noise, pair.context, noise_rng);
        }
        loss_sum += sgd_step(model, pair, negatives, lr);
        ++pair_count;
      }
    }
  };

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    if (config.workers == 1) {
      run_worker(0, epoch, epoch_loss[epoch], epoch_pairs[epoch]);
    } else {
      std::vector<std::thread> threads;
      std::vector<double> losses(config.workers, 0.0);
      std::vector<std::uint64_t> counts(config.workers, 0);
      std::exception_ptr failure;
      std::mutex failure_mutex;
      for (int w = 0; w < config.workers; ++w) {
        threads.emplace_back([&, w] {
          try {
            run_worker(w, epoch, losses[w], counts[w]);
          } catch (...) {
            const std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) {
              failure = std::current_exception();
            }
          }
        });
      }
      for (std::thread& t : threads) {
        t.join();
      }
      if (failure) {
        std::rethrow_exception(failure);
      }
      for (int w = 0; w < config.workers; ++w) {
        epoch_loss[epoch] += losses[w];
        epoch_pairs[epoch] += counts[w];
      }
    }
  }

  if (stats != nullptr) {
    stats->epoch_loss.clear();
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
      stats->epoch_loss.push_back(
          epoch_pairs[epoch] > 0
              ? epoch_loss[epoch] / static_cast<double>(epoch_pairs[epoch])
              : 0.0);
    }
    stats->total_pairs = total_pairs;
    stats->skipped_tokens = skipped_tokens;
  }
  return model;
}

}  // namespace motif2vec

#endif  // MOTIF2VEC_SGNS_HPP
