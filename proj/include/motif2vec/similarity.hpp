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
// Cosine similarity and exact nearest-neighbor queries over a trained
// model. Queries run on the input vectors.

#ifndef MOTIF2VEC_SIMILARITY_HPP
#define MOTIF2VEC_SIMILARITY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "motif2vec/errors.hpp"
#include "motif2vec/rng.hpp"
#include "motif2vec/sgns.hpp"

namespace motif2vec {

inline double cosine(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) {
    throw LengthMismatch("cosine: sizes " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  }
  double dot = 0.0, norm_a = 0.0, norm_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * b[i];
    norm_a += static_cast<double>(a[i]) * a[i];
    norm_b += static_cast<double>(b[i]) * b[i];
  }
  if (norm_a == 0.0 || norm_b == 0.0) {
    throw ZeroVector("cosine: zero-norm vector");
  }
  return dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
}

struct Neighbor {
  std::string token;
  double score = 0.0;
};

struct NeighborList {
  std::string query;
  std::vector<Neighbor> neighbors;  // descending score
};

// Accepts or rejects candidate ids for nearest/pick_unrelated; empty means
// "accept all".
using TokenFilter = std::function<bool(std::uint32_t)>;

// Keeps only tokens with the same number of interval parts as `reference`
// (multi-words of the same size substitute without changing note counts).
inline TokenFilter same_size_filter(const EmbeddingModel& model,
                                    std::string_view reference) {
  const int n = token_size(reference);
  return [&model, n](std::uint32_t id) {
    return token_size(model.vocab.token(id)) == n;
  };
}

// Exact top-k by cosine over every other vocabulary entry, ties broken by
// ascending token id.
inline NeighborList nearest(const EmbeddingModel& model,
                            std::string_view token, std::size_t k,
                            const TokenFilter& filter = {}) {
  const auto query_id = model.vocab.id_of(token);
  if (!query_id) {
    throw UnknownToken("nearest: token '" + std::string(token) +
                       "' not in vocabulary");
  }
  if (k < 1) {
    throw ConfigError("nearest: k must be >= 1");
  }

  std::vector<std::pair<double, std::uint32_t>> scored;
  scored.reserve(model.vocab.size());
  const std::span<const float> query_vec = model.input(*query_id);
  for (std::uint32_t id = 0; id < model.vocab.size(); ++id) {
    if (id == *query_id || (filter && !filter(id))) {
      continue;
    }
    scored.emplace_back(cosine(query_vec, model.input(id)), id);
  }
  const std::size_t top = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + top, scored.end(),
                    [](const auto& a, const auto& b) {
                      if (a.first != b.first) {
                        return a.first > b.first;
                      }
                      return a.second < b.second;
                    });

  NeighborList result;
  result.query = std::string(token);
  result.neighbors.reserve(top);
  for (std::size_t i = 0; i < top; ++i) {
    result.neighbors.push_back(
        {model.vocab.token(scored[i].second), scored[i].first});
  }
  return result;
}

// Uniformly random token with cosine(query, candidate) < h. Throws
// NoUnrelatedFound when no candidate qualifies (h too low).
inline std::string pick_unrelated(const EmbeddingModel& model,
                                  std::string_view token, double h, Rng& rng,
                                  const TokenFilter& filter = {}) {
  const auto query_id = model.vocab.id_of(token);
  if (!query_id) {
    throw UnknownToken("pick_unrelated: token '" + std::string(token) +
                       "' not in vocabulary");
  }
  const std::span<const float> query_vec = model.input(*query_id);
  std::vector<std::uint32_t> candidates;
  for (std::uint32_t id = 0; id < model.vocab.size(); ++id) {
    if (id == *query_id || (filter && !filter(id))) {
      continue;
    }
    if (cosine(query_vec, model.input(id)) < h) {
      candidates.push_back(id);
    }
  }
  if (candidates.empty()) {
    throw NoUnrelatedFound("no token with cosine below " + std::to_string(h) +
                           " for '" + std::string(token) + "'");
  }
  const std::uint32_t choice =
      candidates[rng::bounded(rng, candidates.size())];
  return model.vocab.token(choice);
}

}  // namespace motif2vec

#endif  // MOTIF2VEC_SIMILARITY_HPP
