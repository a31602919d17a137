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
// Binary model file, format version 1:
//
//   magic   "MOTIF2VEC\0"                        10 bytes
//   version u8 = 1
//   |V|     u64 little-endian
//   dim     u64 little-endian
//   |V| vocabulary entries in id order:
//     length u32 LE, token text bytes (UTF-8), count u64 LE
//   input matrix  |V| x dim f32 LE, row-major
//   output matrix |V| x dim f32 LE, row-major

#ifndef MOTIF2VEC_MODEL_IO_HPP
#define MOTIF2VEC_MODEL_IO_HPP

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "motif2vec/encoding.hpp"
#include "motif2vec/errors.hpp"
#include "motif2vec/sgns.hpp"

namespace motif2vec {

inline constexpr char kModelMagic[10] = {'M', 'O', 'T', 'I', 'F',
                                         '2', 'V', 'E', 'C', '\0'};
inline constexpr std::uint8_t kModelFormatVersion = 1;

namespace detail {

static_assert(sizeof(float) == 4, "f32 storage assumed");

template <typename T>
void write_le(std::ostream& out, T value) {
  static_assert(std::is_integral_v<T>);
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.put(static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) &
                              0xff));
  }
}

template <typename T>
T read_le(std::istream& in) {
  static_assert(std::is_integral_v<T>);
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    const int byte = in.get();
    if (byte == std::char_traits<char>::eof()) {
      throw IoError("model file truncated");
    }
    value |= static_cast<std::uint64_t>(byte & 0xff) << (8 * i);
  }
  return static_cast<T>(value);
}

inline void write_f32_le(std::ostream& out, float value) {
  std::uint32_t bits;
  std::memcpy(&bits, &value, 4);
  write_le<std::uint32_t>(out, bits);
}

inline float read_f32_le(std::istream& in) {
  const std::uint32_t bits = read_le<std::uint32_t>(in);
  float value;
  std::memcpy(&value, &bits, 4);
  return value;
}

}  // namespace detail

inline void save_model(const EmbeddingModel& model, std::ostream& out) {
  out.write(kModelMagic, sizeof(kModelMagic));
  out.put(static_cast<char>(kModelFormatVersion));
  detail::write_le<std::uint64_t>(out, model.vocab.size());
  detail::write_le<std::uint64_t>(out, static_cast<std::uint64_t>(model.dim));
  for (const VocabEntry& entry : model.vocab.entries()) {
    detail::write_le<std::uint32_t>(
        out, static_cast<std::uint32_t>(entry.text.size()));
    out.write(entry.text.data(),
              static_cast<std::streamsize>(entry.text.size()));
    detail::write_le<std::uint64_t>(out, entry.count);
  }
  for (const float x : model.input_vectors) {
    detail::write_f32_le(out, x);
  }
  for (const float x : model.output_vectors) {
    detail::write_f32_le(out, x);
  }
  if (!out) {
    throw IoError("failed writing model");
  }
}

inline void save_model_file(const EmbeddingModel& model,
                            const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open model file for writing: " + path);
  }
  save_model(model, out);
}

inline EmbeddingModel load_model(std::istream& in) {
  char magic[sizeof(kModelMagic)];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kModelMagic, sizeof(magic)) != 0) {
    throw IoError("not a model file (bad magic)");
  }
  const int version = in.get();
  if (version != kModelFormatVersion) {
    throw IoError("unsupported model format version " +
                  std::to_string(version));
  }
  const std::uint64_t vocab_size = detail::read_le<std::uint64_t>(in);
  const std::uint64_t dim = detail::read_le<std::uint64_t>(in);
  if (vocab_size == 0 || dim == 0 || dim > (1u << 20)) {
    throw IoError("model file header out of range");
  }

  std::unordered_map<std::string, std::uint64_t> counts;
  std::vector<std::string> texts;
  texts.reserve(vocab_size);
  int mw_size = 0;
  for (std::uint64_t i = 0; i < vocab_size; ++i) {
    const std::uint32_t length = detail::read_le<std::uint32_t>(in);
    std::string text(length, '\0');
    in.read(text.data(), length);
    if (!in) {
      throw IoError("model file truncated");
    }
    const std::uint64_t count = detail::read_le<std::uint64_t>(in);
    mw_size = std::max(mw_size, token_size(text));
    counts.emplace(text, count);
    texts.push_back(std::move(text));
  }
  if (counts.size() != vocab_size) {
    throw IoError("duplicate token in model vocabulary");
  }

  EmbeddingModel model;
  model.vocab =
      Vocabulary::from_counts(counts, 0, mw_size >= 2 ? mw_size : 0);
  model.dim = static_cast<int>(dim);
  // Vocabulary::from_counts orders by (count desc, text); the file is
  // written in that same order, so ids must round-trip. Verify anyway.
  for (std::uint64_t i = 0; i < vocab_size; ++i) {
    if (model.vocab.token(static_cast<std::uint32_t>(i)) != texts[i]) {
      throw IoError("model vocabulary not in canonical order");
    }
  }

  const std::size_t cells =
      static_cast<std::size_t>(vocab_size) * static_cast<std::size_t>(dim);
  model.input_vectors.resize(cells);
  model.output_vectors.resize(cells);
  for (float& x : model.input_vectors) {
    x = detail::read_f32_le(in);
  }
  for (float& x : model.output_vectors) {
    x = detail::read_f32_le(in);
  }
  return model;
}

inline EmbeddingModel load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open model file: " + path);
  }
  return load_model(in);
}

}  // namespace motif2vec

#endif  // MOTIF2VEC_MODEL_IO_HPP
