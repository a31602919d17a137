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

#include <cstring>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "motif2vec/model_io.hpp"

using motif2vec::EmbeddingModel;
using motif2vec::load_model;
using motif2vec::save_model;
using motif2vec::Vocabulary;

namespace {

EmbeddingModel tiny_model() {
  std::unordered_map<std::string, std::uint64_t> counts = {{"21", 7},
                                                           {"30", 3}};
  EmbeddingModel model;
  model.vocab = Vocabulary::from_counts(counts, 1, 0);
  model.dim = 2;
  model.input_vectors = {1.0f, -2.0f, 0.5f, 0.25f};
  model.output_vectors = {0.0f, 3.0f, -1.5f, 8.0f};
  return model;
}

}  // namespace

TEST_CASE("model files round-trip exactly") {
  const EmbeddingModel model = tiny_model();
  std::stringstream buffer;
  save_model(model, buffer);
  const EmbeddingModel back = load_model(buffer);
  CHECK(back.dim == model.dim);
  REQUIRE(back.vocab.size() == model.vocab.size());
  for (std::uint32_t id = 0; id < model.vocab.size(); ++id) {
    CHECK(back.vocab.token(id) == model.vocab.token(id));
    CHECK(back.vocab.count(id) == model.vocab.count(id));
  }
  CHECK(back.input_vectors == model.input_vectors);
  CHECK(back.output_vectors == model.output_vectors);
}

TEST_CASE("byte layout is pinned") {
  const EmbeddingModel model = tiny_model();
  std::stringstream buffer;
  save_model(model, buffer);
  const std::string bytes = buffer.str();

  // header: magic, version, |V|, dim
  REQUIRE(bytes.size() >= 27);
  CHECK(std::memcmp(bytes.data(), "MOTIF2VEC\0", 10) == 0);
  CHECK(bytes[10] == 1);
  const unsigned char* p =
      reinterpret_cast<const unsigned char*>(bytes.data());
  CHECK(p[11] == 2);  // |V| = 2, little-endian
  for (int i = 12; i < 19; ++i) {
    CHECK(p[i] == 0);
  }
  CHECK(p[19] == 2);  // dim = 2

  // first vocab entry: id 0 is "21" (count 7 beats count 3)
  CHECK(p[27] == 2);  // text length 2, u32 LE
  CHECK(bytes[31] == '2');
  CHECK(bytes[32] == '1');
  CHECK(p[33] == 7);  // count u64 LE

  // total size: header 27 + entries (4+2+8)*2 + floats 4*8
  CHECK(bytes.size() == 27 + 14 * 2 + 32);

  // first float of the input matrix is 1.0f -> 0x3f800000 LE
  const std::size_t f = 27 + 28;
  CHECK(p[f + 0] == 0x00);
  CHECK(p[f + 1] == 0x00);
  CHECK(p[f + 2] == 0x80);
  CHECK(p[f + 3] == 0x3f);
}

TEST_CASE("bad magic is rejected") {
  std::stringstream buffer;
  buffer << "NOTAMODEL!" << std::string(40, '\0');
  CHECK_THROWS_AS(load_model(buffer), motif2vec::IoError);
}

TEST_CASE("truncated files are rejected") {
  const EmbeddingModel model = tiny_model();
  std::stringstream buffer;
  save_model(model, buffer);
  const std::string bytes = buffer.str();
  for (const std::size_t cut : {5ul, 15ul, 25ul, bytes.size() - 3}) {
    std::stringstream truncated(bytes.substr(0, cut));
    CHECK_THROWS_AS(load_model(truncated), motif2vec::IoError);
  }
}

TEST_CASE("missing files raise IoError") {
  CHECK_THROWS_AS(motif2vec::load_model_file("/nonexistent/model.m2v"),
                  motif2vec::IoError);
}
