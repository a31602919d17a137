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

#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "motif2vec/encoding.hpp"
#include "motif2vec/rng.hpp"

using motif2vec::apply_multiwords;
using motif2vec::BadToken;
using motif2vec::build_multiword_vocab;
using motif2vec::decode_interval;
using motif2vec::encode_song;
using motif2vec::flatten_intervals;
using motif2vec::format_interval;
using motif2vec::NoteEvent;
using motif2vec::Rational;
using motif2vec::Rng;
using motif2vec::Song;
using motif2vec::TokenSequence;
using motif2vec::TooShort;
using motif2vec::Vocabulary;

namespace {

Song song_from_pitches(const std::vector<int>& pitches) {
  Song song;
  song.id = "s";
  for (const int p : pitches) {
    song.events.push_back(NoteEvent{p, Rational(1)});
  }
  return song;
}

// Random unigram corpus over a small interval alphabet.
std::vector<TokenSequence> random_corpus(Rng& rng, std::size_t songs,
                                         std::size_t min_len,
                                         std::size_t max_len) {
  static const std::vector<int> alphabet = {-4, -2, -1, 0, 1, 2, 4, 7};
  std::vector<TokenSequence> corpus;
  for (std::size_t s = 0; s < songs; ++s) {
    TokenSequence seq;
    seq.song_id = "s" + std::to_string(s);
    const std::size_t len =
        min_len + motif2vec::rng::bounded(rng, max_len - min_len + 1);
    for (std::size_t i = 0; i < len; ++i) {
      seq.tokens.push_back(format_interval(
          alphabet[motif2vec::rng::bounded(rng, alphabet.size())]));
    }
    corpus.push_back(std::move(seq));
  }
  return corpus;
}

}  // namespace

TEST_CASE("interval formatting follows the token grammar") {
  CHECK(format_interval(2) == "21");
  CHECK(format_interval(-3) == "30");
  CHECK(format_interval(0) == "00");
  CHECK(format_interval(11) == "111");
  CHECK(format_interval(-11) == "110");
  CHECK(format_interval(127) == "1271");
  CHECK_THROWS_AS(format_interval(128), BadToken);
}

TEST_CASE("decoding inverts formatting") {
  CHECK(decode_interval("110") == -11);
  CHECK(decode_interval("21") == 2);
  CHECK(decode_interval("00") == 0);
  for (int delta = -60; delta <= 60; ++delta) {
    CHECK(decode_interval(format_interval(delta)) == delta);
  }
}

TEST_CASE("malformed interval tokens are rejected") {
  for (const std::string bad :
       {"", "0", "1", "01", "001", "x1", "2 1", "1281", "-21", "021"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(decode_interval(bad), BadToken);
  }
}

TEST_CASE("songs encode to one token per interval") {
  const TokenSequence seq = encode_song(song_from_pitches({60, 62, 59, 59}));
  CHECK(seq.tokens == std::vector<std::string>{"21", "30", "00"});
  CHECK(encode_song(song_from_pitches({60, 60})).tokens ==
        std::vector<std::string>{"00"});
  CHECK_THROWS_AS(encode_song(song_from_pitches({60})), TooShort);
}

TEST_CASE("vocabulary keeps multi-words at the count threshold") {
  std::vector<TokenSequence> corpus;
  for (int i = 0; i < 12; ++i) {
    corpus.push_back({"a" + std::to_string(i), {"21", "00"}});
  }
  for (int i = 0; i < 9; ++i) {
    corpus.push_back({"b" + std::to_string(i), {"30", "21"}});
  }
  const Vocabulary vocab = build_multiword_vocab(corpus, 2, 10);
  REQUIRE(vocab.size() == 1);
  CHECK(vocab.contains("21_00"));
  CHECK_FALSE(vocab.contains("30_21"));
  CHECK(vocab.count(*vocab.id_of("21_00")) == 12);
}

TEST_CASE("size-3 multi-words come from interval triples") {
  const std::vector<TokenSequence> corpus = {{"s", {"30", "00", "21"}}};
  const Vocabulary vocab = build_multiword_vocab(corpus, 3, 1);
  REQUIRE(vocab.size() == 1);
  CHECK(vocab.contains("30_00_21"));
}

TEST_CASE("empty corpus gives an empty vocabulary") {
  const std::vector<TokenSequence> corpus;
  CHECK(build_multiword_vocab(corpus, 2, 10).size() == 0);
}

TEST_CASE("substitution is greedy left-to-right and non-overlapping") {
  std::unordered_map<std::string, std::uint64_t> counts = {{"30_00", 1}};
  const Vocabulary vocab = Vocabulary::from_counts(counts, 1, 2);
  const TokenSequence seq{"s", {"30", "00", "21", "50"}};
  CHECK(apply_multiwords(seq, vocab).tokens ==
        std::vector<std::string>{"30_00", "21", "50"});

  std::unordered_map<std::string, std::uint64_t> rep = {{"21_21", 1}};
  const Vocabulary vocab2 = Vocabulary::from_counts(rep, 1, 2);
  const TokenSequence seq2{"s", {"21", "21", "21"}};
  CHECK(apply_multiwords(seq2, vocab2).tokens ==
        std::vector<std::string>{"21_21", "21"});
}

TEST_CASE("empty vocabulary leaves sequences unchanged") {
  const Vocabulary vocab;
  const TokenSequence seq{"s", {"21", "30"}};
  CHECK(apply_multiwords(seq, vocab).tokens == seq.tokens);
}

TEST_CASE("substitution preserves flattened intervals on random corpora") {
  Rng rng(20260809);
  for (int round = 0; round < 50; ++round) {
    const std::vector<TokenSequence> corpus =
        random_corpus(rng, 20, 2, 30);
    const int n = round % 2 == 0 ? 2 : 3;
    const Vocabulary vocab = build_multiword_vocab(corpus, n, 2);
    for (const TokenSequence& seq : corpus) {
      const TokenSequence out = apply_multiwords(seq, vocab);
      CHECK(flatten_intervals(out) == flatten_intervals(seq));

      // Token count shrinks by (n - 1) per substitution.
      std::size_t substitutions = 0;
      for (const std::string& token : out.tokens) {
        if (motif2vec::is_multiword(token)) {
          ++substitutions;
        }
      }
      CHECK(out.tokens.size() ==
            seq.tokens.size() - (n - 1) * substitutions);
    }
  }
}

TEST_CASE("raising min_count never adds vocabulary entries") {
  Rng rng(7);
  const std::vector<TokenSequence> corpus = random_corpus(rng, 30, 2, 40);
  for (const int n : {2, 3}) {
    const Vocabulary loose = build_multiword_vocab(corpus, n, 2);
    const Vocabulary strict = build_multiword_vocab(corpus, n, 5);
    CHECK(strict.size() <= loose.size());
    for (const motif2vec::VocabEntry& entry : strict.entries()) {
      CHECK(loose.contains(entry.text));
    }
  }
}

TEST_CASE("vocabulary ids are dense and ordered by count") {
  std::unordered_map<std::string, std::uint64_t> counts = {
      {"21", 5}, {"30", 9}, {"00", 9}, {"41", 1}};
  const Vocabulary vocab = Vocabulary::from_counts(counts, 2, 0);
  REQUIRE(vocab.size() == 3);
  // count desc, ties by text
  CHECK(vocab.token(0) == "00");
  CHECK(vocab.token(1) == "30");
  CHECK(vocab.token(2) == "21");
  CHECK_FALSE(vocab.contains("41"));
}

TEST_CASE("token files round-trip") {
  const std::vector<TokenSequence> corpus = {{"a.krn", {"21_00", "30"}},
                                             {"b.krn#2", {"00"}}};
  std::stringstream buffer;
  motif2vec::write_tokens(corpus, buffer);
  CHECK(buffer.str() == "a.krn 21_00 30\nb.krn#2 00\n");
  const std::vector<TokenSequence> back = motif2vec::read_tokens(buffer);
  REQUIRE(back.size() == 2);
  CHECK(back[0].song_id == "a.krn");
  CHECK(back[0].tokens == corpus[0].tokens);
  CHECK(back[1].tokens == corpus[1].tokens);
}
