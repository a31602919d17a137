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
// Interval token strings and multi-word motif vocabularies.
//
// A chromatic interval is encoded as its absolute semitone count followed by
// a direction flag: "21" is an ascending major second, "30" a descending
// minor third, and a repeated note is "00". A multi-word joins 2 or 3
// adjacent interval tokens with '_', e.g. "30_00_21".

#ifndef MOTIF2VEC_ENCODING_HPP
#define MOTIF2VEC_ENCODING_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "motif2vec/errors.hpp"
#include "motif2vec/kern.hpp"

namespace motif2vec {

inline std::string format_interval(int delta) {
  if (delta < -127 || delta > 127) {
    throw BadToken("interval out of range: " + std::to_string(delta));
  }
  if (delta == 0) {
    return "00";
  }
  return std::to_string(std::abs(delta)) + (delta > 0 ? "1" : "0");
}

// Strict inverse of format_interval: only canonical tokens are accepted.
inline int decode_interval(std::string_view token) {
  if (token == "00") {
    return 0;
  }
  if (token.size() < 2 ||
      token.find_first_not_of("0123456789") != std::string_view::npos) {
    throw BadToken("bad interval token '" + std::string(token) + "'");
  }
  const std::string_view magnitude = token.substr(0, token.size() - 1);
  const char flag = token.back();
  if (magnitude[0] == '0' || (flag != '0' && flag != '1')) {
    throw BadToken("bad interval token '" + std::string(token) + "'");
  }
  int value = 0;
  for (const char c : magnitude) {
    value = value * 10 + (c - '0');
    if (value > 127) {
      throw BadToken("interval token out of range '" + std::string(token) +
                     "'");
    }
  }
  return flag == '1' ? value : -value;
}

// Number of interval parts in a token: 1 for a plain interval, 2 or 3 for a
// multi-word.
inline int token_size(std::string_view token) {
  return 1 + static_cast<int>(std::count(token.begin(), token.end(), '_'));
}

inline bool is_multiword(std::string_view token) {
  return token.find('_') != std::string_view::npos;
}

// Signed intervals of a token, flattening multi-words.
inline std::vector<int> decode_token_intervals(std::string_view token) {
  std::vector<int> intervals;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = token.find('_', start);
    if (pos == std::string_view::npos) {
      intervals.push_back(decode_interval(token.substr(start)));
      break;
    }
    intervals.push_back(decode_interval(token.substr(start, pos - start)));
    start = pos + 1;
  }
  return intervals;
}

struct TokenSequence {
  std::string song_id;
  std::vector<std::string> tokens;
};

// Signed intervals of a whole sequence, flattening multi-words.
inline std::vector<int> flatten_intervals(const TokenSequence& seq) {
  std::vector<int> intervals;
  for (const std::string& token : seq.tokens) {
    for (const int delta : decode_token_intervals(token)) {
      intervals.push_back(delta);
    }
  }
  return intervals;
}

inline TokenSequence encode_song(const Song& song) {
  if (song.events.size() < 2) {
    throw TooShort("song '" + song.id + "' has fewer than 2 notes");
  }
  TokenSequence seq;
  seq.song_id = song.id;
  seq.tokens.reserve(song.events.size() - 1);
  for (std::size_t i = 0; i + 1 < song.events.size(); ++i) {
    seq.tokens.push_back(format_interval(song.events[i + 1].midi_pitch -
                                         song.events[i].midi_pitch));
  }
  return seq;
}

struct VocabEntry {
  std::string text;
  std::uint64_t count = 0;
};

// Token -> dense id table. Ids are assigned by descending count, ties broken
// by token text, so construction is deterministic.
class Vocabulary {
 public:
  Vocabulary() = default;

  static Vocabulary from_counts(
      const std::unordered_map<std::string, std::uint64_t>& counts,
      std::uint64_t min_count, int n) {
    Vocabulary vocab;
    vocab.n_ = n;
    for (const auto& [text, count] : counts) {
      if (count >= min_count) {
        vocab.entries_.push_back({text, count});
      }
    }
    std::sort(vocab.entries_.begin(), vocab.entries_.end(),
              [](const VocabEntry& a, const VocabEntry& b) {
                if (a.count != b.count) {
                  return a.count > b.count;
                }
                return a.text < b.text;
              });
    for (std::uint32_t id = 0; id < vocab.entries_.size(); ++id) {
      vocab.index_.emplace(vocab.entries_[id].text, id);
    }
    return vocab;
  }

  std::size_t size() const { return entries_.size(); }
  int n() const { return n_; }

  bool contains(std::string_view token) const {
    return index_.find(std::string(token)) != index_.end();
  }

  std::optional<std::uint32_t> id_of(std::string_view token) const {
    const auto it = index_.find(std::string(token));
    if (it == index_.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  const std::string& token(std::uint32_t id) const {
    return entries_.at(id).text;
  }

  std::uint64_t count(std::uint32_t id) const { return entries_.at(id).count; }

  const std::vector<VocabEntry>& entries() const { return entries_; }

 private:
  std::vector<VocabEntry> entries_;
  std::unordered_map<std::string, std::uint32_t> index_;
  int n_ = 0;
};

// Counts every run of n adjacent tokens (within-song sliding window) and
// keeps those seen at least min_count times. The input must be unigram
// interval sequences.
inline Vocabulary build_multiword_vocab(std::span<const TokenSequence> corpus,
                                        int n, std::uint64_t min_count) {
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const TokenSequence& seq : corpus) {
    if (seq.tokens.size() < static_cast<std::size_t>(n)) {
      continue;
    }
    for (std::size_t i = 0; i + n <= seq.tokens.size(); ++i) {
      std::string text = seq.tokens[i];
      for (int j = 1; j < n; ++j) {
        text += '_';
        text += seq.tokens[i + j];
      }
      ++counts[text];
    }
  }
  return Vocabulary::from_counts(counts, min_count, n);
}

// Counts whole tokens as-is; used to build the training vocabulary from a
// substituted corpus (multi-words and leftover unigrams alike).
inline Vocabulary build_token_vocab(std::span<const TokenSequence> corpus,
                                    std::uint64_t min_count, int n) {
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const TokenSequence& seq : corpus) {
    for (const std::string& token : seq.tokens) {
      ++counts[token];
    }
  }
  return Vocabulary::from_counts(counts, min_count, n);
}

// Greedy left-to-right, non-overlapping substitution: at each position, if
// the next n tokens joined are in the vocabulary, emit the multi-word and
// advance by n, else emit the single token. Flattened intervals are
// preserved exactly.
inline TokenSequence apply_multiwords(const TokenSequence& seq,
                                      const Vocabulary& vocab) {
  const int n = vocab.n();
  if (n < 2 || vocab.size() == 0) {
    return seq;
  }
  TokenSequence out;
  out.song_id = seq.song_id;
  std::size_t i = 0;
  while (i < seq.tokens.size()) {
    if (i + n <= seq.tokens.size()) {
      std::string joined = seq.tokens[i];
      for (int j = 1; j < n; ++j) {
        joined += '_';
        joined += seq.tokens[i + j];
      }
      if (vocab.contains(joined)) {
        out.tokens.push_back(std::move(joined));
        i += n;
        continue;
      }
    }
    out.tokens.push_back(seq.tokens[i]);
    ++i;
  }
  return out;
}

// Token corpus file: one song per line, first field the song id, then the
// space-separated tokens.

inline void write_tokens(std::span<const TokenSequence> corpus,
                         std::ostream& out) {
  for (const TokenSequence& seq : corpus) {
    out << seq.song_id;
    for (const std::string& token : seq.tokens) {
      out << ' ' << token;
    }
    out << '\n';
  }
}

inline std::vector<TokenSequence> read_tokens(std::istream& in) {
  std::vector<TokenSequence> corpus;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    std::istringstream fields(line);
    TokenSequence seq;
    fields >> seq.song_id;
    std::string token;
    while (fields >> token) {
      seq.tokens.push_back(std::move(token));
    }
    if (!seq.tokens.empty()) {
      corpus.push_back(std::move(seq));
    }
  }
  return corpus;
}

inline std::vector<TokenSequence> read_tokens_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open token file: " + path);
  }
  return read_tokens(in);
}

}  // namespace motif2vec

#endif  // MOTIF2VEC_ENCODING_HPP
