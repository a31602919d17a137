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
// End-to-end pipeline (ingest -> encode -> train -> evaluate) driven by a
// flat key=value configuration file. Command-line flags may override single
// keys; unknown keys are rejected.

#ifndef MOTIF2VEC_PIPELINE_HPP
#define MOTIF2VEC_PIPELINE_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "motif2vec/corpus_io.hpp"
#include "motif2vec/encoding.hpp"
#include "motif2vec/errors.hpp"
#include "motif2vec/evaluation.hpp"
#include "motif2vec/kern.hpp"
#include "motif2vec/model_io.hpp"
#include "motif2vec/sgns.hpp"

namespace motif2vec {

struct PipelineConfig {
  // inputs
  std::string root;          // kern corpus directory
  std::string glob = "*.krn";
  // outputs
  std::string out_dir = "out";
  std::string corpus_out = "corpus.jsonl";
  std::string tokens_out = "tokens.txt";
  std::string model_out = "model.m2v";
  std::string report_out = "report.json";
  // encoding
  int mw_size = 2;
  std::uint64_t min_count_2 = 10;
  std::uint64_t min_count_3 = 5;
  // training
  TrainConfig train;
  // evaluation
  std::size_t n_segments = 2000;
  double h = 0.2;
  Rational tatum = Rational(1, 4);
  bool random_occurrence = false;

  std::uint64_t min_count_for_size() const {
    return mw_size == 3 ? min_count_3 : min_count_2;
  }

  void validate() const {
    if (root.empty()) {
      throw ConfigError("config: 'root' is required");
    }
    if (mw_size != 2 && mw_size != 3) {
      throw ConfigError("config: mw_size must be 2 or 3");
    }
    if (tatum <= Rational(0)) {
      throw ConfigError("config: tatum must be positive");
    }
    train.validate();
  }
};

namespace detail {

inline std::uint64_t parse_u64(const std::string& key,
                               const std::string& value) {
  try {
    return std::stoull(value);
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer for '" + key + "': " + value);
  }
}

inline double parse_double(const std::string& key, const std::string& value) {
  try {
    return std::stod(value);
  } catch (const std::exception&) {
    throw ConfigError("config: bad number for '" + key + "': " + value);
  }
}

inline bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") {
    return true;
  }
  if (value == "false" || value == "0" || value == "no") {
    return false;
  }
  throw ConfigError("config: bad boolean for '" + key + "': " + value);
}

inline std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) {
    return "";
  }
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace detail

// Applies one key=value setting. Throws ConfigError on unknown keys or
// unparseable values.
inline void apply_config_key(PipelineConfig& config, const std::string& key,
                             const std::string& value) {
  using detail::parse_bool;
  using detail::parse_double;
  using detail::parse_u64;

  if (key == "root") {
    config.root = value;
  } else if (key == "glob") {
    config.glob = value;
  } else if (key == "out_dir") {
    config.out_dir = value;
  } else if (key == "corpus_out") {
    config.corpus_out = value;
  } else if (key == "tokens_out") {
    config.tokens_out = value;
  } else if (key == "model_out") {
    config.model_out = value;
  } else if (key == "report_out") {
    config.report_out = value;
  } else if (key == "mw_size") {
    config.mw_size = static_cast<int>(parse_u64(key, value));
  } else if (key == "min_count_2") {
    config.min_count_2 = parse_u64(key, value);
  } else if (key == "min_count_3") {
    config.min_count_3 = parse_u64(key, value);
  } else if (key == "dim") {
    config.train.dim = static_cast<int>(parse_u64(key, value));
  } else if (key == "window") {
    config.train.window = static_cast<int>(parse_u64(key, value));
  } else if (key == "negatives") {
    config.train.negatives = static_cast<int>(parse_u64(key, value));
  } else if (key == "epochs") {
    config.train.epochs = static_cast<int>(parse_u64(key, value));
  } else if (key == "lr_start") {
    config.train.lr_start = parse_double(key, value);
  } else if (key == "lr_end") {
    config.train.lr_end = parse_double(key, value);
  } else if (key == "seed") {
    config.train.seed = parse_u64(key, value);
  } else if (key == "noise_power") {
    config.train.noise_power = parse_double(key, value);
  } else if (key == "train_min_count") {
    config.train.min_count = parse_u64(key, value);
  } else if (key == "subsample") {
    config.train.subsample = parse_double(key, value);
  } else if (key == "workers") {
    config.train.workers = static_cast<int>(parse_u64(key, value));
  } else if (key == "n_segments") {
    config.n_segments = parse_u64(key, value);
  } else if (key == "h") {
    config.h = parse_double(key, value);
  } else if (key == "tatum") {
    config.tatum = parse_rational(value);
  } else if (key == "random_occurrence") {
    config.random_occurrence = parse_bool(key, value);
  } else {
    throw ConfigError("config: unknown key '" + key + "'");
  }
}

// Flat key=value file; blank lines and lines starting with '#' are ignored.
inline PipelineConfig parse_pipeline_config(std::istream& in) {
  PipelineConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed[0] == '#') {
      continue;
    }
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key=value");
    }
    apply_config_key(config, detail::trim(trimmed.substr(0, eq)),
                     detail::trim(trimmed.substr(eq + 1)));
  }
  return config;
}

inline PipelineConfig load_pipeline_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open config file: " + path);
  }
  return parse_pipeline_config(in);
}

struct PipelineResult {
  std::filesystem::path corpus_path;
  std::filesystem::path tokens_path;
  std::filesystem::path model_path;
  std::filesystem::path report_path;
  EvalReport report;
};

// Joins each token sequence with its source song to recover anchor pitch
// and durations; sequences without a match fall back to defaults.
inline std::vector<EvalSegment> build_eval_segments(
    const std::vector<TokenSequence>& token_corpus,
    const std::vector<Song>& songs) {
  std::map<std::string, const Song*> by_id;
  for (const Song& song : songs) {
    by_id.emplace(song.id, &song);
  }
  std::vector<EvalSegment> segments;
  segments.reserve(token_corpus.size());
  for (const TokenSequence& seq : token_corpus) {
    EvalSegment segment;
    segment.tokens = seq;
    const auto it = by_id.find(seq.song_id);
    if (it != by_id.end()) {
      const Song& song = *it->second;
      segment.anchor_pitch = song.events.front().midi_pitch;
      for (const NoteEvent& event : song.events) {
        segment.durations.push_back(event.duration);
      }
    }
    segments.push_back(std::move(segment));
  }
  return segments;
}

// Runs the four stages and writes the intermediate files under out_dir.
// `log` receives one short line per stage.
inline PipelineResult run_pipeline(const PipelineConfig& config,
                                   std::ostream& log) {
  namespace fs = std::filesystem;
  config.validate();
  fs::create_directories(config.out_dir);
  PipelineResult result;
  result.corpus_path = fs::path(config.out_dir) / config.corpus_out;
  result.tokens_path = fs::path(config.out_dir) / config.tokens_out;
  result.model_path = fs::path(config.out_dir) / config.model_out;
  result.report_path = fs::path(config.out_dir) / config.report_out;

  // ingest
  std::vector<std::string> warnings;
  const Corpus corpus = load_corpus(config.root, config.glob, &warnings);
  {
    std::ofstream out(result.corpus_path, std::ios::binary);
    if (!out) {
      throw IoError("cannot write " + result.corpus_path.string());
    }
    write_songs_jsonl(corpus.songs, out);
  }
  log << "ingest: " << corpus.songs.size() << " songs from "
      << corpus.source_manifest.size() << " files, " << corpus.skipped.size()
      << " skipped\n";

  // encode
  std::vector<TokenSequence> unigrams;
  for (const Song& song : corpus.songs) {
    if (song.events.size() >= 2) {
      unigrams.push_back(encode_song(song));
    }
  }
  const Vocabulary mw_vocab = build_multiword_vocab(
      unigrams, config.mw_size, config.min_count_for_size());
  std::vector<TokenSequence> tokens;
  tokens.reserve(unigrams.size());
  for (const TokenSequence& seq : unigrams) {
    tokens.push_back(apply_multiwords(seq, mw_vocab));
  }
  {
    std::ofstream out(result.tokens_path, std::ios::binary);
    if (!out) {
      throw IoError("cannot write " + result.tokens_path.string());
    }
    write_tokens(tokens, out);
  }
  log << "encode: " << mw_vocab.size() << " multi-words (size "
      << config.mw_size << ", min count " << config.min_count_for_size()
      << ")\n";

  // train
  const Vocabulary train_vocab =
      build_token_vocab(tokens, config.train.min_count, config.mw_size);
  const EmbeddingModel model = train(tokens, train_vocab, config.train);
  save_model_file(model, result.model_path.string());
  log << "train: |V| = " << train_vocab.size() << ", dim = "
      << config.train.dim << "\n";

  // evaluate
  EvalConfig eval_config;
  eval_config.n_segments = config.n_segments;
  eval_config.h = config.h;
  eval_config.seed = config.train.seed;
  eval_config.tatum = config.tatum;
  eval_config.workers = config.train.workers;
  eval_config.random_occurrence = config.random_occurrence;
  const std::vector<EvalSegment> segments =
      build_eval_segments(tokens, corpus.songs);
  result.report = run_evaluation(segments, model, eval_config);
  {
    std::ofstream out(result.report_path, std::ios::binary);
    if (!out) {
      throw IoError("cannot write " + result.report_path.string());
    }
    out << report_to_json(result.report).dump(2) << '\n';
  }
  log << "evaluate: " << result.report.evaluated << " segments ("
      << result.report.skipped << " skipped)\n";
  return result;
}

}  // namespace motif2vec

#endif  // MOTIF2VEC_PIPELINE_HPP
