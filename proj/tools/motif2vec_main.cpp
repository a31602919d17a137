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
// Command-line front end: ingest, encode, train, query, simdist, evaluate
// and pipeline subcommands. Exit codes: 0 success, 1 usage error, 2 data
// error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "motif2vec/motif2vec.hpp"

namespace {

constexpr const char* kVersion = "motif2vec 0.1.0 (model format 1)";

std::string interval_gloss(const std::string& token) {
  std::string gloss;
  for (const int delta : motif2vec::decode_token_intervals(token)) {
    if (!gloss.empty()) {
      gloss += ',';
    }
    if (delta > 0) {
      gloss += '+';
    }
    gloss += std::to_string(delta);
  }
  return gloss;
}

std::vector<std::string> split_tokens(const std::string& text) {
  std::vector<std::string> tokens;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    tokens.push_back(token);
  }
  return tokens;
}

struct IngestArgs {
  std::string root;
  std::string glob = "*.krn";
  std::string out;
};

struct EncodeArgs {
  std::string in;
  int mw_size = 2;
  std::uint64_t min_count = 0;  // 0 = default for size (10 or 5)
  std::string out;
};

struct TrainArgs {
  std::string tokens;
  std::string out;
  motif2vec::TrainConfig config;
  int mw_size = 0;  // informational tag stored in the vocabulary
};

struct QueryArgs {
  std::string model;
  std::string token;
  std::size_t k = 10;
};

struct SimdistArgs {
  std::string measure;
  std::string a;
  std::string b;
  int anchor = 60;
  std::string tatum = "1/4";
};

struct EvaluateArgs {
  std::string model;
  std::string tokens;
  std::string corpus;  // optional, recovers anchors/durations
  std::string report;
  std::size_t segments = 2000;
  double h = 0.2;
  std::uint64_t seed = 42;
  std::string tatum = "1/4";
  int workers = 1;
  bool random_occurrence = false;
};

void run_ingest(const IngestArgs& args) {
  std::vector<std::string> warnings;
  const motif2vec::Corpus corpus =
      motif2vec::load_corpus(args.root, args.glob, &warnings);
  for (const std::string& w : warnings) {
    std::cerr << "warning: " << w << '\n';
  }
  for (const motif2vec::SkipReport& skip : corpus.skipped) {
    std::cerr << "skipped " << skip.path << ": " << skip.reason << '\n';
  }
  std::ofstream out(args.out, std::ios::binary);
  if (!out) {
    throw motif2vec::IoError("cannot write " + args.out);
  }
  motif2vec::write_songs_jsonl(corpus.songs, out);
  std::cerr << "wrote " << corpus.songs.size() << " songs to " << args.out
            << '\n';
}

void run_encode(const EncodeArgs& args) {
  const std::vector<motif2vec::Song> songs =
      motif2vec::read_songs_jsonl_file(args.in);
  std::vector<motif2vec::TokenSequence> unigrams;
  std::size_t too_short = 0;
  for (const motif2vec::Song& song : songs) {
    if (song.events.size() < 2) {
      ++too_short;
      continue;
    }
    unigrams.push_back(motif2vec::encode_song(song));
  }
  if (too_short > 0) {
    std::cerr << "skipped " << too_short << " songs with fewer than 2 notes\n";
  }
  const std::uint64_t min_count =
      args.min_count > 0 ? args.min_count : (args.mw_size == 3 ? 5 : 10);
  const motif2vec::Vocabulary vocab =
      motif2vec::build_multiword_vocab(unigrams, args.mw_size, min_count);
  std::vector<motif2vec::TokenSequence> tokens;
  tokens.reserve(unigrams.size());
  for (const motif2vec::TokenSequence& seq : unigrams) {
    tokens.push_back(motif2vec::apply_multiwords(seq, vocab));
  }
  std::ofstream out(args.out, std::ios::binary);
  if (!out) {
    throw motif2vec::IoError("cannot write " + args.out);
  }
  motif2vec::write_tokens(tokens, out);
  std::cerr << "multi-word vocabulary: " << vocab.size() << " entries (size "
            << args.mw_size << ", min count " << min_count << ")\n";
}

void run_train(const TrainArgs& args) {
  const std::vector<motif2vec::TokenSequence> corpus =
      motif2vec::read_tokens_file(args.tokens);
  int mw_size = args.mw_size;
  if (mw_size == 0) {
    for (const motif2vec::TokenSequence& seq : corpus) {
      for (const std::string& token : seq.tokens) {
        mw_size = std::max(mw_size, motif2vec::token_size(token));
      }
    }
    if (mw_size < 2) {
      mw_size = 0;
    }
  }
  const motif2vec::Vocabulary vocab =
      motif2vec::build_token_vocab(corpus, args.config.min_count, mw_size);
  motif2vec::TrainStats stats;
  const motif2vec::EmbeddingModel model =
      motif2vec::train(corpus, vocab, args.config, &stats);
  motif2vec::save_model_file(model, args.out);
  std::cerr << "trained |V| = " << vocab.size() << ", dim = "
            << args.config.dim << ", " << stats.total_pairs << " pairs";
  if (!stats.epoch_loss.empty()) {
    std::cerr << ", final epoch loss " << stats.epoch_loss.back();
  }
  std::cerr << "\nwrote " << args.out << '\n';
}

void run_query(const QueryArgs& args) {
  const motif2vec::EmbeddingModel model =
      motif2vec::load_model_file(args.model);
  const motif2vec::NeighborList neighbors =
      motif2vec::nearest(model, args.token, args.k);
  std::size_t rank = 1;
  for (const motif2vec::Neighbor& n : neighbors.neighbors) {
    char score[32];
    std::snprintf(score, sizeof(score), "%.6f", n.score);
    std::cout << rank++ << '\t' << n.token << '\t' << score << '\t'
              << interval_gloss(n.token) << '\n';
  }
}

void run_simdist(const SimdistArgs& args) {
  motif2vec::TokenSequence a{"a", split_tokens(args.a)};
  motif2vec::TokenSequence b{"b", split_tokens(args.b)};
  if (a.tokens.empty() || b.tokens.empty()) {
    throw motif2vec::EmptySequence("simdist: empty token sequence");
  }
  const motif2vec::Rational tatum = motif2vec::parse_rational(args.tatum);
  const auto realize_uniform = [&](const motif2vec::TokenSequence& seq) {
    const std::size_t notes = motif2vec::flatten_intervals(seq).size() + 1;
    const std::vector<motif2vec::Rational> durations(notes,
                                                     motif2vec::Rational(1));
    return motif2vec::realize(seq, args.anchor, durations, tatum);
  };
  const motif2vec::SegmentRealization ra = realize_uniform(a);
  const motif2vec::SegmentRealization rb = realize_uniform(b);

  double score = 0.0;
  if (args.measure == "diffint") {
    score = motif2vec::diffint(ra.intervals, rb.intervals);
  } else if (args.measure == "citydist") {
    score = motif2vec::citydist(ra.pitches, rb.pitches);
  } else if (args.measure == "corrdist") {
    score = motif2vec::corrdist(ra.weighted_series, rb.weighted_series);
  }
  char line[32];
  std::snprintf(line, sizeof(line), "%.6f", score);
  std::cout << line << '\n';
}

void run_evaluate(const EvaluateArgs& args) {
  const motif2vec::EmbeddingModel model =
      motif2vec::load_model_file(args.model);
  const std::vector<motif2vec::TokenSequence> tokens =
      motif2vec::read_tokens_file(args.tokens);
  std::vector<motif2vec::Song> songs;
  if (!args.corpus.empty()) {
    songs = motif2vec::read_songs_jsonl_file(args.corpus);
  }
  const std::vector<motif2vec::EvalSegment> segments =
      motif2vec::build_eval_segments(tokens, songs);

  motif2vec::EvalConfig config;
  config.n_segments = args.segments;
  config.h = args.h;
  config.seed = args.seed;
  config.tatum = motif2vec::parse_rational(args.tatum);
  config.workers = args.workers;
  config.random_occurrence = args.random_occurrence;

  const motif2vec::EvalReport report =
      motif2vec::run_evaluation(segments, model, config);
  std::ofstream out(args.report, std::ios::binary);
  if (!out) {
    throw motif2vec::IoError("cannot write " + args.report);
  }
  out << motif2vec::report_to_json(report).dump(2) << '\n';
  std::cout << motif2vec::render_table(report);
  for (const std::string& measure : motif2vec::measure_names()) {
    const auto it = report.wilcoxon.find(measure);
    if (it != report.wilcoxon.end()) {
      std::cout << "wilcoxon " << measure << ": p = " << it->second.p_value
                << '\n';
    }
  }
  std::cerr << "wrote " << args.report << '\n';
}

const std::vector<std::string>& pipeline_override_keys() {
  static const std::vector<std::string> keys = {
      "root",       "glob",        "out_dir",     "corpus_out",
      "tokens_out", "model_out",   "report_out",  "mw_size",
      "min_count_2", "min_count_3", "dim",        "window",
      "negatives",  "epochs",      "lr_start",    "lr_end",
      "seed",       "noise_power", "train_min_count", "subsample",
      "workers",    "n_segments",  "h",           "tatum",
      "random_occurrence"};
  return keys;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Motif embeddings for monophonic folksong corpora"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  // --h is a domain flag (similarity threshold), so help is --help only
  app.set_help_flag("--help", "print help and exit");

  IngestArgs ingest_args;
  CLI::App* ingest = app.add_subcommand(
      "ingest", "Parse a directory of **kern files into a song corpus");
  ingest->set_help_flag("--help", "print help and exit");
  ingest->add_option("--root", ingest_args.root, "corpus root directory")
      ->required();
  ingest->add_option("--glob", ingest_args.glob, "filename pattern")
      ->capture_default_str();
  ingest->add_option("--out", ingest_args.out, "output corpus (JSONL)")
      ->required();

  EncodeArgs encode_args;
  CLI::App* encode = app.add_subcommand(
      "encode", "Interval-encode a corpus and substitute multi-words");
  encode->set_help_flag("--help", "print help and exit");
  encode->add_option("--in", encode_args.in, "input corpus (JSONL)")
      ->required();
  encode->add_option("--mw-size", encode_args.mw_size, "multi-word size")
      ->check(CLI::IsMember({2, 3}));
  encode->add_option("--min-count", encode_args.min_count,
                     "vocabulary threshold (default 10 for size 2, 5 for 3)");
  encode->add_option("--out", encode_args.out, "output token file")
      ->required();

  TrainArgs train_args;
  CLI::App* train = app.add_subcommand(
      "train", "Train skip-gram embeddings with negative sampling");
  train->set_help_flag("--help", "print help and exit");
  train->add_option("--tokens", train_args.tokens, "token corpus file")
      ->required();
  train->add_option("--out", train_args.out, "output model file")->required();
  train->add_option("--dim", train_args.config.dim, "embedding dimension")
      ->capture_default_str();
  train->add_option("--window", train_args.config.window,
                    "max context offset")
      ->capture_default_str();
  train->add_option("--negatives", train_args.config.negatives,
                    "negative samples per pair")
      ->capture_default_str();
  train->add_option("--epochs", train_args.config.epochs, "training epochs")
      ->capture_default_str();
  train->add_option("--lr-start", train_args.config.lr_start,
                    "initial learning rate")
      ->capture_default_str();
  train->add_option("--lr-end", train_args.config.lr_end,
                    "final learning rate")
      ->capture_default_str();
  train->add_option("--seed", train_args.config.seed, "RNG seed")
      ->capture_default_str();
  train->add_option("--noise-power", train_args.config.noise_power,
                    "unigram noise exponent")
      ->capture_default_str();
  train->add_option("--min-count", train_args.config.min_count,
                    "training vocabulary floor")
      ->capture_default_str();
  train->add_option("--subsample", train_args.config.subsample,
                    "frequent-token subsampling threshold (0 = off)")
      ->capture_default_str();
  train->add_option("--workers", train_args.config.workers,
                    "parallel workers (1 = deterministic)")
      ->capture_default_str();

  QueryArgs query_args;
  CLI::App* query =
      app.add_subcommand("query", "Nearest neighbors of a token by cosine");
  query->set_help_flag("--help", "print help and exit");
  query->add_option("--model", query_args.model, "model file")->required();
  query->add_option("--token", query_args.token, "query token")->required();
  query->add_option("--k", query_args.k, "number of neighbors")
      ->capture_default_str();

  SimdistArgs simdist_args;
  CLI::App* simdist = app.add_subcommand(
      "simdist", "Melodic similarity between two token sequences");
  simdist->set_help_flag("--help", "print help and exit");
  simdist
      ->add_option("--measure", simdist_args.measure,
                   "diffint, citydist or corrdist")
      ->required()
      ->check(CLI::IsMember({"diffint", "citydist", "corrdist"}));
  simdist->add_option("--a", simdist_args.a, "first token sequence")
      ->required();
  simdist->add_option("--b", simdist_args.b, "second token sequence")
      ->required();
  simdist->add_option("--anchor", simdist_args.anchor,
                      "anchor MIDI pitch")
      ->capture_default_str();
  simdist->add_option("--tatum", simdist_args.tatum,
                      "tatum as a rational of a quarter note")
      ->capture_default_str();

  EvaluateArgs evaluate_args;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Substitution-based embedding evaluation");
  evaluate->set_help_flag("--help", "print help and exit");
  evaluate->add_option("--model", evaluate_args.model, "model file")
      ->required();
  evaluate->add_option("--tokens", evaluate_args.tokens, "token corpus file")
      ->required();
  evaluate->add_option("--corpus", evaluate_args.corpus,
                       "song corpus (JSONL) for anchors and durations");
  evaluate->add_option("--report", evaluate_args.report, "output report JSON")
      ->required();
  evaluate->add_option("--segments", evaluate_args.segments,
                       "number of sampled segments")
      ->capture_default_str();
  evaluate->add_option("--h", evaluate_args.h,
                       "unrelatedness cosine threshold")
      ->capture_default_str();
  evaluate->add_option("--seed", evaluate_args.seed, "RNG seed")
      ->capture_default_str();
  evaluate->add_option("--tatum", evaluate_args.tatum,
                       "tatum as a rational of a quarter note")
      ->capture_default_str();
  evaluate->add_option("--workers", evaluate_args.workers,
                       "parallel workers")
      ->capture_default_str();
  evaluate->add_flag("--random-occurrence", evaluate_args.random_occurrence,
                     "replace a seeded-random multi-word occurrence instead "
                     "of the first");

  std::string pipeline_config_path;
  std::map<std::string, std::string> pipeline_overrides;
  CLI::App* pipeline = app.add_subcommand(
      "pipeline", "Run ingest, encode, train and evaluate from one config");
  pipeline->set_help_flag("--help", "print help and exit");
  pipeline->add_option("--config", pipeline_config_path,
                       "flat key=value config file");
  for (const std::string& key : pipeline_override_keys()) {
    std::string flag = "--" + key;
    for (char& c : flag) {
      if (c == '_') {
        c = '-';
      }
    }
    pipeline->add_option(flag, pipeline_overrides[key],
                         "override config key " + key);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n";
    const CLI::App* failed = app.get_subcommands().empty()
                                 ? &app
                                 : app.get_subcommands().front();
    std::cerr << failed->help();
    return 1;
  }

  try {
    if (app.got_subcommand(ingest)) {
      run_ingest(ingest_args);
    } else if (app.got_subcommand(encode)) {
      run_encode(encode_args);
    } else if (app.got_subcommand(train)) {
      run_train(train_args);
    } else if (app.got_subcommand(query)) {
      run_query(query_args);
    } else if (app.got_subcommand(simdist)) {
      run_simdist(simdist_args);
    } else if (app.got_subcommand(evaluate)) {
      run_evaluate(evaluate_args);
    } else if (app.got_subcommand(pipeline)) {
      motif2vec::PipelineConfig config;
      if (!pipeline_config_path.empty()) {
        config = motif2vec::load_pipeline_config(pipeline_config_path);
      }
      for (const std::string& key : pipeline_override_keys()) {
        const CLI::Option* opt = pipeline->get_option("--" + [&] {
          std::string flag = key;
          for (char& c : flag) {
            if (c == '_') {
              c = '-';
            }
          }
          return flag;
        }());
        if (opt->count() > 0) {
          motif2vec::apply_config_key(config, key, pipeline_overrides[key]);
        }
      }
      motif2vec::PipelineResult result =
          motif2vec::run_pipeline(config, std::cerr);
      std::cout << motif2vec::render_table(result.report);
    }
  } catch (const motif2vec::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const motif2vec::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
