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

#ifndef MOTIF2VEC_CORPUS_IO_HPP
#define MOTIF2VEC_CORPUS_IO_HPP

#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "motif2vec/errors.hpp"
#include "motif2vec/kern.hpp"
#include "motif2vec/rational.hpp"

namespace motif2vec {

// Song corpus file: one JSON object per line, LF line endings.
// {"durations":["1/1",...],"id":"...","midi_pitches":[60,...]}

inline void write_songs_jsonl(const std::vector<Song>& songs,
                              std::ostream& out) {
  for (const Song& song : songs) {
    nlohmann::json row;
    row["id"] = song.id;
    auto& pitches = row["midi_pitches"] = nlohmann::json::array();
    auto& durations = row["durations"] = nlohmann::json::array();
    for (const NoteEvent& event : song.events) {
      pitches.push_back(event.midi_pitch);
      durations.push_back(format_rational(event.duration));
    }
    out << row.dump() << '\n';
  }
}

inline std::vector<Song> read_songs_jsonl(std::istream& in) {
  std::vector<Song> songs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    nlohmann::json row;
    try {
      row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw IoError("corpus line " + std::to_string(line_no) + ": " + e.what());
    }
    Song song;
    song.id = row.at("id").get<std::string>();
    const auto& pitches = row.at("midi_pitches");
    const auto& durations = row.at("durations");
    if (pitches.size() != durations.size()) {
      throw IoError("corpus line " + std::to_string(line_no) +
                    ": pitch/duration length mismatch");
    }
    for (std::size_t i = 0; i < pitches.size(); ++i) {
      const int midi = pitches[i].get<int>();
      const Rational duration =
          parse_rational(durations[i].get<std::string>());
      if (midi < 0 || midi > 127 || duration <= Rational(0)) {
        throw IoError("corpus line " + std::to_string(line_no) +
                      ": invalid note");
      }
      song.events.push_back({midi, duration});
    }
    songs.push_back(std::move(song));
  }
  return songs;
}

inline std::vector<Song> read_songs_jsonl_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open corpus file: " + path);
  }
  return read_songs_jsonl(in);
}

}  // namespace motif2vec

#endif  // MOTIF2VEC_CORPUS_IO_HPP
