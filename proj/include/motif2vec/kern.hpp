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
// Parser for a monophonic subset of the Humdrum **kern format.
//
// Only the first **kern spine of each movement is read. Rests, barlines,
// grace notes and editorial marks are dropped; tied notes are merged into a
// single event with the summed duration; for chords the first listed note
// wins. Spine splits/merges and the rest of full Humdrum syntax are out of
// scope.

#ifndef MOTIF2VEC_KERN_HPP
#define MOTIF2VEC_KERN_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "motif2vec/errors.hpp"
#include "motif2vec/rational.hpp"

namespace motif2vec {

struct NoteEvent {
  int midi_pitch = 0;   // 0..127, MIDI convention (kern 'c' = C4 = 60)
  Rational duration;    // quarter-note units, > 0

  bool operator==(const NoteEvent&) const = default;
};

struct Song {
  std::string id;  // source filename, plus "#<n>" for movements after the first
  std::vector<NoteEvent> events;
};

struct ManifestEntry {
  std::string path;
  std::size_t song_count = 0;
};

struct SkipReport {
  std::string path;
  std::string reason;
};

struct Corpus {
  std::vector<Song> songs;
  std::vector<ManifestEntry> source_manifest;
  std::vector<SkipReport> skipped;
};

namespace detail {

inline bool is_pitch_letter(char c) {
  const char l = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return l >= 'a' && l <= 'g';
}

inline int pitch_class_of(char letter) {
  switch (std::tolower(static_cast<unsigned char>(letter))) {
    case 'c': return 0;
    case 'd': return 2;
    case 'e': return 4;
    case 'f': return 5;
    case 'g': return 7;
    case 'a': return 9;
    case 'b': return 11;
  }
  return -1;
}

// Characters that may decorate a kern note token without affecting pitch or
// duration: beams, slurs, stems, articulations, ornaments, fermatas, ...
inline bool is_ignorable_mark(char c) {
  static const std::string_view marks =
      "LJKkMmWwTtSsPpOoUuXxYyZzIiNnVv$R:;,'`\"~^<>()&%@+|\\/{}";
  return marks.find(c) != std::string_view::npos;
}

struct ParsedNote {
  int midi_pitch;
  Rational duration;
  bool tie_open;
  bool tie_mid;
  bool tie_close;
};

// One note token, e.g. "8.cc#", "[4C", "2e-]". Chord handling (split on
// spaces) happens in the caller.
inline ParsedNote parse_note_token(std::string_view token, std::size_t line) {
  ParsedNote note{0, Rational(0), false, false, false};

  std::string digits;
  int dots = 0;
  char pitch_letter = 0;
  int letter_count = 0;
  int accidental = 0;
  bool natural = false;

  for (std::size_t i = 0; i < token.size(); ++i) {
    const char c = token[i];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
    } else if (c == '.') {
      ++dots;
    } else if (is_pitch_letter(c)) {
      if (pitch_letter == 0) {
        pitch_letter = c;
        letter_count = 1;
      } else if (c == pitch_letter) {
        ++letter_count;
      } else {
        throw MalformedKern(line, "mixed pitch letters in token '" +
                                      std::string(token) + "'");
      }
    } else if (c == '#') {
      ++accidental;
    } else if (c == '-') {
      --accidental;
    } else if (c == 'n') {
      natural = true;
    } else if (c == '[') {
      note.tie_open = true;
    } else if (c == ']') {
      note.tie_close = true;
    } else if (c == '_') {
      note.tie_mid = true;
    } else if (is_ignorable_mark(c)) {
      // decoration, skip
    } else {
      throw MalformedKern(line, std::string("unexpected character '") + c +
                                    "' in token '" + std::string(token) + "'");
    }
  }

  if (pitch_letter == 0) {
    throw MalformedKern(line,
                        "no pitch in token '" + std::string(token) + "'");
  }
  if (digits.empty()) {
    throw MalformedKern(line,
                        "no duration in token '" + std::string(token) + "'");
  }

  // Octaves: lowercase 'c' = C4 = 60, each repeat up an octave; uppercase
  // 'C' = C3 = 48, each repeat down an octave.
  const int pc = pitch_class_of(pitch_letter);
  int midi;
  if (std::islower(static_cast<unsigned char>(pitch_letter))) {
    midi = 60 + 12 * (letter_count - 1) + pc;
  } else {
    midi = 48 - 12 * (letter_count - 1) + pc;
  }
  if (!natural) {
    midi += accidental;
  }
  if (midi < 0 || midi > 127) {
    throw MalformedKern(line, "pitch out of MIDI range in token '" +
                                  std::string(token) + "'");
  }
  note.midi_pitch = midi;

  // Reciprocal durations in quarter-note units: 4 -> 1, 8 -> 1/2, 2 -> 2.
  // "0" is a breve, "00" a longa. Each dot adds half of the previous value.
  Rational base;
  if (digits.find_first_not_of('0') == std::string::npos) {
    base = Rational(digits.size() >= 2 ? 16 : 8, 1);
  } else {
    const std::int64_t recip = std::stoll(digits);
    base = Rational(4, recip);
  }
  const std::int64_t scale = std::int64_t(1) << dots;
  note.duration = base * Rational(2 * scale - 1, scale);
  return note;
}

inline std::vector<std::string_view> split_fields(std::string_view line,
                                                  char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

}  // namespace detail

// Parses every **kern movement in `text` into one Song each. `source_id`
// becomes the Song id (movements after the first get a "#<n>" suffix).
// Non-fatal oddities (extra spines, chords) are reported via `warnings`.
inline std::vector<Song> parse_kern(const std::string& text,
                                    const std::string& source_id = "kern",
                                    std::vector<std::string>* warnings = nullptr) {
  const auto warn = [&](const std::string& message) {
    if (warnings != nullptr) {
      warnings->push_back(source_id + ": " + message);
    }
  };

  std::vector<Song> songs;
  std::vector<NoteEvent> events;
  std::optional<detail::ParsedNote> pending_tie;
  int kern_col = -1;  // >= 0 while inside a movement with a kern spine
  std::size_t movement_index = 0;
  bool saw_kern_decl = false;
  bool warned_extra_spines = false;

  const auto flush_pending = [&]() {
    if (pending_tie.has_value()) {
      events.push_back({pending_tie->midi_pitch, pending_tie->duration});
      pending_tie.reset();
    }
  };

  const auto end_movement = [&]() {
    flush_pending();
    if (!events.empty()) {
      std::string id = source_id;
      if (movement_index > 0) {
        id += "#" + std::to_string(movement_index + 1);
      }
      songs.push_back({std::move(id), std::move(events)});
    }
    events.clear();
    ++movement_index;
    kern_col = -1;
  };

  std::istringstream stream(text);
  std::string raw_line;
  std::size_t line_no = 0;
  while (std::getline(stream, raw_line)) {
    ++line_no;
    if (!raw_line.empty() && raw_line.back() == '\r') {
      raw_line.pop_back();
    }
    if (raw_line.empty() || raw_line[0] == '!') {
      continue;  // blank or comment
    }
    const auto fields = detail::split_fields(raw_line, '\t');

    if (raw_line.rfind("**", 0) == 0) {
      // Exclusive interpretation line: starts a movement.
      if (kern_col >= 0) {
        end_movement();
      }
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == "**kern") {
          kern_col = static_cast<int>(i);
          saw_kern_decl = true;
          break;
        }
      }
      if (kern_col >= 0 && fields.size() > 1 && !warned_extra_spines) {
        warn("multiple spines; reading only the first **kern spine");
        warned_extra_spines = true;
      }
      continue;
    }
    if (kern_col < 0) {
      continue;  // outside any kern movement
    }
    if (static_cast<std::size_t>(kern_col) >= fields.size()) {
      continue;  // short line, nothing in our spine
    }
    const std::string_view token = fields[static_cast<std::size_t>(kern_col)];

    if (token.empty() || token == ".") {
      continue;  // null token
    }
    if (token[0] == '=') {
      continue;  // barline
    }
    if (token[0] == '*') {
      if (token == "*-") {
        end_movement();
      }
      continue;  // other interpretations (clef, key, meter, ...)
    }
    if (token[0] == '!') {
      continue;  // local comment
    }

    std::string_view head = token;
    const std::size_t space = token.find(' ');
    if (space != std::string_view::npos) {
      head = token.substr(0, space);
      warn("chord at line " + std::to_string(line_no) +
           "; keeping first note");
    }
    if (head.find('r') != std::string_view::npos) {
      continue;  // rest
    }
    if (head.find('q') != std::string_view::npos ||
        head.find('Q') != std::string_view::npos) {
      continue;  // grace note
    }

    const detail::ParsedNote note = detail::parse_note_token(head, line_no);

    if (note.tie_mid || note.tie_close) {
      if (pending_tie.has_value() &&
          pending_tie->midi_pitch == note.midi_pitch) {
        pending_tie->duration += note.duration;
        if (note.tie_close) {
          flush_pending();
        }
        continue;
      }
      // Dangling tie continuation: treat as a fresh note.
      flush_pending();
    }
    if (note.tie_open) {
      flush_pending();
      pending_tie = note;
      continue;
    }
    flush_pending();
    events.push_back({note.midi_pitch, note.duration});
  }
  if (kern_col >= 0) {
    end_movement();
  }

  if (!saw_kern_decl) {
    throw MalformedKern(0, "no **kern spine declaration");
  }
  if (songs.empty()) {
    throw EmptySpine(source_id + ": no notes survive filtering");
  }
  return songs;
}

namespace detail {

// Minimal glob: '*' and '?'. Matched against the filename only.
inline bool glob_match(std::string_view pattern, std::string_view name) {
  std::size_t p = 0, n = 0;
  std::size_t star = std::string_view::npos, star_n = 0;
  while (n < name.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == name[n])) {
      ++p;
      ++n;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      star_n = n;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      n = ++star_n;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') {
    ++p;
  }
  return p == pattern.size();
}

inline std::string sanitize_id(std::string id) {
  for (char& c : id) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      c = '_';
    }
  }
  return id;
}

}  // namespace detail

// Loads every file under `root` (recursively) whose filename matches `glob`,
// in lexicographic path order. Files that fail to parse are skipped and
// reported in Corpus::skipped.
inline Corpus load_corpus(const std::filesystem::path& root,
                          const std::string& glob = "*.krn",
                          std::vector<std::string>* warnings = nullptr) {
  namespace fs = std::filesystem;
  if (!fs::exists(root)) {
    throw IoError("corpus root does not exist: " + root.string());
  }

  std::vector<fs::path> paths;
  std::error_code ec;
  for (auto it = fs::recursive_directory_iterator(root, ec);
       it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) {
      throw IoError("cannot walk " + root.string() + ": " + ec.message());
    }
    if (it->is_regular_file() &&
        detail::glob_match(glob, it->path().filename().string())) {
      paths.push_back(it->path());
    }
  }
  std::sort(paths.begin(), paths.end(),
            [](const fs::path& a, const fs::path& b) {
              return a.generic_string() < b.generic_string();
            });

  Corpus corpus;
  for (const fs::path& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      corpus.skipped.push_back({path.string(), "cannot open"});
      continue;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();

    const std::string id = detail::sanitize_id(
        fs::relative(path, root, ec).generic_string());
    try {
      std::vector<Song> songs = parse_kern(buffer.str(), id, warnings);
      corpus.source_manifest.push_back({path.string(), songs.size()});
      for (Song& song : songs) {
        corpus.songs.push_back(std::move(song));
      }
    } catch (const Error& e) {
      corpus.skipped.push_back({path.string(), e.what()});
    }
  }
  if (corpus.songs.empty()) {
    throw EmptyCorpus("no songs parsed from " + root.string());
  }
  return corpus;
}

}  // namespace motif2vec

#endif  // MOTIF2VEC_KERN_HPP
