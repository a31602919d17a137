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

#ifndef MOTIF2VEC_RATIONAL_HPP
#define MOTIF2VEC_RATIONAL_HPP

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

#include "motif2vec/errors.hpp"

namespace motif2vec {

// Note durations are exact rationals in quarter-note units (a quarter note is
// 1/1, an eighth 1/2, a dotted quarter 3/2, ...).
using Rational = boost::rational<std::int64_t>;

// "3/2" or plain "3". Accepts an optional leading '-' so parse errors on
// negative durations can be reported by the caller rather than swallowed.
inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(std::stoll(text), 1);
    }
    const std::int64_t num = std::stoll(text.substr(0, slash));
    const std::int64_t den = std::stoll(text.substr(slash + 1));
    return Rational(num, den);
  } catch (const boost::bad_rational&) {
    throw BadToken("bad rational '" + text + "': zero denominator");
  } catch (const std::exception&) {
    throw BadToken("bad rational '" + text + "'");
  }
}

// Always "num/den", matching the corpus file schema.
inline std::string format_rational(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace motif2vec

#endif  // MOTIF2VEC_RATIONAL_HPP
