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

#ifndef MOTIF2VEC_RNG_HPP
#define MOTIF2VEC_RNG_HPP

#include <cstdint>
#include <random>

namespace motif2vec {

// std::mt19937_64 is fully specified by the standard, but the standard
// *distributions* are not, so identical seeds can give different draws on
// different standard libraries. Seeded runs must be reproducible everywhere,
// hence these hand-rolled draw helpers.
using Rng = std::mt19937_64;

namespace rng {

// splitmix64 finalizer; used both to derive substream seeds and to decorrelate
// nearby integer seeds.
inline std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic seed for a named substream, e.g. (seed, song, epoch).
inline std::uint64_t substream(std::uint64_t seed, std::uint64_t a,
                               std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t z = mix(seed);
  z = mix(z ^ a);
  z = mix(z ^ b);
  z = mix(z ^ c);
  return z;
}

// Uniform integer in [0, n), n > 0. Multiply-shift reduction; the bias is
// on the order of n / 2^64 and irrelevant here.
inline std::uint64_t bounded(Rng& rng, std::uint64_t n) {
  const unsigned __int128 wide =
      static_cast<unsigned __int128>(rng()) * static_cast<unsigned __int128>(n);
  return static_cast<std::uint64_t>(wide >> 64);
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace rng
}  // namespace motif2vec

#endif  // MOTIF2VEC_RNG_HPP
