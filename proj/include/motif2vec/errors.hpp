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

#ifndef MOTIF2VEC_ERRORS_HPP
#define MOTIF2VEC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace motif2vec {

// Base class for every error thrown by this library. Callers that do not
// care about the exact failure can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --- kern ingestion ---

class MalformedKern : public Error {
 public:
  MalformedKern(std::size_t line, const std::string& reason)
      : Error("malformed kern at line " + std::to_string(line) + ": " + reason),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class EmptySpine : public Error {
 public:
  using Error::Error;
};

class EmptyCorpus : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// --- encoding ---

class BadToken : public Error {
 public:
  using Error::Error;
};

class TooShort : public Error {
 public:
  using Error::Error;
};

// --- training ---

class EmptyVocab : public Error {
 public:
  using Error::Error;
};

class NonFiniteUpdate : public Error {
 public:
  using Error::Error;
};

// --- similarity / evaluation ---

class ZeroVector : public Error {
 public:
  using Error::Error;
};

class UnknownToken : public Error {
 public:
  using Error::Error;
};

class NoUnrelatedFound : public Error {
 public:
  using Error::Error;
};

class NoMultiWord : public Error {
 public:
  using Error::Error;
};

class NotEnoughSegments : public Error {
 public:
  using Error::Error;
};

// --- melodic measures ---

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class EmptySequence : public Error {
 public:
  using Error::Error;
};

class NonDivisibleDuration : public Error {
 public:
  using Error::Error;
};

// --- configuration ---

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace motif2vec

#endif  // MOTIF2VEC_ERRORS_HPP
