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

#ifndef MOTIF2VEC_MOTIF2VEC_HPP
#define MOTIF2VEC_MOTIF2VEC_HPP

#include "motif2vec/corpus_io.hpp"
#include "motif2vec/encoding.hpp"
#include "motif2vec/errors.hpp"
#include "motif2vec/evaluation.hpp"
#include "motif2vec/kern.hpp"
#include "motif2vec/melodic.hpp"
#include "motif2vec/model_io.hpp"
#include "motif2vec/pipeline.hpp"
#include "motif2vec/rational.hpp"
#include "motif2vec/rng.hpp"
#include "motif2vec/sgns.hpp"
#include "motif2vec/similarity.hpp"
#include "motif2vec/stats.hpp"

#endif  // MOTIF2VEC_MOTIF2VEC_HPP
