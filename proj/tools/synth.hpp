// Copyright 2026 The lmmatch Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lmmatch/corpus.hpp"

namespace lmmatch::synth {

// Paired corpus generator. Pair i shares a pool of rare pseudo-words that no
// other pair uses; everything else is Zipf-distributed filler drawn from one
// common vocabulary. Cases are the short side.
struct Params {
  std::size_t pairs = 50;
  std::uint64_t seed = 42;
  std::size_t case_length = 80;     // words per case, punctuation excluded
  double ratio = 3.0;               // discussion length / case length
  std::size_t rare_per_pair = 12;   // size of each pair's private pool
  double rare_rate = 0.2;           // chance a word is drawn from the pool
  std::size_t filler_vocab = 400;   // common pseudo-words besides stopwords
  double zipf_exponent = 1.0;
  bool abbreviations = true;        // one defined acronym per pair

  void validate() const;
};

struct SynthCorpus {
  Corpus corpus;
  GoldAlignment gold;
  // rare pool of every pair, indexed like corpus.cases
  std::vector<std::vector<std::string>> pools;
  // uppercase acronym per pair, empty when disabled
  std::vector<std::string> acronyms;
};

SynthCorpus generate(const Params& params);

/// Writes manifest.tsv, gold.tsv and docs/ under `dir`; returns the
/// manifest path.
std::filesystem::path write(const SynthCorpus& synth, const std::filesystem::path& dir);

}  // namespace lmmatch::synth
