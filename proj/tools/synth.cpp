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

#include "synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>

#include <fmt/format.h>

#include "lmmatch/error.hpp"

namespace lmmatch::synth {
namespace {

// Standard distributions are not portable across standard libraries, so
// sampling is done by hand on top of the raw engine.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::size_t index(std::size_t n) {
    const std::uint64_t bound = n;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % bound);
  }

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[index(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

const std::vector<std::string>& filler_stopwords() {
  static const std::vector<std::string> words = {
      "de", "la", "le", "et", "les", "des", "en", "un", "une", "du", "à", "est", "pour", "dans", "par",
      "sur", "au", "avec", "a", "été", "il", "elle", "qui", "que", "ne", "pas", "ce", "se", "son", "sa"};
  return words;
}

constexpr std::string_view kOnsets = "bcdfglmnprstv";
constexpr std::string_view kVowels = "aeiou";
// no final 'f' or 's': the stemmer would strip -if and plural -s
constexpr std::string_view kCodas = "kpbgd";

std::string pseudo_word(Rng& rng) {
  std::string word;
  const std::size_t syllables = 2 + rng.index(2);
  for (std::size_t s = 0; s < syllables; ++s) {
    word += kOnsets[rng.index(kOnsets.size())];
    word += kVowels[rng.index(kVowels.size())];
  }
  word += kCodas[rng.index(kCodas.size())];
  return word;
}

class ZipfSampler {
 public:
  ZipfSampler(std::size_t n, double exponent) : cumulative_(n) {
    double total = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      total += 1.0 / std::pow(static_cast<double>(r + 1), exponent);
      cumulative_[r] = total;
    }
    for (double& c : cumulative_) c /= total;
  }

  std::size_t operator()(Rng& rng) const {
    const double u = rng.unit();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
  }

 private:
  std::vector<double> cumulative_;
};

std::string render(const std::vector<std::string>& words, Rng& rng) {
  std::string text;
  std::size_t sentence_left = 0;
  bool sentence_start = true;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (sentence_start) sentence_left = 8 + rng.index(12);
    std::string word = words[i];
    if (sentence_start && !word.empty() && word[0] >= 'a' && word[0] <= 'z') word[0] = static_cast<char>(word[0] - 32);
    if (!text.empty()) text += ' ';
    text += word;
    sentence_start = false;
    if (sentence_left > 0) --sentence_left;
    if (i + 1 == words.size() || sentence_left == 0) {
      text += " .";
      sentence_start = true;
    } else if (rng.index(10) == 0) {
      text += " ,";
    }
  }
  text += '\n';
  return text;
}

}  // namespace

void Params::validate() const {
  if (pairs == 0) throw Error(ErrorKind::InvalidConfig, "synth needs at least one pair");
  if (case_length == 0) throw Error(ErrorKind::InvalidConfig, "synth case length must be positive");
  if (!(ratio > 0.0)) throw Error(ErrorKind::InvalidConfig, "synth ratio must be positive");
  if (rare_per_pair < (abbreviations ? 3u : 1u))
    throw Error(ErrorKind::InvalidConfig, "synth rare pool too small");
  if (!(rare_rate >= 0.0 && rare_rate <= 1.0))
    throw Error(ErrorKind::InvalidConfig, "synth rare rate must lie in [0, 1]");
  if (!(zipf_exponent >= 0.0)) throw Error(ErrorKind::InvalidConfig, "synth zipf exponent must be >= 0");
}

SynthCorpus generate(const Params& params) {
  params.validate();
  Rng rng(params.seed);

  std::set<std::string> taken(filler_stopwords().begin(), filler_stopwords().end());
  auto fresh_word = [&] {
    while (true) {
      std::string word = pseudo_word(rng);
      if (taken.insert(word).second) return word;
    }
  };

  std::vector<std::string> filler = filler_stopwords();
  for (std::size_t i = 0; i < params.filler_vocab; ++i) filler.push_back(fresh_word());
  const ZipfSampler zipf(filler.size(), params.zipf_exponent);

  SynthCorpus out;
  out.pools.resize(params.pairs);
  for (auto& pool : out.pools)
    for (std::size_t k = 0; k < params.rare_per_pair; ++k) pool.push_back(fresh_word());

  if (params.abbreviations) {
    std::set<std::string> used;
    for (std::size_t i = 0; i < params.pairs; ++i) {
      std::string acronym;
      for (std::size_t attempt = 0; attempt < 64 && acronym.empty(); ++attempt) {
        std::string candidate;
        for (std::size_t k = 0; k < 3; ++k) candidate += static_cast<char>(out.pools[i][k][0] - 32);
        std::string lowered = candidate;
        for (char& c : lowered) c = static_cast<char>(c + 32);
        if (!used.count(candidate) && !taken.count(lowered)) {
          acronym = candidate;
          used.insert(candidate);
          taken.insert(lowered);
        } else {
          // redraw the defining words until the initials are free
          for (std::size_t k = 0; k < 3; ++k) out.pools[i][k] = fresh_word();
        }
      }
      out.acronyms.push_back(acronym);
    }
  }

  std::vector<std::size_t> discussion_slot(params.pairs);
  for (std::size_t i = 0; i < params.pairs; ++i) discussion_slot[i] = i;
  rng.shuffle(discussion_slot);

  const std::size_t width = std::to_string(params.pairs).size() < 3 ? 3 : std::to_string(params.pairs).size();
  auto draw = [&](std::size_t pair, std::size_t length) {
    std::vector<std::string> words;
    words.reserve(length);
    const auto& pool = out.pools[pair];
    for (std::size_t k = 0; k < length; ++k) {
      if (rng.unit() < params.rare_rate)
        words.push_back(pool[rng.index(pool.size())]);
      else
        words.push_back(filler[zipf(rng)]);
    }
    return words;
  };

  std::vector<Document> discussions(params.pairs);
  for (std::size_t i = 0; i < params.pairs; ++i) {
    const std::string case_id = fmt::format("c{:0{}}", i + 1, width);
    const std::string discussion_id = fmt::format("d{:0{}}", discussion_slot[i] + 1, width);
    const auto discussion_length = static_cast<std::size_t>(
        std::max(1.0, std::round(static_cast<double>(params.case_length) * params.ratio)));

    std::vector<std::string> case_words = draw(i, params.case_length);
    std::vector<std::string> discussion_words = draw(i, discussion_length);
    if (params.abbreviations && !out.acronyms[i].empty() && discussion_length > 3) {
      const auto& pool = out.pools[i];
      // the discussion defines the acronym once; the case uses it
      // as one unit so no sentence break lands inside it
      discussion_words[rng.index(discussion_words.size() - 3)] =
          fmt::format("{} {} {} ({})", pool[0], pool[1], pool[2], out.acronyms[i]);
      discussion_words.resize(discussion_length - 3);
      for (std::size_t k = 0; k < 2 && k < case_words.size(); ++k)
        case_words[rng.index(case_words.size())] = out.acronyms[i];
    }
    out.corpus.cases.push_back({case_id, DocKind::Case, render(case_words, rng)});
    discussions[discussion_slot[i]] = {discussion_id, DocKind::Discussion, render(discussion_words, rng)};
    out.gold.pairs[case_id] = discussion_id;
  }
  out.corpus.discussions = std::move(discussions);
  return out;
}

std::filesystem::path write(const SynthCorpus& synth, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "docs");
  const fs::path manifest_path = dir / "manifest.tsv";
  std::ofstream manifest(manifest_path, std::ios::binary);
  manifest << "id\tkind\tpath\n";
  for (const auto* docs : {&synth.corpus.cases, &synth.corpus.discussions}) {
    for (const Document& doc : *docs) {
      const std::string rel = "docs/" + doc.id + ".txt";
      std::ofstream file(dir / rel, std::ios::binary);
      file << doc.raw_text;
      if (!file) throw Error(ErrorKind::MissingFile, "cannot write " + (dir / rel).string());
      manifest << doc.id << '\t' << to_string(doc.kind) << '\t' << rel << '\n';
    }
  }
  std::ofstream gold(dir / "gold.tsv", std::ios::binary);
  write_gold(gold, synth.gold);
  if (!manifest || !gold) throw Error(ErrorKind::MissingFile, "cannot write corpus under " + dir.string());
  return manifest_path;
}

}  // namespace lmmatch::synth
