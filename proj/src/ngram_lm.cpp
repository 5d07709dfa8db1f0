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

#include "lmmatch/ngram_lm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>

#include "lmmatch/error.hpp"

namespace lmmatch {
namespace {

constexpr int kIdBits = 21;
constexpr std::size_t kMaxVocab = std::size_t{1} << kIdBits;

std::uint64_t pack(const TokenId* ids, std::size_t n) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < n; ++i) key = (key << kIdBits) | ids[i];
  return key;
}

}  // namespace

// --- Vocabulary -----------------------------------------------------------

Vocabulary Vocabulary::build(std::span<const ProcessedDoc> docs, UnknownPolicy policy) {
  return build(docs, {}, policy);
}

Vocabulary Vocabulary::build(std::span<const ProcessedDoc> first,
                             std::span<const ProcessedDoc> second, UnknownPolicy policy) {
  std::set<std::string> tokens;
  for (const auto docs : {first, second})
    for (const ProcessedDoc& doc : docs) tokens.insert(doc.tokens.begin(), doc.tokens.end());
  if (tokens.empty()) throw Error(ErrorKind::EmptyCorpus, "no tokens to build a vocabulary from");
  if (tokens.size() + 3 > kMaxVocab)
    throw Error(ErrorKind::InvalidConfig, "vocabulary exceeds " + std::to_string(kMaxVocab));

  Vocabulary vocab;
  vocab.symbols_ = {"<s>", "</s>"};
  if (policy == UnknownPolicy::Open) {
    vocab.unk_ = static_cast<TokenId>(vocab.symbols_.size());
    vocab.symbols_.emplace_back("<unk>");
  }
  vocab.index_.reserve(tokens.size());
  for (const std::string& token : tokens) {
    vocab.index_.emplace(token, static_cast<TokenId>(vocab.symbols_.size()));
    vocab.symbols_.push_back(token);
  }
  return vocab;
}

std::optional<TokenId> Vocabulary::find(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TokenId Vocabulary::lookup(std::string_view token) const {
  if (auto id = find(token)) return *id;
  if (unk_) return *unk_;
  throw Error(ErrorKind::UnknownToken, "token '" + std::string(token) + "' not in vocabulary");
}

std::vector<TokenId> Vocabulary::encode(const TokenList& tokens) const {
  std::vector<TokenId> ids;
  ids.reserve(tokens.size());
  for (const std::string& token : tokens) ids.push_back(lookup(token));
  return ids;
}

// --- Smoothing ------------------------------------------------------------

SmoothingConfig SmoothingConfig::add_k(double k) {
  if (!(k > 0.0) || !std::isfinite(k))
    throw Error(ErrorKind::InvalidConfig, "add-k smoothing needs k > 0");
  return {SmoothingMethod::AddK, k};
}

std::string SmoothingConfig::label() const {
  if (method == SmoothingMethod::WittenBell) return "witten-bell";
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "addk(%g)", k);
  return buffer;
}

// --- LanguageModel --------------------------------------------------------

std::size_t LanguageModel::KeyHash::operator()(std::uint64_t key) const noexcept {
  key ^= key >> 33;
  key *= 0xff51afd7ed558ccdULL;
  key ^= key >> 33;
  return static_cast<std::size_t>(key);
}

LanguageModel LanguageModel::train(const ProcessedDoc& doc, int order,
                                   std::shared_ptr<const Vocabulary> vocab,
                                   SmoothingConfig smoothing) {
  if (!vocab) throw Error(ErrorKind::InvalidConfig, "model needs a vocabulary");
  std::vector<TokenId> ids;
  ids.reserve(doc.tokens.size());
  for (const std::string& token : doc.tokens) {
    const auto id = vocab->find(token);
    if (!id)
      throw Error(ErrorKind::UnknownToken,
                  "token '" + token + "' of document '" + doc.id + "' not in vocabulary");
    ids.push_back(*id);
  }
  return train(doc.id, ids, order, std::move(vocab), smoothing);
}

LanguageModel LanguageModel::train(std::string source_id, std::span<const TokenId> tokens,
                                   int order, std::shared_ptr<const Vocabulary> vocab,
                                   SmoothingConfig smoothing) {
  if (order < 1 || order > kMaxOrder)
    throw Error(ErrorKind::InvalidConfig, "order must be 1, 2 or 3");
  if (!vocab) throw Error(ErrorKind::InvalidConfig, "model needs a vocabulary");
  if (smoothing.method == SmoothingMethod::AddK) smoothing = SmoothingConfig::add_k(smoothing.k);
  if (tokens.empty())
    throw Error(ErrorKind::EmptyDocument, "document '" + source_id + "' has no tokens");

  LanguageModel lm;
  lm.order_ = order;
  lm.source_id_ = std::move(source_id);
  lm.vocab_ = std::move(vocab);
  lm.smoothing_ = smoothing;
  for (TokenId id : tokens) lm.validate_id(id, false);

  const std::size_t pad = static_cast<std::size_t>(order - 1);
  std::vector<TokenId> padded(pad, Vocabulary::kBos);
  padded.insert(padded.end(), tokens.begin(), tokens.end());
  padded.push_back(Vocabulary::kEos);

  lm.unigram_counts_.assign(lm.vocab_->size(), 0);
  lm.events_ = padded.size() - pad;
  for (std::size_t pos = pad; pos < padded.size(); ++pos) {
    const TokenId word = padded[pos];
    if (lm.unigram_counts_[word]++ == 0) ++lm.unigram_types_;
    for (int k = 2; k <= order; ++k) {
      const TokenId* ctx = padded.data() + pos - (k - 1);
      const std::uint64_t ctx_key = pack(ctx, static_cast<std::size_t>(k - 1));
      const std::uint64_t ngram_key = (ctx_key << kIdBits) | word;
      ContextStats& stats = lm.contexts_[k - 2][ctx_key];
      ++stats.total;
      if (lm.ngram_counts_[k - 2][ngram_key]++ == 0) ++stats.types;
    }
  }
  return lm;
}

void LanguageModel::validate_id(TokenId id, bool allow_bos) const {
  if (id >= vocab_->size())
    throw Error(ErrorKind::UnknownToken, "token id " + std::to_string(id) + " out of range");
  if (id == Vocabulary::kBos && !allow_bos)
    throw Error(ErrorKind::UnknownToken, "<s> cannot be predicted");
}

double LanguageModel::prob_unchecked(const TokenId* history, TokenId word) const {
  const double predicted = static_cast<double>(vocab_->predicted_size());
  const double events = static_cast<double>(events_);
  const double c1 = unigram_counts_[word];
  const bool witten_bell = smoothing_.method == SmoothingMethod::WittenBell;
  const double k = smoothing_.k;

  double p;
  if (witten_bell) {
    const double types = unigram_types_;
    p = (c1 + types / predicted) / (events + types);
  } else {
    p = (c1 + k) / (events + k * predicted);
  }

  for (int level = 2; level <= order_; ++level) {
    const std::size_t ctx_len = static_cast<std::size_t>(level - 1);
    const std::uint64_t ctx_key = pack(history - ctx_len, ctx_len);
    const auto ctx_it = contexts_[level - 2].find(ctx_key);
    if (ctx_it == contexts_[level - 2].end()) continue;  // unseen context: keep lower order
    const auto& counts = ngram_counts_[level - 2];
    const auto it = counts.find((ctx_key << kIdBits) | word);
    const double c = it == counts.end() ? 0.0 : it->second;
    const double total = ctx_it->second.total;
    if (witten_bell) {
      const double types = ctx_it->second.types;
      p = (c + types * p) / (total + types);
    } else {
      p = (c + k) / (total + k * predicted);
    }
  }
  return p;
}

double LanguageModel::prob(std::span<const TokenId> context, TokenId word) const {
  validate_id(word, false);
  for (TokenId id : context) validate_id(id, true);
  const std::size_t need = static_cast<std::size_t>(order_ - 1);
  TokenId history[kMaxOrder] = {Vocabulary::kBos, Vocabulary::kBos, Vocabulary::kBos};
  const std::size_t take = std::min(need, context.size());
  std::copy(context.end() - static_cast<std::ptrdiff_t>(take), context.end(),
            history + (need - take));
  return prob_unchecked(history + need, word);
}

double LanguageModel::prob(const TokenList& context, std::string_view word) const {
  std::vector<TokenId> ids;
  ids.reserve(context.size());
  for (const std::string& token : context)
    ids.push_back(token == "<s>" ? Vocabulary::kBos : vocab_->lookup(token));
  const TokenId word_id = word == "</s>" ? Vocabulary::kEos : vocab_->lookup(word);
  return prob(ids, word_id);
}

SequenceScore LanguageModel::score(std::span<const TokenId> tokens) const {
  if (tokens.empty()) throw Error(ErrorKind::EmptySequence, "cannot score an empty sequence");
  for (TokenId id : tokens) validate_id(id, false);
  const std::size_t pad = static_cast<std::size_t>(order_ - 1);
  std::vector<TokenId> padded(pad, Vocabulary::kBos);
  padded.reserve(pad + tokens.size() + 1);
  padded.insert(padded.end(), tokens.begin(), tokens.end());
  padded.push_back(Vocabulary::kEos);

  SequenceScore result;
  for (std::size_t pos = pad; pos < padded.size(); ++pos)
    result.log10_prob += std::log10(prob_unchecked(padded.data() + pos, padded[pos]));
  result.events = padded.size() - pad;
  result.ppl = std::pow(10.0, -result.log10_prob / static_cast<double>(result.events));
  return result;
}

SequenceScore LanguageModel::score(const TokenList& tokens) const {
  return score(vocab_->encode(tokens));
}

std::uint32_t LanguageModel::count(std::span<const TokenId> ngram) const {
  if (ngram.empty() || ngram.size() > static_cast<std::size_t>(order_))
    throw Error(ErrorKind::InvalidConfig, "n-gram length must be 1.." + std::to_string(order_));
  for (TokenId id : ngram) validate_id(id, true);
  if (ngram.size() == 1) return unigram_counts_[ngram[0]];
  const auto& counts = ngram_counts_[ngram.size() - 2];
  const auto it = counts.find(pack(ngram.data(), ngram.size()));
  return it == counts.end() ? 0 : it->second;
}

std::uint32_t LanguageModel::context_total(std::span<const TokenId> context) const {
  if (context.empty() || context.size() >= static_cast<std::size_t>(order_)) return 0;
  const auto& map = contexts_[context.size() - 1];
  const auto it = map.find(pack(context.data(), context.size()));
  return it == map.end() ? 0 : it->second.total;
}

std::uint32_t LanguageModel::context_types(std::span<const TokenId> context) const {
  if (context.empty() || context.size() >= static_cast<std::size_t>(order_)) return 0;
  const auto& map = contexts_[context.size() - 1];
  const auto it = map.find(pack(context.data(), context.size()));
  return it == map.end() ? 0 : it->second.types;
}

void LanguageModel::dump(std::ostream& out) const {
  std::map<std::pair<int, std::string>, std::uint32_t> rows;
  for (TokenId id = 0; id < unigram_counts_.size(); ++id)
    if (unigram_counts_[id] > 0) rows[{1, vocab_->symbol(id)}] = unigram_counts_[id];
  for (int level = 2; level <= order_; ++level) {
    for (const auto& [key, value] : ngram_counts_[level - 2]) {
      std::string text;
      for (int i = level - 1; i >= 0; --i) {
        const auto id = static_cast<TokenId>((key >> (kIdBits * i)) & (kMaxVocab - 1));
        if (!text.empty()) text += ' ';
        text += vocab_->symbol(id);
      }
      rows[{level, text}] = value;
    }
  }
  for (const auto& [key, value] : rows) out << key.first << '\t' << key.second << '\t' << value << '\n';
}

}  // namespace lmmatch
