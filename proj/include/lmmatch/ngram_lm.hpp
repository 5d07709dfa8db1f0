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
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lmmatch/textprep.hpp"

namespace lmmatch {

using TokenId = std::uint32_t;

// Open vocabularies carry an <unk> symbol that receives smoothing mass;
// closed ones do not, and scoring an unseen token is an error.
enum class UnknownPolicy { Open, Closed };

/// Token <-> dense index map shared by every model of a run. Reserved
/// symbols come first (<s>, </s>, then <unk> when open); real tokens follow
/// in sorted order.
class Vocabulary {
 public:
  static constexpr TokenId kBos = 0;
  static constexpr TokenId kEos = 1;

  /// Union of the tokens of `docs`. Throws EmptyCorpus when there are no
  /// tokens at all.
  static Vocabulary build(std::span<const ProcessedDoc> docs,
                          UnknownPolicy policy = UnknownPolicy::Open);
  static Vocabulary build(std::span<const ProcessedDoc> first, std::span<const ProcessedDoc> second,
                          UnknownPolicy policy = UnknownPolicy::Open);

  std::size_t size() const { return symbols_.size(); }
  /// Symbols a model can predict: everything except <s>.
  std::size_t predicted_size() const { return symbols_.size() - 1; }
  std::optional<TokenId> unk() const { return unk_; }
  UnknownPolicy policy() const { return unk_ ? UnknownPolicy::Open : UnknownPolicy::Closed; }

  std::optional<TokenId> find(std::string_view token) const;
  /// find(), falling back to <unk>; throws UnknownToken for closed vocabularies.
  TokenId lookup(std::string_view token) const;
  std::vector<TokenId> encode(const TokenList& tokens) const;
  const std::string& symbol(TokenId id) const { return symbols_.at(id); }

  bool operator==(const Vocabulary& other) const { return symbols_ == other.symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, TokenId> index_;
  std::optional<TokenId> unk_;
};

enum class SmoothingMethod { WittenBell, AddK };

struct SmoothingConfig {
  SmoothingMethod method = SmoothingMethod::WittenBell;
  double k = 1.0;  // AddK only; any positive value

  static SmoothingConfig witten_bell() { return {}; }
  static SmoothingConfig add_k(double k);
  std::string label() const;
};

struct SequenceScore {
  double log10_prob = 0.0;
  std::size_t events = 0;  // tokens + </s>
  double ppl = 0.0;        // 10^(-log10_prob / events)
};

/// Per-document n-gram model (order 1..3). Counts are collected over the
/// padded sequence <s>^(n-1) tokens </s>; every order k <= n sees one event
/// per predicted position. Immutable once trained.
class LanguageModel {
 public:
  static constexpr int kMaxOrder = 3;

  static LanguageModel train(const ProcessedDoc& doc, int order,
                             std::shared_ptr<const Vocabulary> vocab,
                             SmoothingConfig smoothing = {});
  static LanguageModel train(std::string source_id, std::span<const TokenId> tokens, int order,
                             std::shared_ptr<const Vocabulary> vocab,
                             SmoothingConfig smoothing = {});

  /// P(word | context). Only the last order-1 context symbols are used;
  /// shorter contexts are left-padded with <s>.
  double prob(std::span<const TokenId> context, TokenId word) const;
  double prob(const TokenList& context, std::string_view word) const;

  SequenceScore score(std::span<const TokenId> tokens) const;
  SequenceScore score(const TokenList& tokens) const;

  /// Raw count of an n-gram of length 1..order.
  std::uint32_t count(std::span<const TokenId> ngram) const;
  /// Events observed after `context` (length 1..order-1), and distinct
  /// continuation types.
  std::uint32_t context_total(std::span<const TokenId> context) const;
  std::uint32_t context_types(std::span<const TokenId> context) const;

  int order() const { return order_; }
  const std::string& source_id() const { return source_id_; }
  const Vocabulary& vocab() const { return *vocab_; }
  const std::shared_ptr<const Vocabulary>& vocab_ptr() const { return vocab_; }
  const SmoothingConfig& smoothing() const { return smoothing_; }
  std::size_t events() const { return events_; }

  /// Debug listing `order<TAB>tokens<TAB>count`, sorted.
  void dump(std::ostream& out) const;

 private:
  struct ContextStats {
    std::uint32_t total = 0;
    std::uint32_t types = 0;
  };
  struct KeyHash {
    std::size_t operator()(std::uint64_t key) const noexcept;
  };
  using CountMap = std::unordered_map<std::uint64_t, std::uint32_t, KeyHash>;
  using ContextMap = std::unordered_map<std::uint64_t, ContextStats, KeyHash>;

  LanguageModel() = default;
  void validate_id(TokenId id, bool allow_bos) const;
  // `history` points one past the last context symbol; the order-1 symbols
  // before it must be readable.
  double prob_unchecked(const TokenId* history, TokenId word) const;

  int order_ = 1;
  std::string source_id_;
  std::shared_ptr<const Vocabulary> vocab_;
  SmoothingConfig smoothing_;
  std::size_t events_ = 0;
  std::uint32_t unigram_types_ = 0;
  std::vector<std::uint32_t> unigram_counts_;
  // index 0 holds order 2, index 1 order 3
  CountMap ngram_counts_[kMaxOrder - 1];
  ContextMap contexts_[kMaxOrder - 1];
};

}  // namespace lmmatch
