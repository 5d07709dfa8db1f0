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

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <sstream>

#include "lm_oracle.hpp"
#include "lmmatch/error.hpp"
#include "lmmatch/matcher.hpp"
#include "synth.hpp"
#include "test_util.hpp"

namespace lmmatch {
namespace {

using testing::kind_of;
using testing::make_doc;
using testing::OracleLm;

std::shared_ptr<const Vocabulary> vocab_of(const std::vector<ProcessedDoc>& docs,
                                           UnknownPolicy policy = UnknownPolicy::Open) {
  return std::make_shared<const Vocabulary>(Vocabulary::build(docs, policy));
}

TokenId id(const Vocabulary& v, const char* token) { return *v.find(token); }

TEST(Vocabulary, SizesIncludeReservedSymbols) {
  const std::vector<ProcessedDoc> docs = {make_doc("x", {"a", "b"}), make_doc("y", {"b", "c"})};
  const Vocabulary v = Vocabulary::build(docs);
  EXPECT_EQ(v.size(), 6u);
  EXPECT_EQ(Vocabulary::build(std::vector<ProcessedDoc>{make_doc("x", {"x"})}).size(), 4u);
  EXPECT_EQ(v.symbol(Vocabulary::kBos), "<s>");
  EXPECT_EQ(v.symbol(Vocabulary::kEos), "</s>");
  ASSERT_TRUE(v.unk());
  EXPECT_EQ(v.symbol(*v.unk()), "<unk>");
  // sorted, contiguous
  EXPECT_EQ(id(v, "a") + 1, id(v, "b"));
  EXPECT_EQ(id(v, "b") + 1, id(v, "c"));
  EXPECT_EQ(id(v, "c"), v.size() - 1);
  EXPECT_EQ(v.lookup("zzz"), *v.unk());
}

TEST(Vocabulary, UnionOfBothCollections) {
  const std::vector<ProcessedDoc> cases = {make_doc("c", {"a"})};
  const std::vector<ProcessedDoc> discussions = {make_doc("d", {"z"}, DocKind::Discussion)};
  const Vocabulary v = Vocabulary::build(cases, discussions);
  EXPECT_TRUE(v.find("a"));
  EXPECT_TRUE(v.find("z"));
  EXPECT_TRUE(v == Vocabulary::build(cases, discussions));
}

TEST(Vocabulary, ErrorsAndClosedPolicy) {
  EXPECT_EQ(kind_of([] { Vocabulary::build(std::vector<ProcessedDoc>{}); }), ErrorKind::EmptyCorpus);
  EXPECT_EQ(kind_of([] { Vocabulary::build(std::vector<ProcessedDoc>{make_doc("e", {})}); }),
            ErrorKind::EmptyCorpus);
  const Vocabulary closed = Vocabulary::build(std::vector<ProcessedDoc>{make_doc("x", {"a"})}, UnknownPolicy::Closed);
  EXPECT_EQ(closed.size(), 3u);
  EXPECT_FALSE(closed.unk());
  EXPECT_EQ(kind_of([&] { closed.lookup("b"); }), ErrorKind::UnknownToken);
}

TEST(Train, UnigramCounts) {
  const auto v = vocab_of({make_doc("x", {"a", "b"})});
  const LanguageModel lm = LanguageModel::train(make_doc("x", {"a", "b"}), 1, v);
  const TokenId a = id(*v, "a"), b = id(*v, "b"), eos = Vocabulary::kEos;
  EXPECT_EQ(lm.count(std::vector<TokenId>{a}), 1u);
  EXPECT_EQ(lm.count(std::vector<TokenId>{b}), 1u);
  EXPECT_EQ(lm.count(std::vector<TokenId>{eos}), 1u);
  EXPECT_EQ(lm.count(std::vector<TokenId>{Vocabulary::kBos}), 0u);
  EXPECT_EQ(lm.events(), 3u);
}

TEST(Train, BigramCounts) {
  const auto v = vocab_of({make_doc("x", {"a", "b"})});
  const LanguageModel lm = LanguageModel::train(make_doc("x", {"a", "a", "b"}), 2, v);
  const TokenId a = id(*v, "a"), b = id(*v, "b"), bos = Vocabulary::kBos, eos = Vocabulary::kEos;
  EXPECT_EQ(lm.count(std::vector<TokenId>{bos, a}), 1u);
  EXPECT_EQ(lm.count(std::vector<TokenId>{a, a}), 1u);
  EXPECT_EQ(lm.count(std::vector<TokenId>{a, b}), 1u);
  EXPECT_EQ(lm.count(std::vector<TokenId>{b, eos}), 1u);
  EXPECT_EQ(lm.count(std::vector<TokenId>{b, a}), 0u);
  EXPECT_EQ(lm.context_total(std::vector<TokenId>{a}), 2u);
  EXPECT_EQ(lm.context_types(std::vector<TokenId>{a}), 2u);
  std::ostringstream dump;
  lm.dump(dump);
  EXPECT_NE(dump.str().find("2\t<s> a\t1\n"), std::string::npos) << dump.str();
  EXPECT_NE(dump.str().find("1\ta\t2\n"), std::string::npos) << dump.str();
}

TEST(Train, TrigramsOnTwoTokenDocument) {
  const auto v = vocab_of({make_doc("x", {"a", "b"})});
  const LanguageModel lm = LanguageModel::train(make_doc("x", {"a", "b"}), 3, v);
  const TokenId a = id(*v, "a"), b = id(*v, "b"), bos = Vocabulary::kBos, eos = Vocabulary::kEos;
  EXPECT_EQ(lm.count(std::vector<TokenId>{bos, bos, a}), 1u);
  EXPECT_EQ(lm.count(std::vector<TokenId>{bos, a, b}), 1u);
  EXPECT_EQ(lm.count(std::vector<TokenId>{a, b, eos}), 1u);
  EXPECT_EQ(lm.events(), 3u);
  std::ostringstream dump;
  lm.dump(dump);
  std::size_t trigram_rows = 0;
  std::istringstream lines(dump.str());
  for (std::string line; std::getline(lines, line);) trigram_rows += line.rfind("3\t", 0) == 0;
  EXPECT_EQ(trigram_rows, 3u);
}

TEST(Train, Errors) {
  const auto v = vocab_of({make_doc("x", {"a"})});
  EXPECT_EQ(kind_of([&] { LanguageModel::train(make_doc("x", {"q"}), 2, v); }), ErrorKind::UnknownToken);
  EXPECT_EQ(kind_of([&] { LanguageModel::train(make_doc("x", {}), 2, v); }), ErrorKind::EmptyDocument);
  EXPECT_EQ(kind_of([&] { LanguageModel::train(make_doc("x", {"a"}), 4, v); }), ErrorKind::InvalidConfig);
  EXPECT_EQ(kind_of([&] { LanguageModel::train(make_doc("x", {"a"}), 0, v); }), ErrorKind::InvalidConfig);
  EXPECT_EQ(kind_of([] { SmoothingConfig::add_k(0.0); }), ErrorKind::InvalidConfig);
  EXPECT_EQ(kind_of([] { SmoothingConfig::add_k(-1.0); }), ErrorKind::InvalidConfig);
  const LanguageModel lm = LanguageModel::train(make_doc("x", {"a"}), 2, v);
  EXPECT_EQ(kind_of([&] { lm.score(std::vector<TokenId>{}); }), ErrorKind::EmptySequence);
  EXPECT_EQ(kind_of([&] { lm.prob(std::vector<TokenId>{}, Vocabulary::kBos); }), ErrorKind::UnknownToken);
  EXPECT_EQ(kind_of([&] { lm.prob(std::vector<TokenId>{}, 99); }), ErrorKind::UnknownToken);
}

TEST(AddK, HandComputedUnigram) {
  const auto v = vocab_of({make_doc("x", {"a", "b"})}, UnknownPolicy::Closed);
  ASSERT_EQ(v->predicted_size(), 3u);  // a, b, </s>
  const LanguageModel lm = LanguageModel::train(make_doc("x", {"a", "b"}), 1, v, SmoothingConfig::add_k(1.0));
  EXPECT_NEAR(lm.prob(TokenList{}, "a"), 1.0 / 3.0, 1e-15);
}

TEST(AddK, VanishingKApproachesRelativeFrequency) {
  const auto v = vocab_of({make_doc("x", {"a", "b"})}, UnknownPolicy::Closed);
  const LanguageModel lm = LanguageModel::train(make_doc("x", {"a", "b"}), 1, v, SmoothingConfig::add_k(1e-12));
  // a, b and </s> are each one of three events
  EXPECT_NEAR(lm.prob(TokenList{}, "a"), 1.0 / 3.0, 1e-9);
  EXPECT_NEAR(lm.score(TokenList{"a", "b"}).ppl, 3.0, 1e-9);
}

TEST(Score, UniformModelPerplexityIsVocabularySize) {
  // every predictable symbol seen exactly once: the estimate is uniform
  const auto v = vocab_of({make_doc("x", {"a", "b", "c"})}, UnknownPolicy::Closed);
  const LanguageModel lm = LanguageModel::train(make_doc("x", {"c", "a", "b"}), 1, v);
  for (const TokenList& seq : {TokenList{"a"}, TokenList{"b", "b", "b"}, TokenList{"c", "a", "b", "a"}})
    EXPECT_NEAR(lm.score(seq).ppl, 4.0, 1e-12);
}

TEST(Score, EventsCountEndOfSequence) {
  const auto v = vocab_of({make_doc("x", {"a", "b"})});
  const LanguageModel lm = LanguageModel::train(make_doc("x", {"a", "b"}), 2, v);
  const SequenceScore s = lm.score(TokenList{"a", "b", "a"});
  EXPECT_EQ(s.events, 4u);
  EXPECT_DOUBLE_EQ(s.ppl, std::pow(10.0, -s.log10_prob / 4.0));
  EXPECT_GT(s.ppl, 0.0);
}

TEST(Score, ShortDocumentsStillScoreAtHigherOrder) {
  const auto v = vocab_of({make_doc("x", {"a", "b"})});
  const LanguageModel lm = LanguageModel::train(make_doc("x", {"a"}), 3, v);
  const SequenceScore s = lm.score(TokenList{"b", "a", "b", "b"});
  EXPECT_TRUE(std::isfinite(s.ppl));
  EXPECT_GT(s.ppl, 0.0);
}

TEST(Score, UnknownTokenGetsSmoothingMass) {
  const auto v = vocab_of({make_doc("x", {"a", "b"})});
  const LanguageModel lm = LanguageModel::train(make_doc("x", {"a", "b"}), 2, v);
  EXPECT_GT(lm.prob(TokenList{"a"}, "jamais-vu"), 0.0);
  EXPECT_TRUE(std::isfinite(lm.score(TokenList{"jamais-vu"}).ppl));
}

struct RandomInstance {
  std::shared_ptr<const Vocabulary> vocab;
  std::vector<TokenId> train;
  std::vector<TokenId> test;
};

RandomInstance random_instance(std::mt19937_64& rng, std::size_t max_vocab, std::size_t max_len) {
  const std::size_t n_words = 1 + rng() % max_vocab;
  TokenList words;
  for (std::size_t i = 0; i < n_words; ++i) words.push_back("w" + std::to_string(i));
  RandomInstance inst;
  inst.vocab = vocab_of({make_doc("all", words)});
  auto draw = [&](std::size_t len) {
    std::vector<TokenId> seq;
    for (std::size_t i = 0; i < len; ++i) seq.push_back(*inst.vocab->find(words[rng() % n_words]));
    return seq;
  };
  inst.train = draw(1 + rng() % max_len);
  inst.test = draw(1 + rng() % max_len);
  return inst;
}

std::vector<TokenId> random_history(std::mt19937_64& rng, const Vocabulary& v, int order) {
  std::vector<TokenId> history;
  for (int i = 0; i < order - 1; ++i) history.push_back(static_cast<TokenId>(rng() % v.size()));
  return history;
}

class AgainstOracle : public ::testing::TestWithParam<std::tuple<int, SmoothingMethod>> {};

TEST_P(AgainstOracle, ProbabilitiesMatchScanningOracle) {
  const auto [order, method] = GetParam();
  const SmoothingConfig smoothing = method == SmoothingMethod::AddK ? SmoothingConfig::add_k(0.5) : SmoothingConfig{};
  std::mt19937_64 rng(100 + order);
  for (int trial = 0; trial < 40; ++trial) {
    const RandomInstance inst = random_instance(rng, 6, 15);
    const LanguageModel lm = LanguageModel::train("m", inst.train, order, inst.vocab, smoothing);
    const OracleLm oracle(inst.train, order, inst.vocab->predicted_size(), smoothing);
    for (int c = 0; c < 20; ++c) {
      const std::vector<TokenId> history = random_history(rng, *inst.vocab, order);
      for (TokenId w = 1; w < inst.vocab->size(); ++w)
        ASSERT_NEAR(lm.prob(history, w), oracle.prob(history, w), 1e-13);
    }
    const double ppl = lm.score(inst.test).ppl;
    ASSERT_NEAR(ppl, oracle.ppl_by_product(inst.test), 1e-9 * ppl);
  }
}

TEST_P(AgainstOracle, NormalizedAndPositive) {
  const auto [order, method] = GetParam();
  const SmoothingConfig smoothing = method == SmoothingMethod::AddK ? SmoothingConfig::add_k(0.01) : SmoothingConfig{};
  std::mt19937_64 rng(200 + order);
  for (int trial = 0; trial < 20; ++trial) {
    const RandomInstance inst = random_instance(rng, 30, 60);
    const LanguageModel lm = LanguageModel::train("m", inst.train, order, inst.vocab, smoothing);
    for (int c = 0; c < 50; ++c) {
      const std::vector<TokenId> history = random_history(rng, *inst.vocab, order);
      double sum = 0.0;
      for (TokenId w = 1; w < inst.vocab->size(); ++w) {
        const double p = lm.prob(history, w);
        ASSERT_GT(p, 0.0);
        sum += p;
      }
      ASSERT_NEAR(sum, 1.0, 1e-9);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Orders, AgainstOracle,
                         ::testing::Combine(::testing::Values(1, 2, 3),
                                            ::testing::Values(SmoothingMethod::WittenBell, SmoothingMethod::AddK)));

TEST(Score, LogSumAgreesWithDirectProduct) {
  const auto v = vocab_of({make_doc("x", {"a", "b", "c"})});
  const std::vector<TokenId> train = {id(*v, "a"), id(*v, "b"), id(*v, "a"), id(*v, "c")};
  const LanguageModel lm = LanguageModel::train("m", train, 2, v);
  const std::vector<TokenId> seq = {id(*v, "a"), id(*v, "c"), id(*v, "b")};
  double product = 1.0;
  std::vector<TokenId> padded = {Vocabulary::kBos};
  padded.insert(padded.end(), seq.begin(), seq.end());
  padded.push_back(Vocabulary::kEos);
  for (std::size_t i = 1; i < padded.size(); ++i)
    product *= lm.prob(std::vector<TokenId>{padded[i - 1]}, padded[i]);
  const double direct = std::pow(product, -1.0 / 4.0);
  EXPECT_NEAR(lm.score(seq).ppl, direct, 1e-9 * direct);
}

TEST(Score, Deterministic) {
  std::mt19937_64 rng(9);
  const RandomInstance inst = random_instance(rng, 10, 40);
  const LanguageModel a = LanguageModel::train("m", inst.train, 3, inst.vocab);
  const LanguageModel b = LanguageModel::train("m", inst.train, 3, inst.vocab);
  const SequenceScore sa = a.score(inst.test), sb = b.score(inst.test);
  EXPECT_EQ(std::memcmp(&sa.log10_prob, &sb.log10_prob, sizeof(double)), 0);
  EXPECT_EQ(std::memcmp(&sa.ppl, &sb.ppl, sizeof(double)), 0);
}

TEST(Score, OwnTrainingDocumentWins) {
  // disjoint content vocabularies plus shared filler
  std::mt19937_64 rng(21);
  std::vector<ProcessedDoc> docs;
  for (int d = 0; d < 6; ++d) {
    TokenList tokens;
    for (int i = 0; i < 40; ++i)
      tokens.push_back(rng() % 3 == 0 ? "doc" + std::to_string(d) + "_" + std::to_string(rng() % 5)
                                      : "filler" + std::to_string(rng() % 8));
    docs.push_back(make_doc("d" + std::to_string(d), tokens));
  }
  const auto v = vocab_of(docs);
  for (int order = 1; order <= 3; ++order) {
    std::vector<LanguageModel> models;
    for (const auto& doc : docs) models.push_back(LanguageModel::train(doc, order, v));
    for (std::size_t j = 0; j < docs.size(); ++j) {
      const double own = models[j].score(docs[j].tokens).ppl;
      for (std::size_t i = 0; i < docs.size(); ++i)
        if (i != j) EXPECT_LT(own, models[i].score(docs[j].tokens).ppl) << order << " " << i << " " << j;
    }
  }
}

TEST(Vocabulary, SharedVocabularyLeavesNoUnknownInTask) {
  const Corpus corpus = synth::generate({}).corpus;
  const PreparedCorpus prepared = prepare_corpus(corpus, {}, {});
  const TokenId unk = *prepared.vocab->unk();
  for (const auto* docs : {&prepared.cases, &prepared.discussions})
    for (const ProcessedDoc& doc : *docs)
      for (TokenId t : prepared.vocab->encode(doc.tokens)) ASSERT_NE(t, unk);
}

}  // namespace
}  // namespace lmmatch
