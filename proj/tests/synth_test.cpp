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

#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "lmmatch/error.hpp"
#include "lmmatch/evaluation.hpp"
#include "test_util.hpp"

namespace lmmatch {
namespace {

using testing::kind_of;

TEST(Synth, SameSeedSameCorpus) {
  synth::Params params;
  params.pairs = 10;
  EXPECT_EQ(serialize(synth::generate(params).corpus), serialize(synth::generate(params).corpus));
  synth::Params other = params;
  other.seed = 43;
  EXPECT_NE(serialize(synth::generate(params).corpus), serialize(synth::generate(other).corpus));
}

TEST(Synth, LengthRatio) {
  const synth::SynthCorpus s = synth::generate({});
  const CorpusStats stats = corpus_stats(s.corpus);
  const double ratio = stats.discussions.mean_token_length / stats.cases.mean_token_length;
  EXPECT_NEAR(ratio, 3.0, 0.05);
  // punctuation tokens come on top of the 80 words
  EXPECT_GE(stats.cases.mean_token_length, 80.0);
  EXPECT_LE(stats.cases.mean_token_length, 100.0);
}

TEST(Synth, PoolsDisjointAndGoldBijective) {
  const synth::SynthCorpus s = synth::generate({});
  std::set<std::string> seen;
  for (const auto& pool : s.pools)
    for (const auto& word : pool) EXPECT_TRUE(seen.insert(word).second) << word;
  EXPECT_EQ(s.gold.size(), 50u);
  std::set<std::string> targets;
  for (const auto& [c, d] : s.gold.pairs) targets.insert(d);
  EXPECT_EQ(targets.size(), 50u);
  EXPECT_NO_THROW(validate_gold(s.gold, s.corpus));
  // discussions are not stored in gold order
  std::size_t aligned = 0;
  for (std::size_t i = 0; i < s.corpus.cases.size(); ++i)
    aligned += s.gold.pairs.at(s.corpus.cases[i].id) == s.corpus.discussions[i].id;
  EXPECT_LT(aligned, 50u);
}

TEST(Synth, AcronymsAreDefinedInDiscussions) {
  const synth::SynthCorpus s = synth::generate({});
  ASSERT_EQ(s.acronyms.size(), 50u);
  for (std::size_t i = 0; i < s.acronyms.size(); ++i) {
    const std::string& discussion = s.gold.pairs.at(s.corpus.cases[i].id);
    EXPECT_NE(s.corpus.find(DocKind::Discussion, discussion)->raw_text.find("(" + s.acronyms[i] + ")"),
              std::string::npos);
    EXPECT_NE(s.corpus.cases[i].raw_text.find(s.acronyms[i]), std::string::npos);
  }
  synth::Params plain;
  plain.abbreviations = false;
  EXPECT_TRUE(synth::generate(plain).acronyms.empty());
}

TEST(Synth, WriteAndLoadRoundTrip) {
  synth::Params params;
  params.pairs = 7;
  const synth::SynthCorpus s = synth::generate(params);
  const testing::TempDir dir("synth");
  const auto manifest = synth::write(s, dir.path());
  EXPECT_EQ(serialize(load_corpus(manifest)), serialize(s.corpus));
  std::ostringstream a, b;
  write_gold(a, s.gold);
  write_gold(b, load_gold(dir.path() / "gold.tsv"));
  EXPECT_EQ(a.str(), b.str());
}

TEST(Synth, DefaultCorpusIsFullyRecovered) {
  const synth::SynthCorpus s = synth::generate({});
  const EvalReport r = evaluate(run_match(s.corpus, {}, {}), s.gold, s.corpus);
  EXPECT_EQ(r.n_correct, 50u);
}

TEST(Synth, InvalidParameters) {
  synth::Params p;
  p.pairs = 0;
  EXPECT_EQ(kind_of([&] { synth::generate(p); }), ErrorKind::InvalidConfig);
  p = {};
  p.rare_rate = 1.5;
  EXPECT_EQ(kind_of([&] { synth::generate(p); }), ErrorKind::InvalidConfig);
  p = {};
  p.ratio = 0.0;
  EXPECT_EQ(kind_of([&] { synth::generate(p); }), ErrorKind::InvalidConfig);
}

}  // namespace
}  // namespace lmmatch
