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

#include "lmmatch/french_stemmer.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <string>
#include <utility>
#include <vector>

namespace lmmatch {
namespace {

std::vector<std::pair<std::string, std::string>> reference_vectors() {
  std::ifstream in(std::string(LMMATCH_TEST_DATA) + "/snowball_french_vectors.tsv");
  std::vector<std::pair<std::string, std::string>> rows;
  for (std::string line; std::getline(in, line);) {
    const auto tab = line.find('\t');
    if (tab == std::string::npos) continue;
    rows.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return rows;
}

TEST(FrenchStemmer, ReferenceVocabulary) {
  const auto rows = reference_vectors();
  ASSERT_GT(rows.size(), 20000u);
  std::size_t hits = 0;
  std::vector<std::string> misses;
  for (const auto& [word, expected] : rows) {
    if (stem_french(word) == expected)
      ++hits;
    else if (misses.size() < 10)
      misses.push_back(word + " -> " + stem_french(word) + " (want " + expected + ")");
  }
  const double rate = static_cast<double>(hits) / static_cast<double>(rows.size());
  EXPECT_GE(rate, 0.999);
  for (const auto& m : misses) ADD_FAILURE() << m;
}

TEST(FrenchStemmer, Examples) {
  EXPECT_EQ(stem_french("continuation"), "continu");
  EXPECT_EQ(stem_french("a"), "a");
  EXPECT_EQ(stem_french(""), "");
  EXPECT_EQ(stem_french("majestueusement"), "majestu");
  EXPECT_EQ(stem_french("chevaux"), "cheval");
}

TEST(FrenchStemmer, FixpointIsStable) {
  for (const auto& [word, stem] : reference_vectors()) {
    const std::string fixed = stem_french_fixpoint(word);
    ASSERT_EQ(stem_french(fixed), fixed) << word;
    ASSERT_EQ(stem_french_fixpoint(fixed), fixed) << word;
  }
}

TEST(FrenchStemmer, InvalidUtf8PassesThrough) {
  const std::string bad("\xff\xfe", 2);
  EXPECT_EQ(stem_french(bad), bad);
}

}  // namespace
}  // namespace lmmatch
