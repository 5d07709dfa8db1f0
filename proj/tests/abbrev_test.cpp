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

#include "lmmatch/abbrev_lexicon.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "fixtures.hpp"
#include "lmmatch/error.hpp"
#include "lmmatch/textprep.hpp"
#include "test_util.hpp"

namespace lmmatch {
namespace {

using testing::kind_of;

Corpus corpus_of(std::vector<std::string> case_texts, std::vector<std::string> discussion_texts) {
  Corpus corpus;
  for (std::size_t i = 0; i < case_texts.size(); ++i)
    corpus.cases.push_back({"c" + std::to_string(i), DocKind::Case, case_texts[i]});
  for (std::size_t i = 0; i < discussion_texts.size(); ++i)
    corpus.discussions.push_back({"d" + std::to_string(i), DocKind::Discussion, discussion_texts[i]});
  return corpus;
}

using Tokens = std::vector<std::string>;

TEST(LooksLikeAbbreviation, Shape) {
  EXPECT_TRUE(looks_like_abbreviation("IVG"));
  EXPECT_TRUE(looks_like_abbreviation("HbA1c"));
  EXPECT_TRUE(looks_like_abbreviation("VIH-1"));
  EXPECT_TRUE(looks_like_abbreviation("ÉEG"));
  EXPECT_FALSE(looks_like_abbreviation("Ivg"));
  EXPECT_FALSE(looks_like_abbreviation("A"));
  EXPECT_FALSE(looks_like_abbreviation("ABCDEFGHI"));
  EXPECT_FALSE(looks_like_abbreviation("1AB"));
  EXPECT_FALSE(looks_like_abbreviation("A.B"));
}

TEST(FindDefinitions, LongFormThenAbbreviation) {
  const auto defs = find_definitions("insuffisance ventriculaire gauche (IVG)");
  ASSERT_EQ(defs.size(), 1u);
  EXPECT_EQ(defs[0].short_form, "ivg");
  EXPECT_EQ(defs[0].expansion, (Tokens{"insuffisance", "ventriculaire", "gauche"}));
}

TEST(FindDefinitions, AbbreviationThenLongForm) {
  const auto defs = find_definitions("IVG (interruption volontaire de grossesse)");
  ASSERT_EQ(defs.size(), 1u);
  EXPECT_EQ(defs[0].expansion, (Tokens{"interruption", "volontaire", "de", "grossesse"}));
}

TEST(FindDefinitions, SkipsFunctionWordsAndAccents) {
  auto defs = find_definitions("Suspicion d'une interruption volontaire de la grossesse (IVG) ici.");
  ASSERT_EQ(defs.size(), 1u);
  EXPECT_EQ(defs[0].expansion, (Tokens{"interruption", "volontaire", "de", "la", "grossesse"}));
  defs = find_definitions("Une Échographie Doppler (ED) normale");
  ASSERT_EQ(defs.size(), 1u);
  EXPECT_EQ(defs[0].expansion, (Tokens{"échographie", "doppler"}));
  defs = find_definitions("le SAOS (syndrome d'apnées obstructives du sommeil)");
  ASSERT_EQ(defs.size(), 1u);
  EXPECT_EQ(defs[0].expansion, (Tokens{"syndrome", "d'", "apnées", "obstructives", "du", "sommeil"}));
}

TEST(FindDefinitions, RejectsNonMatches) {
  EXPECT_TRUE(find_definitions("pas de parenthèses ici").empty());
  EXPECT_TRUE(find_definitions("le patient (PA)").empty());
  EXPECT_TRUE(find_definitions("une douleur thoracique (voir figure)").empty());
  EXPECT_TRUE(find_definitions("insuffisance ventriculaire gauche (Ivg)").empty());
  EXPECT_TRUE(find_definitions("insuffisance, ventriculaire gauche (IVG)").empty());
  EXPECT_TRUE(find_definitions("(IVG)").empty());
}

TEST(ExtractLexicon, SingleDefinition) {
  const auto out = extract_abbrev_lexicon(corpus_of({"une insuffisance ventriculaire gauche (IVG) sévère"}, {"x"}));
  ASSERT_EQ(out.lexicon.size(), 1u);
  const LexiconEntry* entry = out.lexicon.find("ivg");
  ASSERT_NE(entry, nullptr);
  EXPECT_EQ(entry->expansion, (Tokens{"insuffisance", "ventriculaire", "gauche"}));
  EXPECT_EQ(entry->provenance, Provenance::ExtractedFromCorpus);
  EXPECT_TRUE(out.conflicts.empty());
}

TEST(ExtractLexicon, NoParenthesesGivesEmptyLexicon) {
  const auto out = extract_abbrev_lexicon(corpus_of({"texte simple"}, {"autre texte"}));
  EXPECT_TRUE(out.lexicon.empty());
  EXPECT_EQ(out.definitions_found, 0u);
}

Corpus conflicting_corpus() {
  return corpus_of({"IVG (interruption volontaire de grossesse) à 8 semaines"},
                   {"insuffisance ventriculaire gauche (IVG) aiguë"});
}

TEST(ExtractLexicon, ConflictIsDroppedAndReported) {
  const Corpus corpus = conflicting_corpus();
  // both patterns fire on their own
  std::vector<AbbrevDefinition> scanned;
  for (const auto* docs : {&corpus.cases, &corpus.discussions})
    for (const Document& doc : *docs)
      for (auto& def : find_definitions(doc.raw_text)) scanned.push_back(def);
  ASSERT_EQ(scanned.size(), 2u);
  EXPECT_EQ(scanned[0].short_form, scanned[1].short_form);
  EXPECT_NE(scanned[0].expansion, scanned[1].expansion);

  const auto out = extract_abbrev_lexicon(corpus);
  EXPECT_FALSE(out.lexicon.contains("ivg"));
  ASSERT_EQ(out.conflicts.size(), 1u);
  EXPECT_EQ(out.conflicts[0].short_form, "ivg");
  EXPECT_EQ(out.conflicts[0].candidates.size(), 2u);
  EXPECT_FALSE(out.conflicts[0].resolved_by_user);

  std::ostringstream report;
  write_conflicts(report, out.conflicts);
  EXPECT_EQ(report.str(),
            "short_form\tresolution\tcandidates\n"
            "ivg\tdropped\tinsuffisance ventriculaire gauche | interruption volontaire de grossesse\n");
}

TEST(ExtractLexicon, UserEntryWinsConflict) {
  const AbbrevLexicon user = parse_lexicon("ivg\tinsuffisance ventriculaire gauche\nhta\thypertension artérielle\n");
  const auto out = extract_abbrev_lexicon(conflicting_corpus(), &user);
  ASSERT_EQ(out.lexicon.size(), 2u);
  EXPECT_EQ(out.lexicon.find("ivg")->expansion, (Tokens{"insuffisance", "ventriculaire", "gauche"}));
  EXPECT_EQ(out.lexicon.find("ivg")->provenance, Provenance::ProvidedFile);
  ASSERT_EQ(out.conflicts.size(), 1u);
  EXPECT_TRUE(out.conflicts[0].resolved_by_user);
}

TEST(ExtractLexicon, UserEntryOverridesAgreedExtraction) {
  const AbbrevLexicon user = parse_lexicon("avc\taccident vasculaire\n");
  const auto out = extract_abbrev_lexicon(corpus_of({"accident vasculaire cérébral (AVC)"}, {"x"}), &user);
  EXPECT_EQ(out.lexicon.find("avc")->expansion, (Tokens{"accident", "vasculaire"}));
}

TEST(ExtractLexicon, StableUnderDocumentReordering) {
  Corpus corpus = testing::abbreviation_fixture();
  corpus.cases.push_back({"c9", DocKind::Case, "IVG (interruption volontaire de grossesse)"});
  std::ostringstream a, b, ca, cb;
  const auto first = extract_abbrev_lexicon(corpus);
  std::reverse(corpus.cases.begin(), corpus.cases.end());
  std::reverse(corpus.discussions.begin(), corpus.discussions.end());
  const auto second = extract_abbrev_lexicon(corpus);
  write_lexicon(a, first.lexicon);
  write_lexicon(b, second.lexicon);
  write_conflicts(ca, first.conflicts);
  write_conflicts(cb, second.conflicts);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(ca.str(), cb.str());
}

TEST(ExtractLexicon, FiveDefinitionFixture) {
  const Corpus corpus = testing::abbreviation_fixture();
  const auto out = extract_abbrev_lexicon(corpus);
  EXPECT_EQ(out.lexicon.size(), testing::kFixtureEntries);
  for (const char* key : {"ivg", "avc", "pa", "fa", "saos"}) EXPECT_TRUE(out.lexicon.contains(key)) << key;
  EXPECT_EQ(out.lexicon.find("pa")->expansion, (Tokens{"pression", "artérielle"}));

  std::size_t substitutions = 0;
  for (const auto* docs : {&corpus.cases, &corpus.discussions})
    for (const Document& doc : *docs)
      substitutions += expand_abbreviations(tokenize(doc.raw_text), out.lexicon).substitution_count;
  EXPECT_EQ(substitutions, testing::kFixtureSubstitutions);
}

TEST(AbbrevLexicon, InvariantsEnforced) {
  AbbrevLexicon lexicon;
  EXPECT_EQ(kind_of([&] { lexicon.set("a", {"alpha"}, Provenance::ProvidedFile); }), ErrorKind::InvalidConfig);
  EXPECT_EQ(kind_of([&] { lexicon.set("ab", {}, Provenance::ProvidedFile); }), ErrorKind::InvalidConfig);
  EXPECT_EQ(kind_of([&] { lexicon.set("ab", {"ab"}, Provenance::ProvidedFile); }), ErrorKind::InvalidConfig);
  lexicon.set("ab", {"alpha", "beta"}, Provenance::ProvidedFile);
  lexicon.set("ab", {"autre"}, Provenance::ProvidedFile);
  EXPECT_EQ(lexicon.size(), 1u);
  EXPECT_EQ(lexicon.find("ab")->expansion, Tokens{"autre"});
}

TEST(LexiconFile, ParseAndWriteRoundTrip) {
  const AbbrevLexicon lexicon = parse_lexicon("# comment\nIVG\tInsuffisance  ventriculaire\tgauche\n\nfa\tfibrillation auriculaire\n");
  ASSERT_EQ(lexicon.size(), 2u);
  EXPECT_EQ(lexicon.find("ivg")->expansion, (Tokens{"insuffisance", "ventriculaire", "gauche"}));
  std::ostringstream out;
  write_lexicon(out, lexicon);
  EXPECT_EQ(out.str(), "fa\tfibrillation auriculaire\nivg\tinsuffisance ventriculaire gauche\n");
  EXPECT_EQ(parse_lexicon(out.str()).entries().size(), 2u);
  EXPECT_EQ(kind_of([] { parse_lexicon("ivg insuffisance\n"); }), ErrorKind::MalformedLine);
  EXPECT_EQ(kind_of([] { parse_lexicon("x\ty\n"); }), ErrorKind::MalformedLine);
}

}  // namespace
}  // namespace lmmatch
