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
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "lmmatch/corpus.hpp"

namespace lmmatch {

class AbbrevLexicon;

using TokenList = std::vector<std::string>;

/// Which optional stages run. Lowercasing and tokenization always run.
struct PreprocessRecipe {
  bool stem = false;              // rac
  bool remove_stopwords = false;  // mv
  bool expand_abbrev = false;     // des
  std::string stopword_list_id = "builtin-fr";
  std::string lexicon_id = "extracted";

  /// "initial" when every stage is off, otherwise the enabled stages
  /// joined by '+' in the order rac, mv, des (e.g. "rac+mv+des").
  std::string label() const;

  /// Inverse of label(); also accepts "none" and any ordering of the
  /// stage names. Throws Error(InvalidConfig) on unknown names.
  static PreprocessRecipe parse(std::string_view label);

  bool operator==(const PreprocessRecipe&) const = default;
};

struct StopwordList {
  std::string id;
  std::unordered_set<std::string> words;

  bool contains(std::string_view token) const { return words.count(std::string(token)) > 0; }
  bool empty() const { return words.empty(); }
};

/// One token per line, UTF-8; blank lines and lines starting with '#' are
/// skipped. Words are lowercased on load.
StopwordList load_stopwords(const std::filesystem::path& path);

/// The French list shipped in data/stopwords_fr.txt.
StopwordList default_stopwords();
std::filesystem::path default_stopword_file();

struct ProcessedDoc {
  std::string id;
  DocKind kind = DocKind::Case;
  TokenList tokens;
  PreprocessRecipe recipe;
  std::size_t substitution_count = 0;
};

/// Lowercases and splits on whitespace. The characters . , ; : ! ? ( ) [ ]
/// { } « » " ' / (and typographic quotes) become standalone tokens, except
/// that '.' and ',' between digits stay inside numbers and French elided
/// clitics keep their apostrophe ("d'ivg" -> "d'", "ivg"). Hyphenated words
/// stay whole.
TokenList tokenize(std::string_view text);

/// tokenize() without lowercasing; abbreviation extraction needs the case.
TokenList tokenize_preserving_case(std::string_view text);

/// Order-preserving filter. Throws EmptyStopwordList if `list` is empty.
TokenList remove_stopwords(const TokenList& tokens, const StopwordList& list);

struct Expansion {
  TokenList tokens;
  std::size_t substitution_count = 0;
};

/// Single pass; produced tokens are never re-expanded.
Expansion expand_abbreviations(const TokenList& tokens, const AbbrevLexicon& lexicon);

/// Stems every token to a fixed point of the Snowball French stemmer.
TokenList stem_tokens(const TokenList& tokens);

struct PreprocessResources {
  const AbbrevLexicon* lexicon = nullptr;
  const StopwordList* stopwords = nullptr;
};

/// Fixed stage order: tokenize -> expand -> remove stopwords -> stem. With
/// both mv and rac enabled, stems that land on a stopword are filtered too.
ProcessedDoc preprocess(const Document& doc, const PreprocessRecipe& recipe,
                        const PreprocessResources& resources);

/// Throws if a stage enabled by `recipe` has no resource to run with.
void check_resources(const PreprocessRecipe& recipe, const PreprocessResources& resources);

}  // namespace lmmatch
