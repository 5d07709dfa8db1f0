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

#include "lmmatch/textprep.hpp"

#include <array>
#include <cstdlib>

#include "lmmatch/abbrev_lexicon.hpp"
#include "lmmatch/error.hpp"
#include "lmmatch/french_stemmer.hpp"
#include "lmmatch/utf8.hpp"

#ifndef LMMATCH_DATA_DIR
#define LMMATCH_DATA_DIR "data"
#endif

namespace lmmatch {
namespace {

bool is_punct(char32_t c) {
  switch (c) {
    case U'.': case U',': case U';': case U':': case U'!': case U'?':
    case U'(': case U')': case U'[': case U']': case U'{': case U'}':
    case U'«': case U'»': case U'"': case U'\'': case U'/':
    case U'“': case U'”': case U'„': case U'…':
      return true;
    default:
      return false;
  }
}

bool is_apostrophe(char32_t c) { return c == U'\'' || c == U'’' || c == U'ʼ' || c == U'‘'; }

bool is_elision_prefix(const std::u32string& word) {
  static constexpr std::array<std::u32string_view, 15> kPrefixes = {
      U"c", U"d", U"j", U"l", U"m", U"n", U"s", U"t", U"qu",
      U"jusqu", U"lorsqu", U"puisqu", U"quoiqu", U"presqu", U"quelqu"};
  std::u32string lowered;
  lowered.reserve(word.size());
  for (char32_t c : word) lowered.push_back(utf8::to_lower(c));
  for (auto prefix : kPrefixes)
    if (lowered == prefix) return true;
  return false;
}

std::u32string decode_lossy(std::string_view text) {
  if (auto decoded = utf8::decode(text)) return std::move(*decoded);
  std::u32string out;
  out.reserve(text.size());
  for (char c : text) out.push_back(static_cast<unsigned char>(c));
  return out;
}

TokenList tokenize_impl(std::string_view text, bool lower) {
  const std::u32string input = decode_lossy(text);
  TokenList out;
  std::u32string current;
  auto flush = [&] {
    if (!current.empty()) {
      out.push_back(utf8::encode(current));
      current.clear();
    }
  };

  const std::size_t n = input.size();
  for (std::size_t i = 0; i < n; ++i) {
    char32_t c = input[i];
    if (lower) c = utf8::to_lower(c);
    if (utf8::is_space(c)) {
      flush();
      continue;
    }
    if ((c == U'.' || c == U',') && !current.empty() && utf8::is_digit(current.back()) &&
        i + 1 < n && utf8::is_digit(input[i + 1])) {
      current.push_back(c);
      continue;
    }
    if (is_apostrophe(c)) {
      const bool letter_before = !current.empty() && utf8::is_letter(current.back());
      const bool letter_after = i + 1 < n && utf8::is_letter(input[i + 1]);
      if (letter_before && is_elision_prefix(current)) {
        current.push_back(U'\'');
        flush();
        continue;
      }
      if (letter_before && letter_after) {
        // word-internal apostrophe, e.g. "aujourd'hui"
        current.push_back(U'\'');
        continue;
      }
      flush();
      out.emplace_back("'");
      continue;
    }
    if (is_punct(c)) {
      flush();
      std::string punct;
      utf8::append(punct, c);
      out.push_back(std::move(punct));
      continue;
    }
    current.push_back(c);
  }
  flush();
  return out;
}

}  // namespace

std::string PreprocessRecipe::label() const {
  std::string out;
  auto add = [&](std::string_view part) {
    if (!out.empty()) out += '+';
    out += part;
  };
  if (stem) add("rac");
  if (remove_stopwords) add("mv");
  if (expand_abbrev) add("des");
  return out.empty() ? "initial" : out;
}

PreprocessRecipe PreprocessRecipe::parse(std::string_view label) {
  PreprocessRecipe recipe;
  if (label == "initial" || label == "none" || label.empty()) return recipe;
  std::size_t start = 0;
  while (start <= label.size()) {
    std::size_t plus = label.find('+', start);
    if (plus == std::string_view::npos) plus = label.size();
    const std::string_view part = label.substr(start, plus - start);
    if (part == "rac" || part == "stem") {
      recipe.stem = true;
    } else if (part == "mv" || part == "stopwords") {
      recipe.remove_stopwords = true;
    } else if (part == "des" || part == "expand") {
      recipe.expand_abbrev = true;
    } else {
      throw Error(ErrorKind::InvalidConfig,
                  "unknown preprocessing stage '" + std::string(part) + "' in '" +
                      std::string(label) + "'");
    }
    start = plus + 1;
  }
  return recipe;
}

std::filesystem::path default_stopword_file() {
  if (const char* dir = std::getenv("LMMATCH_DATA_DIR"); dir && *dir)
    return std::filesystem::path(dir) / "stopwords_fr.txt";
  return std::filesystem::path(LMMATCH_DATA_DIR) / "stopwords_fr.txt";
}

StopwordList load_stopwords(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  if (!utf8::is_valid(text))
    throw Error(ErrorKind::BadEncoding, path.string() + " is not valid UTF-8");
  StopwordList list;
  list.id = path.filename().string();
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + pos, end - pos);
    pos = end + 1;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
      line.remove_suffix(1);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (line.empty() || line.front() == '#') continue;
    list.words.insert(utf8::to_lower(line));
  }
  return list;
}

StopwordList default_stopwords() {
  StopwordList list = load_stopwords(default_stopword_file());
  list.id = "builtin-fr";
  return list;
}

TokenList tokenize(std::string_view text) { return tokenize_impl(text, true); }

TokenList tokenize_preserving_case(std::string_view text) { return tokenize_impl(text, false); }

TokenList remove_stopwords(const TokenList& tokens, const StopwordList& list) {
  if (list.empty())
    throw Error(ErrorKind::EmptyStopwordList, "stopword list '" + list.id + "' is empty");
  TokenList out;
  out.reserve(tokens.size());
  for (const std::string& token : tokens)
    if (!list.contains(token)) out.push_back(token);
  return out;
}

Expansion expand_abbreviations(const TokenList& tokens, const AbbrevLexicon& lexicon) {
  Expansion result;
  result.tokens.reserve(tokens.size());
  for (const std::string& token : tokens) {
    if (const LexiconEntry* entry = lexicon.find(token)) {
      result.tokens.insert(result.tokens.end(), entry->expansion.begin(), entry->expansion.end());
      ++result.substitution_count;
    } else {
      result.tokens.push_back(token);
    }
  }
  return result;
}

TokenList stem_tokens(const TokenList& tokens) {
  TokenList out;
  out.reserve(tokens.size());
  for (const std::string& token : tokens) out.push_back(stem_french_fixpoint(token));
  return out;
}

void check_resources(const PreprocessRecipe& recipe, const PreprocessResources& resources) {
  if (recipe.expand_abbrev && resources.lexicon == nullptr)
    throw Error(ErrorKind::InvalidConfig, "abbreviation expansion enabled without a lexicon");
  if (recipe.remove_stopwords && (resources.stopwords == nullptr || resources.stopwords->empty()))
    throw Error(ErrorKind::EmptyStopwordList, "stopword removal enabled without a stopword list");
}

ProcessedDoc preprocess(const Document& doc, const PreprocessRecipe& recipe,
                        const PreprocessResources& resources) {
  check_resources(recipe, resources);
  ProcessedDoc out;
  out.id = doc.id;
  out.kind = doc.kind;
  out.recipe = recipe;
  out.tokens = tokenize(doc.raw_text);
  if (recipe.expand_abbrev) {
    Expansion expanded = expand_abbreviations(out.tokens, *resources.lexicon);
    out.tokens = std::move(expanded.tokens);
    out.substitution_count = expanded.substitution_count;
  }
  if (recipe.remove_stopwords) out.tokens = remove_stopwords(out.tokens, *resources.stopwords);
  if (recipe.stem) {
    out.tokens = stem_tokens(out.tokens);
    // stems may coincide with listed stopwords
    if (recipe.remove_stopwords) out.tokens = remove_stopwords(out.tokens, *resources.stopwords);
  }
  return out;
}

}  // namespace lmmatch
