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

#include <algorithm>
#include <ostream>
#include <set>

#include "lmmatch/error.hpp"
#include "lmmatch/textprep.hpp"
#include "lmmatch/utf8.hpp"

namespace lmmatch {
namespace {

constexpr std::size_t kMaxLongFormTokens = 12;

bool is_function_word(std::string_view lowered) {
  return lowered == "le" || lowered == "la" || lowered == "les" || lowered == "l'" ||
         lowered == "de" || lowered == "du" || lowered == "des" || lowered == "d'" ||
         lowered == "et";
}

bool is_word(std::string_view token) {
  auto decoded = utf8::decode(token);
  if (!decoded || decoded->empty()) return false;
  return utf8::is_letter(decoded->front());
}

char32_t initial(std::string_view token) {
  auto decoded = utf8::decode(token);
  return decoded && !decoded->empty() ? utf8::base_letter(decoded->front()) : U'\0';
}

std::u32string abbreviation_letters(std::string_view abbr) {
  std::u32string letters;
  for (char32_t c : utf8::decode(abbr).value_or(std::u32string{}))
    if (utf8::is_upper(c)) letters.push_back(utf8::base_letter(c));
  return letters;
}

std::vector<std::string> lowered(const std::vector<std::string>& tokens, std::size_t begin,
                                 std::size_t end) {
  std::vector<std::string> out;
  for (std::size_t i = begin; i < end; ++i) out.push_back(utf8::to_lower(tokens[i]));
  return out;
}

// `LongForm (ABBR)`: walk left from the '(' at `open`.
std::optional<AbbrevDefinition> long_form_before(const TokenList& tokens, std::size_t open) {
  const std::string& abbr = tokens[open + 1];
  const std::u32string letters = abbreviation_letters(abbr);
  std::size_t remaining = letters.size();
  std::size_t k = open;
  while (k > 0 && remaining > 0 && open - k < kMaxLongFormTokens) {
    const std::string& token = tokens[k - 1];
    if (!is_word(token)) return std::nullopt;
    if (is_function_word(utf8::to_lower(token))) {
      // long form must end on a content word
      if (remaining == letters.size()) return std::nullopt;
    } else {
      if (initial(token) != letters[remaining - 1]) return std::nullopt;
      --remaining;
    }
    --k;
  }
  if (remaining > 0) return std::nullopt;
  return AbbrevDefinition{utf8::to_lower(abbr), lowered(tokens, k, open)};
}

// `ABBR (LongForm)`: the parenthesis spans [open, close].
std::optional<AbbrevDefinition> long_form_inside(const TokenList& tokens, std::size_t open,
                                                 std::size_t close) {
  const std::string& abbr = tokens[open - 1];
  const std::u32string letters = abbreviation_letters(abbr);
  std::u32string initials;
  for (std::size_t i = open + 1; i < close; ++i) {
    if (!is_word(tokens[i])) return std::nullopt;
    const bool function = is_function_word(utf8::to_lower(tokens[i]));
    if (function && (i == open + 1 || i + 1 == close)) return std::nullopt;
    if (!function) initials.push_back(initial(tokens[i]));
  }
  if (initials != letters) return std::nullopt;
  return AbbrevDefinition{utf8::to_lower(abbr), lowered(tokens, open + 1, close)};
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& token : tokens) {
    if (!out.empty()) out += ' ';
    out += token;
  }
  return out;
}

}  // namespace

void AbbrevLexicon::set(std::string short_form, std::vector<std::string> expansion,
                        Provenance provenance) {
  if (utf8::length(short_form) < 2)
    throw Error(ErrorKind::InvalidConfig, "short form '" + short_form + "' is too short");
  if (expansion.empty())
    throw Error(ErrorKind::InvalidConfig, "short form '" + short_form + "' has no expansion");
  if (expansion.size() == 1 && expansion.front() == short_form)
    throw Error(ErrorKind::InvalidConfig, "short form '" + short_form + "' maps to itself");
  entries_[std::move(short_form)] = LexiconEntry{std::move(expansion), provenance};
}

const LexiconEntry* AbbrevLexicon::find(std::string_view short_form) const {
  const auto it = entries_.find(short_form);
  return it == entries_.end() ? nullptr : &it->second;
}

bool looks_like_abbreviation(std::string_view token) {
  const auto decoded = utf8::decode(token);
  if (!decoded || decoded->size() < 2 || decoded->size() > 8) return false;
  std::size_t upper = 0;
  for (char32_t c : *decoded) {
    if (!(utf8::is_letter(c) || utf8::is_digit(c) || c == U'-')) return false;
    if (utf8::is_upper(c)) ++upper;
  }
  return upper >= 2 && utf8::is_letter(decoded->front());
}

std::vector<AbbrevDefinition> find_definitions(std::string_view raw_text) {
  const TokenList tokens = tokenize_preserving_case(raw_text);
  std::vector<AbbrevDefinition> found;
  for (std::size_t open = 0; open < tokens.size(); ++open) {
    if (tokens[open] != "(") continue;
    std::size_t close = open + 1;
    while (close < tokens.size() && close - open <= kMaxLongFormTokens + 1 &&
           tokens[close] != ")" && tokens[close] != "(")
      ++close;
    if (close >= tokens.size() || tokens[close] != ")" || close == open + 1) continue;

    std::optional<AbbrevDefinition> definition;
    if (close == open + 2 && looks_like_abbreviation(tokens[open + 1]) && open > 0)
      definition = long_form_before(tokens, open);
    if (!definition && open > 0 && close > open + 2 && looks_like_abbreviation(tokens[open - 1]))
      definition = long_form_inside(tokens, open, close);
    if (definition) found.push_back(std::move(*definition));
  }
  return found;
}

LexiconExtraction extract_abbrev_lexicon(const Corpus& corpus, const AbbrevLexicon* user) {
  std::map<std::string, std::set<std::vector<std::string>>> candidates;
  LexiconExtraction result;
  for (const auto* docs : {&corpus.cases, &corpus.discussions}) {
    for (const Document& doc : *docs) {
      for (AbbrevDefinition& def : find_definitions(doc.raw_text)) {
        ++result.definitions_found;
        candidates[def.short_form].insert(std::move(def.expansion));
      }
    }
  }

  for (auto& [short_form, expansions] : candidates) {
    const bool user_has = user != nullptr && user->contains(short_form);
    if (expansions.size() > 1) {
      result.conflicts.push_back(LexiconConflict{
          short_form, {expansions.begin(), expansions.end()}, user_has});
      continue;
    }
    result.lexicon.set(short_form, *expansions.begin(), Provenance::ExtractedFromCorpus);
    ++result.extracted_entries;
  }
  if (user != nullptr) {
    for (const auto& [short_form, entry] : user->entries())
      result.lexicon.set(short_form, entry.expansion, Provenance::ProvidedFile);
  }
  return result;
}

AbbrevLexicon parse_lexicon(std::string_view text, std::string_view source_name) {
  AbbrevLexicon lexicon;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t tab = line.find('\t');
    const std::string where = std::string(source_name) + ":" + std::to_string(line_no);
    if (tab == std::string_view::npos)
      throw Error(ErrorKind::MalformedLine, where + ": expected 'short<TAB>expansion'");
    std::string short_form = utf8::to_lower(line.substr(0, tab));
    std::vector<std::string> expansion;
    std::string rest = utf8::to_lower(line.substr(tab + 1));
    std::size_t i = 0;
    while (i < rest.size()) {
      while (i < rest.size() && (rest[i] == ' ' || rest[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < rest.size() && rest[j] != ' ' && rest[j] != '\t') ++j;
      if (j > i) expansion.push_back(rest.substr(i, j - i));
      i = j;
    }
    try {
      lexicon.set(std::move(short_form), std::move(expansion), Provenance::ProvidedFile);
    } catch (const Error& e) {
      throw Error(ErrorKind::MalformedLine, where + ": " + e.what());
    }
  }
  return lexicon;
}

AbbrevLexicon load_lexicon(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  if (!utf8::is_valid(text))
    throw Error(ErrorKind::BadEncoding, path.string() + " is not valid UTF-8");
  return parse_lexicon(text, path.string());
}

void write_lexicon(std::ostream& out, const AbbrevLexicon& lexicon) {
  for (const auto& [short_form, entry] : lexicon.entries())
    out << short_form << '\t' << join(entry.expansion) << '\n';
}

void write_conflicts(std::ostream& out, const std::vector<LexiconConflict>& conflicts) {
  out << "short_form\tresolution\tcandidates\n";
  for (const LexiconConflict& conflict : conflicts) {
    out << conflict.short_form << '\t' << (conflict.resolved_by_user ? "user" : "dropped") << '\t';
    for (std::size_t i = 0; i < conflict.candidates.size(); ++i) {
      if (i > 0) out << " | ";
      out << join(conflict.candidates[i]);
    }
    out << '\n';
  }
}

}  // namespace lmmatch
