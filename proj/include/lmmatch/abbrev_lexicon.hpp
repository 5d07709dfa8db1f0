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
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lmmatch/corpus.hpp"

namespace lmmatch {

enum class Provenance { ExtractedFromCorpus, ProvidedFile };

struct LexiconEntry {
  std::vector<std::string> expansion;
  Provenance provenance = Provenance::ExtractedFromCorpus;
};

/// Functional mapping from a lowercased short form to its expansion.
class AbbrevLexicon {
 public:
  /// Inserts or replaces. Throws Error(InvalidConfig) if the entry breaks
  /// the lexicon invariants (short form < 2 characters, empty expansion,
  /// or a short form mapping to itself).
  void set(std::string short_form, std::vector<std::string> expansion, Provenance provenance);

  const LexiconEntry* find(std::string_view short_form) const;
  bool contains(std::string_view short_form) const { return find(short_form) != nullptr; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::map<std::string, LexiconEntry, std::less<>>& entries() const { return entries_; }

 private:
  std::map<std::string, LexiconEntry, std::less<>> entries_;
};

/// A `LongForm (ABBR)` or `ABBR (LongForm)` occurrence in raw text.
struct AbbrevDefinition {
  std::string short_form;               // lowercased
  std::vector<std::string> expansion;   // lowercased tokens
};

/// Abbreviation candidate: 2-8 characters, letters/digits/hyphens only,
/// at least two uppercase letters.
bool looks_like_abbreviation(std::string_view token);

/// Scans one raw (not yet lowercased) text for parenthetical definitions.
/// The uppercase letters of ABBR must match, in order, the initials of the
/// content words of the long form; le/la/les/l'/de/du/des/d'/et are
/// skipped when matching but kept in the expansion.
std::vector<AbbrevDefinition> find_definitions(std::string_view raw_text);

struct LexiconConflict {
  std::string short_form;
  std::vector<std::vector<std::string>> candidates;  // sorted, distinct
  bool resolved_by_user = false;
};

struct LexiconExtraction {
  AbbrevLexicon lexicon;
  std::vector<LexiconConflict> conflicts;  // sorted by short form
  std::size_t definitions_found = 0;
  std::size_t extracted_entries = 0;       // before merging user entries
};

/// Builds a lexicon from every document of both collections. Short forms
/// with more than one distinct extracted expansion are dropped and reported
/// unless `user` provides an entry for them. User entries win every
/// conflict. The result does not depend on document order.
LexiconExtraction extract_abbrev_lexicon(const Corpus& corpus, const AbbrevLexicon* user = nullptr);

/// `short<TAB>expansion words...` per line.
AbbrevLexicon load_lexicon(const std::filesystem::path& path);
AbbrevLexicon parse_lexicon(std::string_view text, std::string_view source_name = "<lexicon>");
void write_lexicon(std::ostream& out, const AbbrevLexicon& lexicon);
void write_conflicts(std::ostream& out, const std::vector<LexiconConflict>& conflicts);

}  // namespace lmmatch
