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
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace lmmatch {

enum class DocKind { Case, Discussion };

std::string_view to_string(DocKind kind);

struct Document {
  std::string id;
  DocKind kind = DocKind::Case;
  std::string raw_text;
};

// Cases and discussions in manifest order. Ids are unique per kind; raw
// texts may repeat (identical discussions do occur in practice).
struct Corpus {
  std::vector<Document> cases;
  std::vector<Document> discussions;

  const std::vector<Document>& documents(DocKind kind) const {
    return kind == DocKind::Case ? cases : discussions;
  }
  const Document* find(DocKind kind, std::string_view id) const;
  bool is_square() const { return cases.size() == discussions.size(); }
};

// case_id -> discussion_id
struct GoldAlignment {
  std::map<std::string, std::string> pairs;

  std::size_t size() const { return pairs.size(); }
};

struct CollectionStats {
  std::size_t doc_count = 0;
  std::size_t total_tokens = 0;
  double mean_token_length = 0.0;
};

struct CorpusStats {
  CollectionStats cases;
  CollectionStats discussions;
};

/// Loads a manifest TSV with header `id<TAB>kind<TAB>path`. Relative paths
/// are resolved against the manifest's directory. Errors name the manifest
/// line that caused them.
Corpus load_corpus(const std::filesystem::path& manifest_path);

/// Parses `case_id<TAB>discussion_id` lines. Blank lines are skipped.
GoldAlignment parse_gold(std::string_view text, std::string_view source_name = "<gold>");
GoldAlignment load_gold(const std::filesystem::path& path);

/// Throws UnknownId if the alignment references ids absent from `corpus`.
void validate_gold(const GoldAlignment& gold, const Corpus& corpus);

/// Token counts with the baseline tokenizer (lowercase + tokenize only).
CorpusStats corpus_stats(const Corpus& corpus);

/// Canonical text form of a corpus, used to check load determinism.
std::string serialize(const Corpus& corpus);

void write_gold(std::ostream& out, const GoldAlignment& gold);

std::string read_file(const std::filesystem::path& path);

}  // namespace lmmatch
