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

#include "lmmatch/corpus.hpp"

#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "lmmatch/error.hpp"
#include "lmmatch/textprep.hpp"
#include "lmmatch/utf8.hpp"

namespace lmmatch {
namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

bool is_blank(std::string_view text) {
  for (char c : text)
    if (c != ' ' && c != '\t' && c != '\n' && c != '\r' && c != '\v' && c != '\f') return false;
  return true;
}

std::string where(std::string_view source, std::size_t line_no) {
  return std::string(source) + ":" + std::to_string(line_no);
}

CollectionStats collection_stats(const std::vector<Document>& docs) {
  CollectionStats stats;
  stats.doc_count = docs.size();
  for (const Document& doc : docs) stats.total_tokens += tokenize(doc.raw_text).size();
  if (stats.doc_count > 0)
    stats.mean_token_length =
        static_cast<double>(stats.total_tokens) / static_cast<double>(stats.doc_count);
  return stats;
}

}  // namespace

std::string_view to_string(DocKind kind) {
  return kind == DocKind::Case ? "case" : "discussion";
}

const Document* Corpus::find(DocKind kind, std::string_view id) const {
  for (const Document& doc : documents(kind))
    if (doc.id == id) return &doc;
  return nullptr;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::MissingFile, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Corpus load_corpus(const std::filesystem::path& manifest_path) {
  const std::string manifest = read_file(manifest_path);
  const std::string source = manifest_path.string();
  if (!utf8::is_valid(manifest))
    throw Error(ErrorKind::BadEncoding, "manifest " + source + " is not valid UTF-8");
  const auto base = manifest_path.parent_path();

  Corpus corpus;
  std::set<std::pair<DocKind, std::string>> seen;
  std::istringstream lines(manifest);
  std::string raw_line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(lines, raw_line)) {
    ++line_no;
    const std::string_view line = strip_cr(raw_line);
    if (line.empty()) continue;
    const auto fields = split_tabs(line);
    if (!header_seen) {
      if (fields.size() != 3 || fields[0] != "id" || fields[1] != "kind" || fields[2] != "path")
        throw Error(ErrorKind::MalformedLine,
                    where(source, line_no) + ": expected header 'id\\tkind\\tpath'");
      header_seen = true;
      continue;
    }
    if (fields.size() != 3 || fields[0].empty() || fields[2].empty())
      throw Error(ErrorKind::MalformedLine, where(source, line_no) + ": expected 3 fields");

    Document doc;
    doc.id = std::string(fields[0]);
    if (fields[1] == "case") {
      doc.kind = DocKind::Case;
    } else if (fields[1] == "discussion") {
      doc.kind = DocKind::Discussion;
    } else {
      throw Error(ErrorKind::MalformedLine,
                  where(source, line_no) + ": unknown kind '" + std::string(fields[1]) + "'");
    }
    if (!seen.emplace(doc.kind, doc.id).second)
      throw Error(ErrorKind::DuplicateId, where(source, line_no) + ": duplicate " +
                                              std::string(to_string(doc.kind)) + " id '" +
                                              doc.id + "'");

    std::filesystem::path doc_path{std::string(fields[2])};
    if (doc_path.is_relative()) doc_path = base / doc_path;
    std::ifstream probe(doc_path, std::ios::binary);
    if (!probe)
      throw Error(ErrorKind::MissingFile,
                  where(source, line_no) + ": cannot open " + doc_path.string());
    probe.close();
    doc.raw_text = read_file(doc_path);
    if (!utf8::is_valid(doc.raw_text))
      throw Error(ErrorKind::BadEncoding,
                  where(source, line_no) + ": " + doc_path.string() + " is not valid UTF-8");
    if (is_blank(doc.raw_text))
      throw Error(ErrorKind::EmptyDocument,
                  where(source, line_no) + ": document '" + doc.id + "' is empty");

    (doc.kind == DocKind::Case ? corpus.cases : corpus.discussions).push_back(std::move(doc));
  }
  if (!header_seen) throw Error(ErrorKind::MalformedLine, source + ": empty manifest");
  if (corpus.cases.empty() || corpus.discussions.empty())
    throw Error(ErrorKind::EmptyCorpus, source + ": both cases and discussions are required");
  return corpus;
}

GoldAlignment parse_gold(std::string_view text, std::string_view source_name) {
  GoldAlignment gold;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = strip_cr(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (is_blank(line)) continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
      throw Error(ErrorKind::MalformedLine,
                  where(source_name, line_no) + ": expected 'case_id\\tdiscussion_id'");
    const auto [it, inserted] = gold.pairs.emplace(fields[0], fields[1]);
    if (!inserted)
      throw Error(ErrorKind::DuplicateId,
                  where(source_name, line_no) + ": case id '" + it->first + "' listed twice");
  }
  return gold;
}

GoldAlignment load_gold(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  if (!utf8::is_valid(text))
    throw Error(ErrorKind::BadEncoding, path.string() + " is not valid UTF-8");
  return parse_gold(text, path.string());
}

void validate_gold(const GoldAlignment& gold, const Corpus& corpus) {
  for (const auto& [case_id, discussion_id] : gold.pairs) {
    if (!corpus.find(DocKind::Case, case_id))
      throw Error(ErrorKind::UnknownId, "gold case id '" + case_id + "' not in corpus");
    if (!corpus.find(DocKind::Discussion, discussion_id))
      throw Error(ErrorKind::UnknownId,
                  "gold discussion id '" + discussion_id + "' not in corpus");
  }
}

CorpusStats corpus_stats(const Corpus& corpus) {
  return {collection_stats(corpus.cases), collection_stats(corpus.discussions)};
}

std::string serialize(const Corpus& corpus) {
  std::string out;
  for (const auto* docs : {&corpus.cases, &corpus.discussions}) {
    for (const Document& doc : *docs) {
      out += to_string(doc.kind);
      out += '\t';
      out += doc.id;
      out += '\t';
      out += std::to_string(doc.raw_text.size());
      out += '\n';
      out += doc.raw_text;
      out += '\n';
    }
  }
  return out;
}

void write_gold(std::ostream& out, const GoldAlignment& gold) {
  for (const auto& [case_id, discussion_id] : gold.pairs) out << case_id << '\t' << discussion_id << '\n';
}

}  // namespace lmmatch
