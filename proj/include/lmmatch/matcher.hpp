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
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lmmatch/corpus.hpp"
#include "lmmatch/ngram_lm.hpp"
#include "lmmatch/textprep.hpp"

namespace lmmatch {

// D2C: models trained on discussions score the cases.
// C2D: models trained on cases score the discussions.
enum class Direction { D2C, C2D };
enum class MatchMode { NonExclusive, ExclusiveGreedy, ExclusiveOptimal };

std::string_view to_string(Direction direction);
std::string_view to_string(MatchMode mode);
Direction parse_direction(std::string_view text);
MatchMode parse_mode(std::string_view text);

/// Dense row-major cost matrix.
struct CostMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  CostMatrix() = default;
  CostMatrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), values(r * c, fill) {}
  static CostMatrix from_rows(const std::vector<std::vector<double>>& rows);

  double& at(std::size_t i, std::size_t j) { return values[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
  bool is_square() const { return rows == cols; }
};

/// values.at(i, j) = perplexity of model i on document j.
struct PerplexityMatrix {
  std::vector<std::string> model_ids;
  std::vector<std::string> doc_ids;
  CostMatrix values;
};

// Column chosen for each row.
using Assignment = std::vector<std::size_t>;

/// Per-row argmin; ties go to the lowest column.
Assignment select_nonexclusive(const CostMatrix& costs);
/// Repeatedly takes the global minimum among live cells (ties: lowest row,
/// then lowest column) and retires its row and column.
Assignment select_exclusive_greedy(const CostMatrix& costs);
/// Minimum-cost bijection (Hungarian). Among optimal assignments, returns
/// the lexicographically smallest one.
Assignment select_optimal(const CostMatrix& costs);

/// Sum of the selected cells, accumulated in row order.
double assignment_cost(const CostMatrix& costs, const Assignment& assignment);

/// Scores every document with every model. Rows are computed in parallel;
/// the result does not depend on the thread count. `threads` = 0 uses the
/// hardware concurrency.
PerplexityMatrix perplexity_matrix(std::span<const LanguageModel> models,
                                   std::span<const ProcessedDoc> docs, unsigned threads = 0);

struct MatchedPair {
  std::string case_id;
  std::string discussion_id;
  double ppl = 0.0;
};

struct MatchConfig {
  PreprocessRecipe recipe;
  int order = 2;
  SmoothingConfig smoothing;
  Direction direction = Direction::D2C;
  MatchMode mode = MatchMode::ExclusiveGreedy;

  std::string describe() const;
};

struct MatchResult {
  MatchConfig config;
  std::vector<MatchedPair> pairs;  // one per model row, in row order
  double total_cost = 0.0;

  MatchMode mode() const { return config.mode; }
  Direction direction() const { return config.direction; }
};

/// Runs the selected matcher on `matrix`. Exclusive modes throw
/// NonSquareMatrix for non-square input. Pairs are always reported as
/// (case, discussion).
MatchResult match(const PerplexityMatrix& matrix, MatchMode mode, Direction direction);
MatchResult match_nonexclusive(const PerplexityMatrix& matrix, Direction direction);
MatchResult match_exclusive_greedy(const PerplexityMatrix& matrix, Direction direction);
MatchResult match_optimal(const PerplexityMatrix& matrix, Direction direction);

/// Both collections preprocessed under one recipe, plus their shared
/// vocabulary.
struct PreparedCorpus {
  PreprocessRecipe recipe;
  std::vector<ProcessedDoc> cases;
  std::vector<ProcessedDoc> discussions;
  std::shared_ptr<const Vocabulary> vocab;
};

PreparedCorpus prepare_corpus(const Corpus& corpus, const PreprocessRecipe& recipe,
                              const PreprocessResources& resources, unsigned threads = 0);

/// Trains one model per source document of `direction` and scores the
/// opposite collection.
PerplexityMatrix build_perplexity_matrix(const PreparedCorpus& prepared, int order,
                                         const SmoothingConfig& smoothing, Direction direction,
                                         unsigned threads = 0);

/// preprocess -> vocabulary -> per-document models -> matrix -> matcher.
MatchResult run_match(const Corpus& corpus, const MatchConfig& config,
                      const PreprocessResources& resources, unsigned threads = 0);

/// `case_id<TAB>discussion_id<TAB>ppl` rows after one `# ...` config line.
void write_result_tsv(std::ostream& out, const MatchResult& result);
/// Reads the pairs back; the config line is ignored.
std::vector<MatchedPair> read_result_tsv(std::string_view text);

}  // namespace lmmatch
