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

#include "lmmatch/matcher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include <fmt/format.h>

#include "lmmatch/error.hpp"
#include "lmmatch/parallel.hpp"

namespace lmmatch {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void require_square(const CostMatrix& costs) {
  if (!costs.is_square())
    throw Error(ErrorKind::NonSquareMatrix, fmt::format("exclusive matching needs a square matrix, got {}x{}",
                                                        costs.rows, costs.cols));
}

// Kuhn-Munkres with row/column potentials. On return u[i] + v[j] <= c(i, j)
// everywhere, with equality on the returned assignment.
Assignment hungarian(const CostMatrix& costs, std::vector<double>& u, std::vector<double>& v) {
  const std::size_t n = costs.rows;
  const double inf = std::numeric_limits<double>::infinity();
  // 1-based; column 0 is the virtual start
  std::vector<double> pu(n + 1, 0.0), pv(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> owner(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    owner[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = owner[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = costs.at(i0 - 1, j - 1) - pu[i0] - pv[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          pu[owner[j]] += delta;
          pv[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  Assignment assignment(n);
  for (std::size_t j = 1; j <= n; ++j) assignment[owner[j] - 1] = j - 1;
  u.assign(pu.begin() + 1, pu.end());
  v.assign(pv.begin() + 1, pv.end());
  return assignment;
}

// Every optimal assignment lives on the tight edges of an optimal dual, and
// every perfect matching of tight edges is optimal. Walk rows in order and
// move each one to its smallest tight column that still admits a perfect
// matching of the remaining rows, found as an alternating cycle.
void lexicographic_refine(const CostMatrix& costs, const std::vector<double>& u,
                          const std::vector<double>& v, Assignment& assignment) {
  const std::size_t n = costs.rows;
  double scale = 0.0;
  for (double c : costs.values) scale = std::max(scale, std::abs(c));
  const double eps = 1e-9 * std::max(scale, 1.0);

  std::vector<std::vector<std::size_t>> tight(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (costs.at(i, j) - u[i] - v[j] <= eps) tight[i].push_back(j);

  std::vector<std::size_t> row_of(n);
  for (std::size_t i = 0; i < n; ++i) row_of[assignment[i]] = i;

  std::vector<std::size_t> parent_row(n);
  std::vector<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t target : tight[i]) {
      if (target >= assignment[i]) break;
      const std::size_t holder = row_of[target];
      if (holder < i) continue;  // fixed by an earlier row
      // Re-route `holder` along tight edges of rows > i until some row can
      // take the column `i` releases.
      const std::size_t freed = assignment[i];
      std::fill(parent_row.begin(), parent_row.end(), kNone);
      queue.assign(1, holder);
      parent_row[target] = holder;
      std::size_t reached = kNone;
      for (std::size_t head = 0; head < queue.size() && reached == kNone; ++head) {
        const std::size_t r = queue[head];
        for (std::size_t c : tight[r]) {
          if (c == target || parent_row[c] != kNone) continue;
          parent_row[c] = r;
          if (c == freed) {
            reached = c;
            break;
          }
          const std::size_t next = row_of[c];
          if (next > i) queue.push_back(next);
        }
      }
      if (reached == kNone) continue;
      // shift columns back along the path
      std::size_t c = reached;
      while (c != target) {
        const std::size_t r = parent_row[c];
        const std::size_t previous = assignment[r];
        assignment[r] = c;
        row_of[c] = r;
        c = previous;
      }
      assignment[i] = target;
      row_of[target] = i;
      break;
    }
  }
}

MatchResult assemble(const PerplexityMatrix& matrix, const Assignment& assignment, MatchMode mode,
                     Direction direction) {
  MatchResult result;
  result.config.mode = mode;
  result.config.direction = direction;
  result.pairs.reserve(assignment.size());
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    const std::size_t j = assignment[i];
    const double ppl = matrix.values.at(i, j);
    const std::string& model = matrix.model_ids[i];
    const std::string& doc = matrix.doc_ids[j];
    if (direction == Direction::D2C)
      result.pairs.push_back({doc, model, ppl});
    else
      result.pairs.push_back({model, doc, ppl});
  }
  result.total_cost = assignment_cost(matrix.values, assignment);
  return result;
}

std::string lowercase_ascii(std::string_view text) {
  std::string out(text);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

}  // namespace

std::string_view to_string(Direction direction) {
  return direction == Direction::D2C ? "d2c" : "c2d";
}

std::string_view to_string(MatchMode mode) {
  switch (mode) {
    case MatchMode::NonExclusive:
      return "ne";
    case MatchMode::ExclusiveGreedy:
      return "greedy";
    case MatchMode::ExclusiveOptimal:
      return "optimal";
  }
  return "?";
}

Direction parse_direction(std::string_view text) {
  const std::string lower = lowercase_ascii(text);
  if (lower == "d2c") return Direction::D2C;
  if (lower == "c2d") return Direction::C2D;
  throw Error(ErrorKind::InvalidConfig, "unknown direction '" + std::string(text) + "'");
}

MatchMode parse_mode(std::string_view text) {
  const std::string lower = lowercase_ascii(text);
  if (lower == "ne" || lower == "nonexclusive" || lower == "non-exclusive") return MatchMode::NonExclusive;
  if (lower == "greedy" || lower == "e" || lower == "exclusive") return MatchMode::ExclusiveGreedy;
  if (lower == "optimal" || lower == "hungarian") return MatchMode::ExclusiveOptimal;
  throw Error(ErrorKind::InvalidConfig, "unknown mode '" + std::string(text) + "'");
}

CostMatrix CostMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  CostMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols) throw Error(ErrorKind::InvalidConfig, "ragged cost matrix");
    std::copy(rows[i].begin(), rows[i].end(), m.values.begin() + static_cast<std::ptrdiff_t>(i * m.cols));
  }
  return m;
}

Assignment select_nonexclusive(const CostMatrix& costs) {
  Assignment assignment(costs.rows, 0);
  for (std::size_t i = 0; i < costs.rows; ++i) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < costs.cols; ++j)
      if (costs.at(i, j) < costs.at(i, best)) best = j;
    assignment[i] = best;
  }
  return assignment;
}

Assignment select_exclusive_greedy(const CostMatrix& costs) {
  require_square(costs);
  const std::size_t n = costs.rows;
  std::vector<std::size_t> cells(n * n);
  std::iota(cells.begin(), cells.end(), std::size_t{0});
  // row-major index order already encodes the (row, column) tie rule
  std::stable_sort(cells.begin(), cells.end(),
                   [&](std::size_t a, std::size_t b) { return costs.values[a] < costs.values[b]; });
  Assignment assignment(n, kNone);
  std::vector<char> column_used(n, 0);
  std::size_t remaining = n;
  for (std::size_t cell : cells) {
    if (remaining == 0) break;
    const std::size_t i = cell / n;
    const std::size_t j = cell % n;
    if (assignment[i] != kNone || column_used[j]) continue;
    assignment[i] = j;
    column_used[j] = 1;
    --remaining;
  }
  return assignment;
}

Assignment select_optimal(const CostMatrix& costs) {
  require_square(costs);
  if (costs.rows == 0) return {};
  std::vector<double> u, v;
  Assignment assignment = hungarian(costs, u, v);
  lexicographic_refine(costs, u, v, assignment);
  return assignment;
}

double assignment_cost(const CostMatrix& costs, const Assignment& assignment) {
  double total = 0.0;
  for (std::size_t i = 0; i < assignment.size(); ++i) total += costs.at(i, assignment[i]);
  return total;
}

PerplexityMatrix perplexity_matrix(std::span<const LanguageModel> models,
                                   std::span<const ProcessedDoc> docs, unsigned threads) {
  if (models.empty() || docs.empty())
    throw Error(ErrorKind::EmptyCorpus, "perplexity matrix needs at least one model and one document");
  const LanguageModel& first = models.front();
  for (const LanguageModel& lm : models) {
    if (lm.vocab_ptr() != first.vocab_ptr() && !(lm.vocab() == first.vocab()))
      throw Error(ErrorKind::VocabularyMismatch,
                  "model '" + lm.source_id() + "' uses a different vocabulary than '" + first.source_id() + "'");
    if (lm.order() != first.order())
      throw Error(ErrorKind::InvalidConfig, "models of one matrix must share their order");
  }

  std::vector<std::vector<TokenId>> encoded(docs.size());
  for (std::size_t j = 0; j < docs.size(); ++j) encoded[j] = first.vocab().encode(docs[j].tokens);

  PerplexityMatrix matrix;
  for (const LanguageModel& lm : models) matrix.model_ids.push_back(lm.source_id());
  for (const ProcessedDoc& doc : docs) matrix.doc_ids.push_back(doc.id);
  matrix.values = CostMatrix(models.size(), docs.size());
  const std::size_t cols = docs.size();
  parallel_for(models.size() * cols, threads, [&](std::size_t cell) {
    const std::size_t i = cell / cols;
    const std::size_t j = cell % cols;
    if (encoded[j].empty())
      throw Error(ErrorKind::EmptySequence, "document '" + docs[j].id + "' has no tokens after preprocessing");
    matrix.values.at(i, j) = models[i].score(encoded[j]).ppl;
  });
  return matrix;
}

std::string MatchConfig::describe() const {
  return fmt::format("mode={} direction={} order={} recipe={} smoothing={}", to_string(mode),
                     to_string(direction), order, recipe.label(), smoothing.label());
}

MatchResult match(const PerplexityMatrix& matrix, MatchMode mode, Direction direction) {
  switch (mode) {
    case MatchMode::NonExclusive:
      return match_nonexclusive(matrix, direction);
    case MatchMode::ExclusiveGreedy:
      return match_exclusive_greedy(matrix, direction);
    case MatchMode::ExclusiveOptimal:
      return match_optimal(matrix, direction);
  }
  throw Error(ErrorKind::InvalidConfig, "unknown match mode");
}

MatchResult match_nonexclusive(const PerplexityMatrix& matrix, Direction direction) {
  return assemble(matrix, select_nonexclusive(matrix.values), MatchMode::NonExclusive, direction);
}

MatchResult match_exclusive_greedy(const PerplexityMatrix& matrix, Direction direction) {
  return assemble(matrix, select_exclusive_greedy(matrix.values), MatchMode::ExclusiveGreedy, direction);
}

MatchResult match_optimal(const PerplexityMatrix& matrix, Direction direction) {
  return assemble(matrix, select_optimal(matrix.values), MatchMode::ExclusiveOptimal, direction);
}

PreparedCorpus prepare_corpus(const Corpus& corpus, const PreprocessRecipe& recipe,
                              const PreprocessResources& resources, unsigned threads) {
  check_resources(recipe, resources);
  PreparedCorpus prepared;
  prepared.recipe = recipe;
  prepared.cases.resize(corpus.cases.size());
  prepared.discussions.resize(corpus.discussions.size());
  const std::size_t n_cases = corpus.cases.size();
  parallel_for(n_cases + corpus.discussions.size(), threads, [&](std::size_t k) {
    if (k < n_cases)
      prepared.cases[k] = preprocess(corpus.cases[k], recipe, resources);
    else
      prepared.discussions[k - n_cases] = preprocess(corpus.discussions[k - n_cases], recipe, resources);
  });
  prepared.vocab = std::make_shared<const Vocabulary>(
      Vocabulary::build(prepared.cases, prepared.discussions));
  return prepared;
}

PerplexityMatrix build_perplexity_matrix(const PreparedCorpus& prepared, int order,
                                         const SmoothingConfig& smoothing, Direction direction,
                                         unsigned threads) {
  const auto& sources = direction == Direction::D2C ? prepared.discussions : prepared.cases;
  const auto& targets = direction == Direction::D2C ? prepared.cases : prepared.discussions;
  std::vector<std::optional<LanguageModel>> trained(sources.size());
  parallel_for(sources.size(), threads, [&](std::size_t i) {
    trained[i] = LanguageModel::train(sources[i], order, prepared.vocab, smoothing);
  });
  std::vector<LanguageModel> models;
  models.reserve(trained.size());
  for (auto& lm : trained) models.push_back(std::move(*lm));
  return perplexity_matrix(models, targets, threads);
}

MatchResult run_match(const Corpus& corpus, const MatchConfig& config,
                      const PreprocessResources& resources, unsigned threads) {
  if (config.mode != MatchMode::NonExclusive && !corpus.is_square())
    throw Error(ErrorKind::NonSquareMatrix,
                fmt::format("exclusive matching needs equal collections, got {} cases and {} discussions",
                            corpus.cases.size(), corpus.discussions.size()));
  const PreparedCorpus prepared = prepare_corpus(corpus, config.recipe, resources, threads);
  const PerplexityMatrix matrix =
      build_perplexity_matrix(prepared, config.order, config.smoothing, config.direction, threads);
  MatchResult result = match(matrix, config.mode, config.direction);
  result.config = config;
  return result;
}

void write_result_tsv(std::ostream& out, const MatchResult& result) {
  out << "# " << result.config.describe() << fmt::format(" cost=raw-ppl total_cost={}", result.total_cost)
      << '\n';
  for (const MatchedPair& pair : result.pairs)
    out << fmt::format("{}\t{}\t{}\n", pair.case_id, pair.discussion_id, pair.ppl);
}

std::vector<MatchedPair> read_result_tsv(std::string_view text) {
  std::vector<MatchedPair> pairs;
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
    const std::size_t t1 = line.find('\t');
    const std::size_t t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos)
      throw Error(ErrorKind::MalformedLine,
                  fmt::format("result line {}: expected case_id<TAB>discussion_id<TAB>ppl", line_no));
    MatchedPair pair{std::string(line.substr(0, t1)), std::string(line.substr(t1 + 1, t2 - t1 - 1)), 0.0};
    const std::string ppl(line.substr(t2 + 1));
    char* parse_end = nullptr;
    pair.ppl = std::strtod(ppl.c_str(), &parse_end);
    if (ppl.empty() || *parse_end != '\0')
      throw Error(ErrorKind::MalformedLine, fmt::format("result line {}: bad ppl '{}'", line_no, ppl));
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

}  // namespace lmmatch
