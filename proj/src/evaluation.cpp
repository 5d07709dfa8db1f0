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

#include "lmmatch/evaluation.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <tuple>

#include <fmt/format.h>

#include "lmmatch/error.hpp"

namespace lmmatch {
namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

EvalReport evaluate(const std::vector<MatchedPair>& pairs, const GoldAlignment& gold, const Corpus* corpus) {
  EvalReport report;
  report.n_pred = pairs.size();
  report.n_gold = gold.size();
  for (const MatchedPair& pair : pairs) {
    const bool known_case = corpus ? corpus->find(DocKind::Case, pair.case_id) != nullptr
                                   : gold.pairs.count(pair.case_id) > 0;
    // without a corpus the discussion side has no closed id set
    const bool known_discussion = !corpus || corpus->find(DocKind::Discussion, pair.discussion_id) != nullptr;
    if (!known_case) throw Error(ErrorKind::UnknownId, "predicted case '" + pair.case_id + "' is unknown");
    if (!known_discussion)
      throw Error(ErrorKind::UnknownId, "predicted discussion '" + pair.discussion_id + "' is unknown");
    const auto it = gold.pairs.find(pair.case_id);
    if (it != gold.pairs.end() && it->second == pair.discussion_id) ++report.n_correct;
  }
  report.precision = ratio(report.n_correct, report.n_pred);
  report.recall = ratio(report.n_correct, report.n_gold);
  return report;
}

EvalReport evaluate(const MatchResult& result, const GoldAlignment& gold) {
  EvalReport report = evaluate(result.pairs, gold, nullptr);
  report.config = result.config;
  return report;
}

EvalReport evaluate(const MatchResult& result, const GoldAlignment& gold, const Corpus& corpus) {
  validate_gold(gold, corpus);
  EvalReport report = evaluate(result.pairs, gold, &corpus);
  report.config = result.config;
  return report;
}

void GridSpec::validate() const {
  if (recipes.empty() || orders.empty() || directions.empty() || modes.empty())
    throw Error(ErrorKind::InvalidConfig, "grid '" + name + "' has an empty axis");
  for (int order : orders)
    if (order < 1 || order > LanguageModel::kMaxOrder)
      throw Error(ErrorKind::InvalidConfig, "grid order must be 1, 2 or 3");
}

std::size_t GridSpec::size() const {
  return recipes.size() * orders.size() * directions.size() * modes.size();
}

std::vector<MatchConfig> GridSpec::configurations() const {
  validate();
  std::vector<MatchConfig> configs;
  configs.reserve(size());
  for (const PreprocessRecipe& recipe : recipes)
    for (int order : orders)
      for (Direction direction : directions)
        for (MatchMode mode : modes) configs.push_back({recipe, order, smoothing, direction, mode});
  return configs;
}

std::vector<GridSpec> ablation_grid() {
  const PreprocessRecipe des = PreprocessRecipe::parse("des");
  GridSpec recipes{"recipes",
                   {PreprocessRecipe::parse("initial"), PreprocessRecipe::parse("rac"),
                    PreprocessRecipe::parse("rac+mv"), des},
                   {2},
                   {Direction::D2C},
                   {MatchMode::ExclusiveGreedy},
                   {}};
  GridSpec orders{"orders", {des}, {1, 2, 3}, {Direction::D2C}, {MatchMode::ExclusiveGreedy}, {}};
  GridSpec selection{"selection",
                     {des},
                     {2},
                     {Direction::D2C, Direction::C2D},
                     {MatchMode::ExclusiveGreedy, MatchMode::NonExclusive},
                     {}};
  return {recipes, orders, selection};
}

std::vector<EvalReport> run_grid(const Corpus& corpus, const GoldAlignment& gold, const GridSpec& spec,
                                 const PreprocessResources& resources, unsigned threads) {
  const std::vector<MatchConfig> configs = spec.configurations();
  validate_gold(gold, corpus);
  for (const MatchConfig& config : configs) {
    check_resources(config.recipe, resources);
    if (config.mode != MatchMode::NonExclusive && !corpus.is_square())
      throw Error(ErrorKind::NonSquareMatrix, "grid '" + spec.name + "' has exclusive runs on unequal collections");
  }

  std::vector<EvalReport> reports(configs.size());
  for (const PreprocessRecipe& recipe : spec.recipes) {
    const PreparedCorpus prepared = prepare_corpus(corpus, recipe, resources, threads);
    std::map<std::pair<int, Direction>, PerplexityMatrix> matrices;
    for (std::size_t index = 0; index < configs.size(); ++index) {
      const MatchConfig& config = configs[index];
      if (!(config.recipe == recipe)) continue;
      const auto key = std::make_pair(config.order, config.direction);
      auto it = matrices.find(key);
      if (it == matrices.end())
        it = matrices
                 .emplace(key, build_perplexity_matrix(prepared, config.order, config.smoothing,
                                                       config.direction, threads))
                 .first;
      MatchResult result = match(it->second, config.mode, config.direction);
      result.config = config;
      reports[index] = evaluate(result, gold, corpus);
      reports[index].group = spec.name;
    }
  }
  std::stable_sort(reports.begin(), reports.end(),
                   [](const EvalReport& a, const EvalReport& b) { return a.precision > b.precision; });
  return reports;
}

std::vector<EvalReport> run_grid(const Corpus& corpus, const GoldAlignment& gold,
                                 const std::vector<GridSpec>& specs, const PreprocessResources& resources,
                                 unsigned threads) {
  if (specs.empty()) throw Error(ErrorKind::InvalidConfig, "no grid to run");
  for (const GridSpec& spec : specs) spec.validate();
  std::vector<EvalReport> all;
  for (const GridSpec& spec : specs) {
    std::vector<EvalReport> part = run_grid(corpus, gold, spec, resources, threads);
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

void write_grid_csv(std::ostream& out, const std::vector<EvalReport>& reports) {
  out << "table,recipe,order,direction,mode,smoothing,precision,recall,n_correct,n_pred,n_gold\n";
  for (const EvalReport& r : reports)
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", r.group, r.config.recipe.label(), r.config.order,
                       to_string(r.config.direction), to_string(r.config.mode), r.config.smoothing.label(),
                       r.precision, r.recall, r.n_correct, r.n_pred, r.n_gold);
}

void print_grid_table(std::ostream& out, const std::vector<EvalReport>& reports) {
  out << fmt::format("{:<10} {:<11} {:>5} {:>4} {:>7} {:>9} {:>7}  {}\n", "table", "recipe", "order", "dir",
                     "mode", "precision", "recall", "correct");
  for (const EvalReport& r : reports)
    out << fmt::format("{:<10} {:<11} {:>5} {:>4} {:>7} {:>9.2f} {:>7.2f}  {}/{}\n", r.group,
                       r.config.recipe.label(), r.config.order, to_string(r.config.direction),
                       to_string(r.config.mode), 100.0 * r.precision, 100.0 * r.recall, r.n_correct, r.n_pred);
}

}  // namespace lmmatch
