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
#include <string>
#include <vector>

#include "lmmatch/corpus.hpp"
#include "lmmatch/matcher.hpp"

namespace lmmatch {

struct EvalReport {
  double precision = 0.0;  // n_correct / n_pred
  double recall = 0.0;     // n_correct / n_gold
  std::size_t n_correct = 0;
  std::size_t n_pred = 0;
  std::size_t n_gold = 0;
  MatchConfig config;
  std::string group;  // grid sub-table the run belongs to, if any
};

/// A pair (c, d) is correct iff gold maps c to d. Predicted case ids must be
/// gold keys; anything else throws UnknownId. Discussion ids are not checked.
EvalReport evaluate(const MatchResult& result, const GoldAlignment& gold);
/// Same, but predicted ids are checked against the corpus, so gold may
/// cover only part of it.
EvalReport evaluate(const MatchResult& result, const GoldAlignment& gold, const Corpus& corpus);
EvalReport evaluate(const std::vector<MatchedPair>& pairs, const GoldAlignment& gold,
                    const Corpus* corpus = nullptr);

struct GridSpec {
  std::string name;
  std::vector<PreprocessRecipe> recipes;
  std::vector<int> orders;
  std::vector<Direction> directions;
  std::vector<MatchMode> modes;
  SmoothingConfig smoothing;

  /// Throws InvalidConfig on an empty axis or an order outside 1..3.
  void validate() const;
  std::size_t size() const;
  /// Cartesian product, recipe-major, then order, direction, mode.
  std::vector<MatchConfig> configurations() const;
};

/// The three ablations: preprocessing recipes (order 2, d2c, E), orders
/// 1..3 (des, d2c, E) and direction x mode (des, order 2). 4 + 3 + 4 rows.
std::vector<GridSpec> ablation_grid();

/// One report per configuration, sorted by precision descending; ties keep
/// configuration order. Preprocessing and matrices are computed once per
/// recipe and per (recipe, order, direction).
std::vector<EvalReport> run_grid(const Corpus& corpus, const GoldAlignment& gold, const GridSpec& spec,
                                 const PreprocessResources& resources, unsigned threads = 0);
/// Runs several grids; each sub-grid is sorted on its own and reports are
/// concatenated in spec order.
std::vector<EvalReport> run_grid(const Corpus& corpus, const GoldAlignment& gold,
                                 const std::vector<GridSpec>& specs, const PreprocessResources& resources,
                                 unsigned threads = 0);

/// Header `table,recipe,order,direction,mode,smoothing,precision,recall,
/// n_correct,n_pred,n_gold`, values at full precision.
void write_grid_csv(std::ostream& out, const std::vector<EvalReport>& reports);
/// Aligned table, precision shown as a percentage with two decimals.
void print_grid_table(std::ostream& out, const std::vector<EvalReport>& reports);

}  // namespace lmmatch
