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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "lmmatch/abbrev_lexicon.hpp"
#include "lmmatch/corpus.hpp"
#include "lmmatch/error.hpp"
#include "lmmatch/evaluation.hpp"
#include "lmmatch/matcher.hpp"
#include "lmmatch/textprep.hpp"
#include "synth.hpp"

namespace fs = std::filesystem;
using namespace lmmatch;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

struct Options {
  std::string corpus;
  std::string gold;
  std::string out;
  std::string recipe;
  bool stem = false;
  bool stopwords = false;
  bool expand = false;
  int order = 2;
  std::string direction = "d2c";
  std::string mode = "greedy";
  std::string smoothing = "witten-bell";
  std::optional<double> k;
  std::string stopword_file;
  std::string lexicon_file;
  unsigned threads = 0;

  // grid
  std::string preset;
  std::vector<std::string> recipes;
  std::vector<int> orders;
  std::vector<std::string> directions;
  std::vector<std::string> modes;

  // eval
  std::string result;

  // synth
  synth::Params synth;
  bool no_abbrev = false;
};

// Resources a recipe may need, owned for the duration of a command.
struct Resources {
  std::optional<StopwordList> stopwords;
  std::optional<AbbrevLexicon> lexicon;
  std::string stopword_id = "builtin-fr";
  std::string lexicon_id = "extracted";

  PreprocessResources view() const {
    return {lexicon ? &*lexicon : nullptr, stopwords ? &*stopwords : nullptr};
  }
  PreprocessRecipe stamp(PreprocessRecipe recipe) const {
    recipe.stopword_list_id = stopword_id;
    recipe.lexicon_id = lexicon_id;
    return recipe;
  }
};

PreprocessRecipe recipe_from(const Options& o) {
  PreprocessRecipe recipe = o.recipe.empty() ? PreprocessRecipe{} : PreprocessRecipe::parse(o.recipe);
  recipe.stem = recipe.stem || o.stem;
  recipe.remove_stopwords = recipe.remove_stopwords || o.stopwords;
  recipe.expand_abbrev = recipe.expand_abbrev || o.expand;
  return recipe;
}

SmoothingConfig smoothing_from(const Options& o) {
  if (o.smoothing == "witten-bell" || o.smoothing == "wb") {
    if (o.k) throw Error(ErrorKind::InvalidConfig, "--k only applies to --smoothing addk");
    return SmoothingConfig::witten_bell();
  }
  if (o.smoothing == "addk" || o.smoothing == "add-k") return SmoothingConfig::add_k(o.k.value_or(1.0));
  throw Error(ErrorKind::InvalidConfig, "unknown smoothing '" + o.smoothing + "'");
}

std::optional<AbbrevLexicon> user_lexicon(const Options& o) {
  if (o.lexicon_file.empty()) return std::nullopt;
  return load_lexicon(o.lexicon_file);
}

Resources load_resources(const Options& o, const Corpus& corpus, bool need_stopwords, bool need_lexicon) {
  Resources resources;
  if (need_stopwords) {
    resources.stopwords = o.stopword_file.empty() ? default_stopwords() : load_stopwords(o.stopword_file);
    resources.stopword_id = resources.stopwords->id;
  }
  if (need_lexicon) {
    const auto user = user_lexicon(o);
    LexiconExtraction extraction = extract_abbrev_lexicon(corpus, user ? &*user : nullptr);
    for (const LexiconConflict& conflict : extraction.conflicts)
      if (!conflict.resolved_by_user)
        std::cerr << "warning: ConflictingExtraction: '" << conflict.short_form << "' has "
                  << conflict.candidates.size() << " expansions, dropped\n";
    resources.lexicon = std::move(extraction.lexicon);
    resources.lexicon_id = user ? "extracted+" + fs::path(o.lexicon_file).filename().string() : "extracted";
  }
  return resources;
}

fs::path prepare_out(const Options& o) {
  const fs::path out(o.out);
  fs::create_directories(out);
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  file << text;
  if (!file) throw Error(ErrorKind::MissingFile, "cannot write " + path.string());
}

int cmd_lexicon(const Options& o) {
  const Corpus corpus = load_corpus(o.corpus);
  const auto user = user_lexicon(o);
  const LexiconExtraction extraction = extract_abbrev_lexicon(corpus, user ? &*user : nullptr);
  const fs::path out = prepare_out(o);
  std::ostringstream lexicon, conflicts;
  write_lexicon(lexicon, extraction.lexicon);
  write_conflicts(conflicts, extraction.conflicts);
  write_text(out / "lexicon.tsv", lexicon.str());
  write_text(out / "conflicts.tsv", conflicts.str());
  for (const LexiconConflict& conflict : extraction.conflicts)
    std::cerr << fmt::format("{}: ConflictingExtraction: '{}' has {} expansions\n",
                             conflict.resolved_by_user ? "note" : "warning", conflict.short_form,
                             conflict.candidates.size());
  std::cout << fmt::format("entries {} (extracted {}, definitions {}, conflicts {})\n",
                           extraction.lexicon.size(), extraction.extracted_entries, extraction.definitions_found,
                           extraction.conflicts.size());
  return 0;
}

int cmd_preprocess(const Options& o) {
  const Corpus corpus = load_corpus(o.corpus);
  PreprocessRecipe recipe = recipe_from(o);
  const Resources resources = load_resources(o, corpus, recipe.remove_stopwords, recipe.expand_abbrev);
  recipe = resources.stamp(recipe);
  const PreparedCorpus prepared = prepare_corpus(corpus, recipe, resources.view(), o.threads);
  const fs::path out = prepare_out(o);
  std::ostringstream text;
  text << "# recipe=" << recipe.label() << " stopwords=" << recipe.stopword_list_id
       << " lexicon=" << recipe.lexicon_id << '\n';
  std::size_t substitutions = 0;
  for (const auto* docs : {&prepared.cases, &prepared.discussions}) {
    for (const ProcessedDoc& doc : *docs) {
      text << doc.id << '\t' << to_string(doc.kind) << '\t' << doc.substitution_count << '\t';
      for (std::size_t i = 0; i < doc.tokens.size(); ++i) text << (i ? " " : "") << doc.tokens[i];
      text << '\n';
      substitutions += doc.substitution_count;
    }
  }
  write_text(out / "processed.tsv", text.str());
  std::cout << fmt::format("documents {} vocabulary {} substitutions {}\n",
                           prepared.cases.size() + prepared.discussions.size(), prepared.vocab->size(),
                           substitutions);
  return 0;
}

void print_report(const EvalReport& r) {
  std::cout << fmt::format("precision {:.4f} recall {:.4f} correct {} predicted {} gold {}\n", r.precision,
                           r.recall, r.n_correct, r.n_pred, r.n_gold);
}

std::string report_tsv(const EvalReport& r) {
  return fmt::format("precision\trecall\tn_correct\tn_pred\tn_gold\n{}\t{}\t{}\t{}\t{}\n", r.precision, r.recall,
                     r.n_correct, r.n_pred, r.n_gold);
}

int cmd_match(const Options& o) {
  MatchConfig config{recipe_from(o), o.order, smoothing_from(o), parse_direction(o.direction), parse_mode(o.mode)};
  const Corpus corpus = load_corpus(o.corpus);
  std::optional<GoldAlignment> gold;
  if (!o.gold.empty()) {
    gold = load_gold(o.gold);
    validate_gold(*gold, corpus);
  }
  if (config.mode != MatchMode::NonExclusive && !corpus.is_square())
    throw Error(ErrorKind::NonSquareMatrix,
                fmt::format("exclusive matching needs equal collections, got {} cases and {} discussions",
                            corpus.cases.size(), corpus.discussions.size()));
  const Resources resources =
      load_resources(o, corpus, config.recipe.remove_stopwords, config.recipe.expand_abbrev);
  config.recipe = resources.stamp(config.recipe);
  const MatchResult result = run_match(corpus, config, resources.view(), o.threads);

  const fs::path out = prepare_out(o);
  std::ostringstream text;
  write_result_tsv(text, result);
  write_text(out / "result.tsv", text.str());
  std::cout << fmt::format("{} pairs, total cost {}\n", result.pairs.size(), result.total_cost);
  if (gold) {
    const EvalReport report = evaluate(result, *gold, corpus);
    write_text(out / "eval.tsv", report_tsv(report));
    print_report(report);
  }
  return 0;
}

GridSpec grid_from(const Options& o) {
  GridSpec spec;
  spec.name = "grid";
  spec.smoothing = smoothing_from(o);
  for (const std::string& label : o.recipes) spec.recipes.push_back(PreprocessRecipe::parse(label));
  spec.orders = o.orders;
  for (const std::string& d : o.directions) spec.directions.push_back(parse_direction(d));
  for (const std::string& m : o.modes) spec.modes.push_back(parse_mode(m));
  spec.validate();
  return spec;
}

int cmd_grid(const Options& o) {
  std::vector<GridSpec> specs;
  if (!o.preset.empty()) {
    if (o.preset != "ablations") throw Error(ErrorKind::InvalidConfig, "unknown preset '" + o.preset + "'");
    if (!o.recipes.empty() || !o.orders.empty() || !o.directions.empty() || !o.modes.empty())
      throw Error(ErrorKind::InvalidConfig, "--preset cannot be combined with explicit axes");
    specs = ablation_grid();
    const SmoothingConfig smoothing = smoothing_from(o);
    for (GridSpec& spec : specs) spec.smoothing = smoothing;
  } else {
    specs.push_back(grid_from(o));
  }
  bool need_stopwords = false, need_lexicon = false;
  for (const GridSpec& spec : specs)
    for (const PreprocessRecipe& recipe : spec.recipes) {
      need_stopwords = need_stopwords || recipe.remove_stopwords;
      need_lexicon = need_lexicon || recipe.expand_abbrev;
    }

  const Corpus corpus = load_corpus(o.corpus);
  const GoldAlignment gold = load_gold(o.gold);
  const Resources resources = load_resources(o, corpus, need_stopwords, need_lexicon);
  for (GridSpec& spec : specs)
    for (PreprocessRecipe& recipe : spec.recipes) recipe = resources.stamp(recipe);

  const std::vector<EvalReport> reports = run_grid(corpus, gold, specs, resources.view(), o.threads);
  const fs::path out = prepare_out(o);
  std::ostringstream csv;
  write_grid_csv(csv, reports);
  write_text(out / "grid.csv", csv.str());
  print_grid_table(std::cout, reports);
  return 0;
}

int cmd_eval(const Options& o) {
  const MatchResult result{{}, read_result_tsv(read_file(o.result)), 0.0};
  const GoldAlignment gold = load_gold(o.gold);
  EvalReport report;
  if (o.corpus.empty()) {
    report = evaluate(result, gold);
  } else {
    const Corpus corpus = load_corpus(o.corpus);
    report = evaluate(result, gold, corpus);
  }
  print_report(report);
  if (!o.out.empty()) write_text(prepare_out(o) / "eval.tsv", report_tsv(report));
  return 0;
}

int cmd_synth(const Options& o) {
  synth::Params params = o.synth;
  params.abbreviations = !o.no_abbrev;
  const synth::SynthCorpus corpus = synth::generate(params);
  const fs::path manifest = synth::write(corpus, o.out);
  std::cout << fmt::format("{} pairs written to {}\n", corpus.corpus.cases.size(), manifest.string());
  return 0;
}

int cmd_stats(const Options& o) {
  const Corpus corpus = load_corpus(o.corpus);
  const CorpusStats stats = corpus_stats(corpus);
  std::ostringstream text;
  text << "kind\tdoc_count\ttotal_tokens\tmean_token_length\n";
  text << fmt::format("case\t{}\t{}\t{:.4f}\n", stats.cases.doc_count, stats.cases.total_tokens,
                      stats.cases.mean_token_length);
  text << fmt::format("discussion\t{}\t{}\t{:.4f}\n", stats.discussions.doc_count, stats.discussions.total_tokens,
                      stats.discussions.mean_token_length);
  std::cout << text.str();
  if (!o.out.empty()) write_text(prepare_out(o) / "stats.tsv", text.str());
  return 0;
}

// Flags of the active subcommand with their effective values, in the
// format --config reads back.
std::string resolved_config(const CLI::App& app, const std::string& name) {
  std::istringstream all(app.config_to_str(true, false));
  std::string out = "# lmmatch " + name + "\n";
  const std::string prefix = name + ".";
  for (std::string line; std::getline(all, line);)
    if (line.rfind(prefix, 0) == 0 && line.find("=\"\"") == std::string::npos) out += line + "\n";
  return out;
}

void add_corpus(CLI::App* cmd, Options& o, bool required = true) {
  auto* opt = cmd->add_option("--corpus", o.corpus, "Corpus manifest (id<TAB>kind<TAB>path)");
  if (required) opt->required();
}

void add_out(CLI::App* cmd, Options& o, bool required = true) {
  auto* opt = cmd->add_option("--out", o.out, "Output directory");
  if (required) opt->required();
}

void add_recipe(CLI::App* cmd, Options& o) {
  cmd->add_option("--recipe", o.recipe, "Recipe label, e.g. rac+mv+des");
  cmd->add_flag("--stem", o.stem, "Snowball French stemming (rac)");
  cmd->add_flag("--stopwords", o.stopwords, "Stopword removal (mv)");
  cmd->add_flag("--expand", o.expand, "Abbreviation expansion (des)");
}

void add_resources(CLI::App* cmd, Options& o) {
  cmd->add_option("--stopword-file", o.stopword_file, "Stopword list, one word per line");
  cmd->add_option("--lexicon-file", o.lexicon_file, "User abbreviation lexicon; wins conflicts")
      ;
}

void add_model(CLI::App* cmd, Options& o) {
  cmd->add_option("--smoothing", o.smoothing, "witten-bell or addk")
      ->check(CLI::IsMember({"witten-bell", "wb", "addk", "add-k"}));
  cmd->add_option("--k", o.k, "Add-k constant")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", o.threads, "Worker threads, 0 = all cores");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matches cases to discussions with per-document n-gram language models"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Config file (TOML/INI); command-line flags win");
  app.option_defaults()->always_capture_default();
  Options o;

  auto* lexicon = app.add_subcommand("lexicon", "Extract the abbreviation lexicon and conflict report");
  add_corpus(lexicon, o);
  add_out(lexicon, o);
  lexicon->add_option("--lexicon-file", o.lexicon_file, "User abbreviation lexicon; wins conflicts")
      ;

  auto* preprocess = app.add_subcommand("preprocess", "Write the preprocessed token streams");
  add_corpus(preprocess, o);
  add_out(preprocess, o);
  add_recipe(preprocess, o);
  add_resources(preprocess, o);
  preprocess->add_option("--threads", o.threads, "Worker threads, 0 = all cores");

  auto* match = app.add_subcommand("match", "Build the perplexity matrix and select pairs");
  add_corpus(match, o);
  add_out(match, o);
  add_recipe(match, o);
  add_resources(match, o);
  add_model(match, o);
  match->add_option("--gold", o.gold, "Gold alignment; adds an evaluation");
  match->add_option("--order", o.order, "n-gram order")->check(CLI::Range(1, 3));
  match->add_option("--direction", o.direction, "d2c or c2d")->check(CLI::IsMember({"d2c", "c2d"}));
  match->add_option("--mode", o.mode, "ne, greedy or optimal")->check(CLI::IsMember({"ne", "greedy", "optimal"}));

  auto* grid = app.add_subcommand("grid", "Run and score a grid of configurations");
  add_corpus(grid, o);
  add_out(grid, o);
  add_resources(grid, o);
  add_model(grid, o);
  grid->add_option("--gold", o.gold, "Gold alignment")->required();
  grid->add_option("--preset", o.preset, "ablations: the recipe, order and selection grids")
      ->check(CLI::IsMember({"ablations"}));
  grid->add_option("--recipes", o.recipes, "Recipe labels")->delimiter(',');
  grid->add_option("--orders", o.orders, "Orders")->delimiter(',')->check(CLI::Range(1, 3));
  grid->add_option("--directions", o.directions, "Directions")->delimiter(',')
      ->check(CLI::IsMember({"d2c", "c2d"}));
  grid->add_option("--modes", o.modes, "Modes")->delimiter(',')
      ->check(CLI::IsMember({"ne", "greedy", "optimal"}));

  auto* eval = app.add_subcommand("eval", "Score a result TSV against a gold alignment");
  eval->add_option("--result", o.result, "Result TSV")->required();
  eval->add_option("--gold", o.gold, "Gold alignment")->required();
  add_corpus(eval, o, false);
  add_out(eval, o, false);

  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic paired corpus with gold");
  add_out(synth_cmd, o);
  synth_cmd->add_option("--seed", o.synth.seed, "Random seed")->required();
  synth_cmd->add_option("--pairs", o.synth.pairs, "Number of case/discussion pairs")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--case-length", o.synth.case_length, "Words per case")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--ratio", o.synth.ratio, "Discussion/case length ratio")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--rare-per-pair", o.synth.rare_per_pair, "Private rare words per pair");
  synth_cmd->add_option("--rare-rate", o.synth.rare_rate, "Share of words drawn from the pair pool")
      ->check(CLI::Range(0.0, 1.0));
  synth_cmd->add_option("--filler-vocab", o.synth.filler_vocab, "Common filler pseudo-words");
  synth_cmd->add_option("--zipf", o.synth.zipf_exponent, "Zipf exponent of the filler")
      ->check(CLI::NonNegativeNumber);
  synth_cmd->add_flag("--no-abbrev", o.no_abbrev, "Do not plant acronym definitions");

  auto* stats = app.add_subcommand("stats", "Document counts and mean token lengths");
  add_corpus(stats, o);
  add_out(stats, o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    CLI::App* cmd = app.get_subcommands().front();
    if (!o.out.empty()) {
      fs::create_directories(o.out);
      write_text(fs::path(o.out) / "run_config.toml", resolved_config(app, cmd->get_name()));
    }
    const std::string name = cmd->get_name();
    if (name == "lexicon") return cmd_lexicon(o);
    if (name == "preprocess") return cmd_preprocess(o);
    if (name == "match") return cmd_match(o);
    if (name == "grid") return cmd_grid(o);
    if (name == "eval") return cmd_eval(o);
    if (name == "synth") return cmd_synth(o);
    if (name == "stats") return cmd_stats(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_config_error(e.kind()) ? kExitConfig : kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitConfig;
}
