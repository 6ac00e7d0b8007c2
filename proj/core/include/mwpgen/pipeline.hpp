// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mwpgen Authors

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mwpgen/bleu.hpp"
#include "mwpgen/constraints.hpp"
#include "mwpgen/corpus.hpp"
#include "mwpgen/sampler.hpp"
#include "mwpgen/training.hpp"

namespace mwpgen {

struct PipelineConfig {
  std::filesystem::path corpus;
  Language language = Language::english;
  TokenMode token_mode = TokenMode::character;
  int stride = 1;
  int min_word_count = 1;
  /// Share of corpus questions held out as BLEU references; 0 scores
  /// against the whole corpus.
  double holdout_fraction = 0.0;
  ModelConfig model;
  TrainingConfig training;
  GenerationConfig generation;
  std::optional<std::filesystem::path> units_dictionary;
  std::filesystem::path out_dir = "mwpgen-out";
  /// Defaults to <out_dir>/model.mwpf.
  std::optional<std::filesystem::path> checkpoint;

  std::filesystem::path checkpoint_path() const;
  std::filesystem::path loss_path() const { return out_dir / "loss.tsv"; }
  std::filesystem::path generated_path() const { return out_dir / "generated.txt"; }
  std::filesystem::path repaired_path() const { return out_dir / "repaired.txt"; }
  std::filesystem::path report_path() const { return out_dir / "repair_report.tsv"; }
  std::filesystem::path scores_path() const { return out_dir / "scores.txt"; }

  /// Field ranges, plus existence of the corpus and dictionary paths.
  void validate() const;
};

/// Sets one field from its textual value. Throws ValidationError naming the
/// key on unknown keys or malformed values.
void apply_setting(PipelineConfig& config, std::string_view key, std::string_view value);

/// Line-oriented `key = value`; "#" starts a comment. Relative paths are
/// resolved against `base_dir` when it is given.
PipelineConfig parse_pipeline_config(std::string_view text, PipelineConfig base = {},
                                     const std::filesystem::path& base_dir = {});
PipelineConfig load_pipeline_config(const std::filesystem::path& path, PipelineConfig base = {});

/// Questions kept for training and those held out as references.
struct CorpusSplit {
  Corpus train;
  Corpus references;
};
CorpusSplit split_corpus(const Corpus& corpus, double holdout_fraction, std::uint64_t seed);

std::vector<std::string> read_lines(const std::filesystem::path& path);
void write_lines(const std::filesystem::path& path, const std::vector<std::string>& lines);

/// Trains on the configured corpus (minus any held-out share) and writes the
/// checkpoint and `epoch<TAB>loss` lines.
TrainResult cmd_train(const PipelineConfig& config, std::ostream& log);

/// Writes `generation.count` questions, one per line.
std::vector<std::string> cmd_generate(const PipelineConfig& config, std::ostream& log);

struct FixResult {
  std::vector<std::string> questions;
  std::vector<std::string> report;
};

/// Repairs each line; Sinhala is rejected with UnsupportedLanguage.
FixResult fix_questions(const std::vector<std::string>& questions, Language language,
                        const UnitsDictionary& dictionary);
FixResult cmd_fix(const std::filesystem::path& input, const std::filesystem::path& output,
                  const std::filesystem::path& report, Language language,
                  const std::optional<std::filesystem::path>& units_dictionary);

/// Scores candidate lines against reference lines; both files must be non-empty.
BleuReport cmd_score(const std::filesystem::path& candidates, const std::filesystem::path& references,
                     std::string model = "model");

struct PipelineResult {
  bool trained = false;
  std::vector<std::string> generated;
  std::optional<FixResult> fixed;
  std::vector<BleuReport> scores;
};

/// train (or reuse a matching checkpoint) -> generate -> fix (English) -> score.
/// Failures are rethrown with the stage name prefixed.
PipelineResult cmd_pipeline(const PipelineConfig& config, std::ostream& log);

}  // namespace mwpgen
