// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mwpgen Authors

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "mwpgen/error.hpp"
#include "mwpgen/pipeline.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct CommonFlags {
  std::optional<std::string> config;
  std::optional<std::string> corpus;
  std::optional<std::string> checkpoint;
  std::optional<std::string> count;
  std::optional<std::string> temperature;
  std::optional<std::string> mode;
  std::optional<std::string> seed;
  std::optional<std::string> units_dict;
  std::optional<std::string> language;
  std::optional<std::string> out;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "key = value configuration file");
  cmd->add_option("--corpus", f.corpus, "question corpus, one per line");
  cmd->add_option("--checkpoint", f.checkpoint, "model checkpoint path");
  cmd->add_option("--count", f.count, "number of questions to generate");
  cmd->add_option("--temperature", f.temperature, "softmax temperature");
  cmd->add_option("--mode", f.mode, "greedy or stochastic sampling");
  cmd->add_option("--seed", f.seed, "seed for training and generation");
  cmd->add_option("--units-dict", f.units_dict, "units dictionary file");
  cmd->add_option("--language", f.language, "english or sinhala");
  cmd->add_option("--out", f.out, "output directory");
}

mwpgen::PipelineConfig resolve(const CommonFlags& f) {
  mwpgen::PipelineConfig c;
  if (f.config) c = mwpgen::load_pipeline_config(*f.config);
  const std::pair<const char*, const std::optional<std::string>*> overrides[] = {
      {"corpus", &f.corpus},           {"checkpoint", &f.checkpoint}, {"count", &f.count},
      {"temperature", &f.temperature}, {"sampling_mode", &f.mode},    {"seed", &f.seed},
      {"units_dict", &f.units_dict},   {"language", &f.language},     {"out_dir", &f.out},
  };
  for (const auto& [key, value] : overrides) {
    if (*value) mwpgen::apply_setting(c, key, **value);
  }
  return c;
}

int guarded(const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const mwpgen::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const mwpgen::UnsupportedLanguage& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Math word problem generation toolkit"};
  app.require_subcommand(1);

  CommonFlags train_flags;
  auto* train = app.add_subcommand("train", "train a language model on a corpus");
  add_common(train, train_flags);

  CommonFlags gen_flags;
  auto* gen = app.add_subcommand("generate", "sample questions from a trained model");
  add_common(gen, gen_flags);

  std::string fix_input;
  std::optional<std::string> fix_out;
  std::optional<std::string> fix_report;
  std::optional<std::string> fix_dict;
  std::string fix_language = "english";
  auto* fix = app.add_subcommand("fix", "repair constraint violations line by line");
  fix->add_option("input", fix_input, "questions file")->required();
  fix->add_option("--out", fix_out, "repaired questions (default: <input>.fixed)");
  fix->add_option("--report", fix_report, "repair report (default: <out>.report.tsv)");
  fix->add_option("--units-dict", fix_dict, "units dictionary file");
  fix->add_option("--language", fix_language, "english or sinhala");

  std::string score_cands;
  std::string score_refs;
  std::optional<std::string> score_out;
  std::string score_model = "model";
  auto* score = app.add_subcommand("score", "BLEU-2..5 of candidates against references");
  score->add_option("candidates", score_cands, "generated questions")->required();
  score->add_option("references", score_refs, "reference questions")->required();
  score->add_option("--out", score_out, "also write the report here");
  score->add_option("--name", score_model, "row label");

  CommonFlags pipe_flags;
  auto* pipe = app.add_subcommand("pipeline", "train, generate, fix and score end to end");
  add_common(pipe, pipe_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  if (*train) {
    return guarded([&] {
      const auto r = mwpgen::cmd_train(resolve(train_flags), std::cerr);
      std::cout << "trained " << r.loss_history.size() << " epochs\n";
    });
  }
  if (*gen) {
    return guarded([&] {
      const auto config = resolve(gen_flags);
      mwpgen::cmd_generate(config, std::cerr);
      std::cout << config.generated_path().string() << "\n";
    });
  }
  if (*fix) {
    return guarded([&] {
      const auto language = mwpgen::parse_language(fix_language);
      if (!language) throw mwpgen::ValidationError("unknown language '" + fix_language + "'");
      const std::string out = fix_out.value_or(fix_input + ".fixed");
      const std::string report = fix_report.value_or(out + ".report.tsv");
      std::optional<std::filesystem::path> dict;
      if (fix_dict) dict = *fix_dict;
      const auto r = mwpgen::cmd_fix(fix_input, out, report, *language, dict);
      std::cout << "repaired " << r.questions.size() << " lines, " << r.report.size() << " report entries\n";
    });
  }
  if (*score) {
    return guarded([&] {
      const std::vector<mwpgen::BleuReport> reports{mwpgen::cmd_score(score_cands, score_refs, score_model)};
      const std::string text = mwpgen::format_bleu_table(reports) + "\n" + mwpgen::format_bleu_lines(reports);
      std::cout << text;
      if (score_out) {
        std::ofstream f(*score_out, std::ios::binary);
        if (!f) throw mwpgen::Error("cannot write " + *score_out);
        f << text;
      }
    });
  }
  if (*pipe) {
    return guarded([&] { mwpgen::cmd_pipeline(resolve(pipe_flags), std::cout); });
  }
  return kExitValidation;
}
