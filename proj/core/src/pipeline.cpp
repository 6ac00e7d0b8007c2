// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mwpgen Authors

#include "mwpgen/pipeline.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "mwpgen/checkpoint.hpp"
#include "mwpgen/error.hpp"
#include "mwpgen/random.hpp"
#include "mwpgen/utf8.hpp"

namespace mwpgen {
namespace {

constexpr std::uint64_t kHoldoutStream = 0x401d;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
  throw ValidationError("config: field '" + std::string(key) + "': expected " + std::string(expected) +
                        ", got '" + std::string(value) + "'");
}

template <typename T>
T parse_number(std::string_view key, std::string_view value, std::string_view expected) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end || value.empty()) bad_value(key, value, expected);
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(out)) bad_value(key, value, expected);
  }
  return out;
}

int to_int(std::string_view key, std::string_view value) { return parse_number<int>(key, value, "an integer"); }
double to_real(std::string_view key, std::string_view value) {
  return parse_number<double>(key, value, "a number");
}
std::uint64_t to_seed(std::string_view key, std::string_view value) {
  return parse_number<std::uint64_t>(key, value, "a non-negative integer");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write file: " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("write failed: " + path.string());
}

UnitsDictionary dictionary_for(const std::optional<std::filesystem::path>& path) {
  return path ? load_units_dictionary(*path) : builtin_units_dictionary();
}

template <typename F>
auto run_stage(std::string_view stage, F&& body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    throw ValidationError("stage '" + std::string(stage) + "': " + e.what());
  } catch (const UnsupportedLanguage& e) {
    throw UnsupportedLanguage("stage '" + std::string(stage) + "': " + e.what());
  } catch (const std::exception& e) {
    throw Error("stage '" + std::string(stage) + "': " + e.what());
  }
}

bool checkpoint_matches(const ModelCheckpoint& ckpt, const Vocabulary& vocab, const PipelineConfig& config) {
  return ckpt.vocabulary == vocab && ckpt.window_length == config.model.window_length &&
         ckpt.params.hidden_size() == config.model.hidden &&
         ckpt.params.layer_count() == config.model.layers &&
         ckpt.metadata.rng_seed == config.training.rng_seed;
}

std::string loss_lines(const std::vector<double>& history) {
  std::string out;
  char buf[64];
  for (std::size_t e = 0; e < history.size(); ++e) {
    std::snprintf(buf, sizeof buf, "%zu\t%.17g\n", e + 1, history[e]);
    out += buf;
  }
  return out;
}

}  // namespace

std::filesystem::path PipelineConfig::checkpoint_path() const {
  return checkpoint ? *checkpoint : out_dir / "model.mwpf";
}

void PipelineConfig::validate() const {
  if (corpus.empty()) throw ValidationError("config: field 'corpus' is required");
  if (!std::filesystem::is_regular_file(corpus)) {
    throw ValidationError("config: field 'corpus': no such file " + corpus.string());
  }
  if (units_dictionary && !std::filesystem::is_regular_file(*units_dictionary)) {
    throw ValidationError("config: field 'units_dict': no such file " + units_dictionary->string());
  }
  if (stride < 1) throw ValidationError("config: field 'stride' must be >= 1");
  if (min_word_count < 1) throw ValidationError("config: field 'min_word_count' must be >= 1");
  if (!(holdout_fraction >= 0.0 && holdout_fraction < 1.0)) {
    throw ValidationError("config: field 'holdout_fraction' must lie in [0, 1)");
  }
  if (model.hidden < 1) throw ValidationError("config: field 'hidden' must be >= 1");
  if (model.layers < 1) throw ValidationError("config: field 'layers' must be >= 1");
  if (model.window_length < 1) throw ValidationError("config: field 'window_length' must be >= 1");
  training.validate();
  generation.validate(model.window_length);
}

void apply_setting(PipelineConfig& c, std::string_view key, std::string_view raw) {
  const std::string_view v = trim(raw);
  auto& t = c.training;
  auto& g = c.generation;
  if (key == "corpus") {
    c.corpus = std::string(v);
  } else if (key == "language") {
    const auto l = parse_language(v);
    if (!l) bad_value(key, v, "english or sinhala");
    c.language = *l;
  } else if (key == "token_mode") {
    const auto m = parse_token_mode(v);
    if (!m) bad_value(key, v, "char or word");
    c.token_mode = *m;
  } else if (key == "stride") {
    c.stride = to_int(key, v);
  } else if (key == "min_word_count") {
    c.min_word_count = to_int(key, v);
  } else if (key == "holdout_fraction") {
    c.holdout_fraction = to_real(key, v);
  } else if (key == "hidden") {
    c.model.hidden = to_int(key, v);
  } else if (key == "layers") {
    c.model.layers = to_int(key, v);
  } else if (key == "window_length") {
    c.model.window_length = to_int(key, v);
  } else if (key == "epochs") {
    t.epochs = to_int(key, v);
  } else if (key == "learning_rate") {
    t.learning_rate = to_real(key, v);
  } else if (key == "dropout_rate") {
    t.dropout_rate = to_real(key, v);
  } else if (key == "dropconnect_rate") {
    t.dropconnect_rate = to_real(key, v);
  } else if (key == "gradient_clip_norm") {
    t.gradient_clip_norm = to_real(key, v);
  } else if (key == "optimizer") {
    const auto o = parse_optimizer(v);
    if (!o) bad_value(key, v, "sgd or asgd");
    t.optimizer = *o;
  } else if (key == "asgd_trigger_epoch") {
    t.asgd_trigger_epoch = to_int(key, v);
  } else if (key == "batch_size") {
    t.batch_size = to_int(key, v);
  } else if (key == "min_improvement") {
    t.min_improvement = to_real(key, v);
  } else if (key == "target_loss") {
    t.target_loss = to_real(key, v);
  } else if (key == "train_seed") {
    t.rng_seed = to_seed(key, v);
  } else if (key == "generation_seed") {
    g.rng_seed = to_seed(key, v);
  } else if (key == "seed") {
    t.rng_seed = g.rng_seed = to_seed(key, v);
  } else if (key == "temperature") {
    g.temperature = to_real(key, v);
  } else if (key == "sampling_mode") {
    const auto m = parse_sampling_mode(v);
    if (!m) bad_value(key, v, "greedy or stochastic");
    g.mode = *m;
  } else if (key == "seed_length_min") {
    g.seed_length_min = to_int(key, v);
  } else if (key == "seed_length_max") {
    g.seed_length_max = to_int(key, v);
  } else if (key == "max_output_tokens") {
    g.max_output_tokens = to_int(key, v);
  } else if (key == "count") {
    g.count = to_int(key, v);
  } else if (key == "units_dict") {
    if (v.empty()) {
      c.units_dictionary.reset();
    } else {
      c.units_dictionary = std::string(v);
    }
  } else if (key == "out_dir") {
    c.out_dir = std::string(v);
  } else if (key == "checkpoint") {
    c.checkpoint = std::string(v);
  } else {
    throw ValidationError("config: unknown field '" + std::string(key) + "'");
  }
}

PipelineConfig parse_pipeline_config(std::string_view text, PipelineConfig base,
                                     const std::filesystem::path& base_dir) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    try {
      apply_setting(base, key, line.substr(eq + 1));
    } catch (const ValidationError& e) {
      throw ValidationError("config line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!base_dir.empty()) {
      auto rebase = [&](std::filesystem::path& p) {
        if (p.is_relative()) p = base_dir / p;
      };
      if (key == "corpus") rebase(base.corpus);
      if (key == "out_dir") rebase(base.out_dir);
      if (key == "units_dict" && base.units_dictionary) rebase(*base.units_dictionary);
      if (key == "checkpoint" && base.checkpoint) rebase(*base.checkpoint);
    }
  }
  return base;
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path, PipelineConfig base) {
  const std::string text = read_file(path);
  if (const auto bad = utf8::find_invalid(text)) {
    throw ValidationError(path.string() + ": invalid UTF-8 at byte " + std::to_string(*bad));
  }
  return parse_pipeline_config(text, std::move(base), path.parent_path());
}

CorpusSplit split_corpus(const Corpus& corpus, double holdout_fraction, std::uint64_t seed) {
  if (!(holdout_fraction >= 0.0 && holdout_fraction < 1.0)) {
    throw ValidationError("holdout_fraction must lie in [0, 1)");
  }
  CorpusSplit out{{{}, corpus.language}, {{}, corpus.language}};
  if (holdout_fraction == 0.0) {
    out.train = corpus;
    out.references = corpus;
    return out;
  }
  std::vector<std::size_t> order(corpus.questions.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(derive_seed(seed, {kHoldoutStream}));
  shuffle(std::span<std::size_t>(order), rng);
  const auto held = static_cast<std::size_t>(std::llround(holdout_fraction * static_cast<double>(order.size())));
  std::vector<bool> is_held(order.size(), false);
  for (std::size_t i = 0; i < held; ++i) is_held[order[i]] = true;
  // Keep corpus order within each side.
  for (std::size_t i = 0; i < order.size(); ++i) {
    (is_held[i] ? out.references : out.train).questions.push_back(corpus.questions[i]);
  }
  if (out.train.questions.empty() || out.references.questions.empty()) {
    throw ValidationError("holdout_fraction leaves one side of the split empty");
  }
  return out;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  if (const auto bad = utf8::find_invalid(text)) {
    throw ValidationError(path.string() + ": invalid UTF-8 at byte " + std::to_string(*bad));
  }
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    pos = nl + 1;
  }
  return lines;
}

void write_lines(const std::filesystem::path& path, const std::vector<std::string>& lines) {
  std::string text;
  for (const auto& l : lines) {
    text += l;
    text += '\n';
  }
  write_file(path, text);
}

TrainResult cmd_train(const PipelineConfig& config, std::ostream& log) {
  config.validate();
  const Corpus corpus = load_corpus(config.corpus, config.language);
  const auto split = split_corpus(corpus, config.holdout_fraction, config.training.rng_seed);
  const Vocabulary vocab = build_vocabulary(split.train, config.token_mode, config.min_word_count);
  const SequenceDataset data = encode_windows(split.train, vocab, config.model.window_length, config.stride);
  if (data.too_short_warning) log << "warning: some questions are shorter than the window\n";
  log << "training on " << split.train.questions.size() << " questions, " << data.size() << " windows, vocabulary "
      << vocab.size() << "\n";
  TrainHooks hooks;
  hooks.on_epoch = [&log](const EpochReport& r) { log << "epoch " << r.epoch << " loss " << r.mean_loss << "\n"; };
  TrainResult result = train(data, vocab, config.model, config.training, hooks);
  if (result.diverged_epoch) log << "warning: training diverged at epoch " << *result.diverged_epoch << "\n";
  if (config.checkpoint_path().has_parent_path()) {
    std::filesystem::create_directories(config.checkpoint_path().parent_path());
  }
  save_checkpoint(result.checkpoint, config.checkpoint_path());
  write_file(config.loss_path(), loss_lines(result.loss_history));
  return result;
}

std::vector<std::string> cmd_generate(const PipelineConfig& config, std::ostream& log) {
  config.validate();
  const ModelCheckpoint model = load_checkpoint(config.checkpoint_path());
  const Corpus corpus = load_corpus(config.corpus, config.language);
  const auto split = split_corpus(corpus, config.holdout_fraction, config.training.rng_seed);
  auto questions = generate(model, split.train, config.generation);
  write_lines(config.generated_path(), questions);
  log << "generated " << questions.size() << " questions\n";
  return questions;
}

FixResult fix_questions(const std::vector<std::string>& questions, Language language,
                        const UnitsDictionary& dictionary) {
  if (language == Language::sinhala) throw UnsupportedLanguage("constraint repair unsupported for sinhala");
  FixResult out;
  for (std::size_t i = 0; i < questions.size(); ++i) {
    auto r = apply_all(questions[i], dictionary);
    for (const auto& e : r.entries) out.report.push_back(format_report_line(i, e));
    out.questions.push_back(std::move(r.question));
  }
  return out;
}

FixResult cmd_fix(const std::filesystem::path& input, const std::filesystem::path& output,
                  const std::filesystem::path& report, Language language,
                  const std::optional<std::filesystem::path>& units_dictionary) {
  if (language == Language::sinhala) throw UnsupportedLanguage("constraint repair unsupported for sinhala");
  const auto lines = read_lines(input);
  auto result = fix_questions(lines, language, dictionary_for(units_dictionary));
  write_lines(output, result.questions);
  write_lines(report, result.report);
  return result;
}

BleuReport cmd_score(const std::filesystem::path& candidates, const std::filesystem::path& references,
                     std::string model) {
  auto non_blank = [](std::vector<std::string> lines) {
    std::erase_if(lines, [](const std::string& l) { return l.find_first_not_of(" \t") == std::string::npos; });
    return lines;
  };
  const auto cands = non_blank(read_lines(candidates));
  const auto refs = non_blank(read_lines(references));
  if (cands.empty()) throw ValidationError("candidates file is empty: " + candidates.string());
  if (refs.empty()) throw ValidationError("references file is empty: " + references.string());
  return bleu_report(std::move(model), cands, refs);
}

PipelineResult cmd_pipeline(const PipelineConfig& config, std::ostream& log) {
  run_stage("config", [&] {
    config.validate();
    return 0;
  });
  PipelineResult result;
  const auto split = run_stage("corpus", [&] {
    return split_corpus(load_corpus(config.corpus, config.language), config.holdout_fraction,
                        config.training.rng_seed);
  });

  run_stage("train", [&] {
    const auto path = config.checkpoint_path();
    if (std::filesystem::is_regular_file(path)) {
      const Vocabulary vocab = build_vocabulary(split.train, config.token_mode, config.min_word_count);
      try {
        if (checkpoint_matches(load_checkpoint(path), vocab, config)) {
          log << "train: reusing checkpoint " << path.string() << ", training skipped\n";
          return 0;
        }
      } catch (const FormatError&) {
        // Unreadable cache: retrain over it.
      }
    }
    cmd_train(config, log);
    result.trained = true;
    return 0;
  });

  result.generated = run_stage("generate", [&] { return cmd_generate(config, log); });

  std::vector<std::string> references = split.references.questions;
  result.scores.push_back(run_stage("score", [&] { return bleu_report("raw", result.generated, references); }));

  if (config.language == Language::sinhala) {
    log << "fix: skipped, constraint repair unsupported for sinhala\n";
  } else {
    result.fixed = run_stage("fix", [&] {
      auto fixed = fix_questions(result.generated, config.language, dictionary_for(config.units_dictionary));
      write_lines(config.repaired_path(), fixed.questions);
      write_lines(config.report_path(), fixed.report);
      return fixed;
    });
    result.scores.push_back(
        run_stage("score", [&] { return bleu_report("post-POS", result.fixed->questions, references); }));
  }

  run_stage("score", [&] {
    write_file(config.scores_path(), format_bleu_table(result.scores) + "\n" + format_bleu_lines(result.scores));
    return 0;
  });
  log << format_bleu_table(result.scores);
  return result;
}

}  // namespace mwpgen
