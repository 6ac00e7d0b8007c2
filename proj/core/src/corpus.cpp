// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mwpgen Authors

#include "mwpgen/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "mwpgen/error.hpp"
#include "mwpgen/random.hpp"
#include "mwpgen/utf8.hpp"

namespace mwpgen {
namespace {

constexpr std::string_view kWhitespace = " \t\r\f\v";
constexpr std::string_view kDetachable = ",?.!;:\"()";

bool is_space(char c) { return kWhitespace.find(c) != std::string_view::npos; }
bool is_detachable(char c) { return kDetachable.find(c) != std::string_view::npos; }

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(kWhitespace);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(kWhitespace);
  return s.substr(first, last - first + 1);
}

bool is_closing_punct(std::string_view token) {
  return token.size() == 1 && std::string_view(",?.!;:)").find(token[0]) != std::string_view::npos;
}

}  // namespace

std::string_view to_string(Language language) {
  return language == Language::english ? "english" : "sinhala";
}

std::string_view to_string(TokenMode mode) {
  return mode == TokenMode::character ? "char" : "word";
}

std::optional<Language> parse_language(std::string_view name) {
  if (name == "english" || name == "en") return Language::english;
  if (name == "sinhala" || name == "si") return Language::sinhala;
  return std::nullopt;
}

std::optional<TokenMode> parse_token_mode(std::string_view name) {
  if (name == "char" || name == "character") return TokenMode::character;
  if (name == "word") return TokenMode::word;
  return std::nullopt;
}

Corpus make_corpus(std::span<const std::string> lines, Language language) {
  Corpus corpus;
  corpus.language = language;
  for (const auto& line : lines) {
    const std::string_view q = trim(line);
    if (q.empty()) continue;
    if (q.find('\n') != std::string_view::npos) {
      throw ValidationError("question contains a line break: " + std::string(q));
    }
    if (auto bad = utf8::find_invalid(q)) {
      throw ValidationError("invalid UTF-8 in question at byte " + std::to_string(*bad));
    }
    corpus.questions.emplace_back(q);
  }
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path, Language language) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read corpus file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  if (auto bad = utf8::find_invalid(text)) {
    throw ValidationError(path.string() + ": invalid UTF-8 byte sequence at byte offset " +
                          std::to_string(*bad));
  }
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string::npos) nl = text.size();
    lines.emplace_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return make_corpus(lines, language);
}

std::vector<WordSpan> split_words(std::string_view text) {
  std::vector<WordSpan> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && is_space(text[pos])) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !is_space(text[end])) ++end;

    std::size_t b = pos;
    std::size_t e = end;
    std::vector<WordSpan> trailing;
    while (b < e && is_detachable(text[b])) {
      out.push_back({b, b + 1, text.substr(b, 1)});
      ++b;
    }
    while (e > b && is_detachable(text[e - 1])) {
      trailing.push_back({e - 1, e, text.substr(e - 1, 1)});
      --e;
    }
    if (b < e) out.push_back({b, e, text.substr(b, e - b)});
    out.insert(out.end(), trailing.rbegin(), trailing.rend());
    pos = end;
  }
  return out;
}

std::vector<std::string> split_word_strings(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& w : split_words(text)) out.emplace_back(w.text);
  return out;
}

std::string join_words(std::span<const std::string> words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty() && out.back() != '\n' && w != Vocabulary::kSeparator && !is_closing_punct(w)) {
      out += ' ';
    }
    out += w;
  }
  return out;
}

Vocabulary::Vocabulary(TokenMode mode, std::vector<std::string> tokens)
    : mode_(mode), tokens_(std::move(tokens)) {
  if (tokens_.empty() || tokens_.front() != kSeparator) {
    throw ValidationError("vocabulary must start with the question separator");
  }
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    const auto& t = tokens_[i];
    if (t.empty()) throw ValidationError("vocabulary contains an empty token");
    if (mode_ == TokenMode::character && utf8::split_codepoints(t).size() != 1) {
      throw ValidationError("character vocabulary token is not a single codepoint");
    }
    if (!index_.emplace(t, static_cast<int>(i)).second) {
      throw ValidationError("duplicate vocabulary token: " + t);
    }
  }
  if (auto it = index_.find(std::string(kOovToken)); it != index_.end() && mode_ == TokenMode::word) {
    oov_id_ = it->second;
  }
  if (mode_ == TokenMode::word && !oov_id_) {
    throw ValidationError("word vocabulary lacks the OOV token");
  }
}

std::optional<int> Vocabulary::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> Vocabulary::split(std::string_view text) const {
  return mode_ == TokenMode::character ? utf8::split_codepoints(text) : split_word_strings(text);
}

std::vector<int> Vocabulary::encode(std::string_view text) const {
  std::vector<int> ids;
  for (const auto& piece : split(text)) {
    if (auto id = find(piece)) {
      ids.push_back(*id);
    } else if (oov_id_) {
      ids.push_back(*oov_id_);
    } else {
      throw VocabularyMismatch("codepoint '" + piece + "' is not in the model vocabulary");
    }
  }
  return ids;
}

std::string Vocabulary::decode(std::span<const int> ids) const {
  if (mode_ == TokenMode::character) {
    std::string out;
    for (int id : ids) out += token(id);
    return out;
  }
  std::vector<std::string> words;
  words.reserve(ids.size());
  for (int id : ids) words.push_back(token(id));
  return join_words(words);
}

Vocabulary build_vocabulary(const Corpus& corpus, TokenMode mode, int min_word_count) {
  if (corpus.questions.empty()) throw ValidationError("cannot build a vocabulary from an empty corpus");
  std::vector<std::string> tokens{std::string(Vocabulary::kSeparator)};
  if (mode == TokenMode::character) {
    // Byte-wise order of UTF-8 strings is codepoint order.
    std::set<std::string> distinct;
    for (const auto& q : corpus.questions) {
      for (auto& cp : utf8::split_codepoints(q)) distinct.insert(std::move(cp));
    }
    tokens.insert(tokens.end(), distinct.begin(), distinct.end());
    return Vocabulary(mode, std::move(tokens));
  }

  if (min_word_count < 1) throw ValidationError("min_word_count must be >= 1");
  std::map<std::string, long> counts;
  for (const auto& q : corpus.questions) {
    for (const auto& w : split_words(q)) ++counts[std::string(w.text)];
  }
  std::vector<std::pair<std::string, long>> kept;
  for (auto& [word, count] : counts) {
    if (count >= min_word_count && word != Vocabulary::kOovToken) kept.emplace_back(word, count);
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  for (auto& [word, count] : kept) tokens.push_back(word);
  tokens.emplace_back(Vocabulary::kOovToken);
  return Vocabulary(mode, std::move(tokens));
}

void SequenceDataset::push_back(std::span<const int> window, int target) {
  inputs.insert(inputs.end(), window.begin(), window.end());
  targets.push_back(target);
}

SequenceDataset encode_windows(std::span<const std::vector<int>> sequences, int window_length,
                               int stride) {
  if (window_length < 1) throw ValidationError("window_length must be >= 1");
  if (stride < 1) throw ValidationError("stride must be >= 1");
  SequenceDataset ds;
  ds.window_length = window_length;
  ds.stride = stride;
  const auto L = static_cast<std::size_t>(window_length);
  for (const auto& seq : sequences) {
    for (std::size_t start = 0; start + L < seq.size(); start += static_cast<std::size_t>(stride)) {
      ds.push_back(std::span<const int>(seq).subspan(start, L), seq[start + L]);
    }
  }
  ds.too_short_warning = ds.empty() && !sequences.empty();
  return ds;
}

SequenceDataset encode_windows(const Corpus& corpus, const Vocabulary& vocab, int window_length,
                               int stride) {
  std::vector<std::vector<int>> sequences;
  sequences.reserve(corpus.questions.size());
  for (const auto& q : corpus.questions) {
    auto ids = vocab.encode(q);
    ids.push_back(Vocabulary::kSeparatorId);
    sequences.push_back(std::move(ids));
  }
  return encode_windows(sequences, window_length, stride);
}

std::pair<SequenceDataset, SequenceDataset> split_dataset(const SequenceDataset& dataset,
                                                          double validation_fraction,
                                                          std::uint64_t rng_seed) {
  if (!(validation_fraction >= 0.0 && validation_fraction < 1.0)) {
    throw ValidationError("validation_fraction must lie in [0, 1)");
  }
  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(derive_seed(rng_seed, {0x5b117}));
  shuffle(std::span<std::size_t>(order), rng);

  const auto n_val = static_cast<std::size_t>(
      std::llround(validation_fraction * static_cast<double>(dataset.size())));
  SequenceDataset train;
  SequenceDataset validation;
  for (auto* part : {&train, &validation}) {
    part->window_length = dataset.window_length;
    part->stride = dataset.stride;
  }
  for (std::size_t k = 0; k < order.size(); ++k) {
    auto& part = k < n_val ? validation : train;
    part.push_back(dataset.input(order[k]), dataset.target(order[k]));
  }
  return {std::move(train), std::move(validation)};
}

}  // namespace mwpgen
