// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mwpgen Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mwpgen {

enum class Language : std::uint8_t { english = 0, sinhala = 1 };
enum class TokenMode : std::uint8_t { character = 0, word = 1 };

std::string_view to_string(Language language);
std::string_view to_string(TokenMode mode);
std::optional<Language> parse_language(std::string_view name);
std::optional<TokenMode> parse_token_mode(std::string_view name);

/// One question per entry, trimmed, never empty, never containing a line break.
struct Corpus {
  std::vector<std::string> questions;
  Language language = Language::english;
};

/// Reads a UTF-8 file with one question per line. Blank lines are dropped and
/// surrounding whitespace is trimmed. Throws ValidationError on unreadable
/// files or malformed UTF-8 (the message carries the byte offset).
Corpus load_corpus(const std::filesystem::path& path, Language language);

/// Same normalization as load_corpus, applied to in-memory lines.
Corpus make_corpus(std::span<const std::string> lines, Language language);

/// A word with its byte range in the source string.
struct WordSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string_view text;
};

/// Whitespace split with leading/trailing punctuation detached into separate
/// tokens. Decimal numbers such as "0.625" stay whole.
std::vector<WordSpan> split_words(std::string_view text);
std::vector<std::string> split_word_strings(std::string_view text);

/// Joins word tokens, omitting the space before closing punctuation.
std::string join_words(std::span<const std::string> words);

/// Token <-> integer map. Index 0 is always the question separator ("\n"),
/// which never occurs inside a question. Character mode then lists every
/// distinct codepoint in codepoint order; word mode lists words by
/// descending count (ties lexicographic) followed by the OOV token.
class Vocabulary {
 public:
  static constexpr std::string_view kSeparator = "\n";
  static constexpr std::string_view kOovToken = "<unk>";
  static constexpr int kSeparatorId = 0;

  Vocabulary() = default;
  /// Validates: tokens distinct, tokens[0] is the separator, word mode carries
  /// the OOV token, character-mode tokens are single codepoints.
  Vocabulary(TokenMode mode, std::vector<std::string> tokens);

  TokenMode mode() const { return mode_; }
  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::string& token(int id) const { return tokens_.at(static_cast<std::size_t>(id)); }
  std::optional<int> find(std::string_view token) const;
  std::optional<int> oov_id() const { return oov_id_; }

  /// Splits text into this vocabulary's token unit (codepoints or words).
  std::vector<std::string> split(std::string_view text) const;

  /// Character mode throws VocabularyMismatch on an unknown codepoint; word
  /// mode maps unknown words to the OOV token.
  std::vector<int> encode(std::string_view text) const;
  std::string decode(std::span<const int> ids) const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.mode_ == b.mode_ && a.tokens_ == b.tokens_;
  }

 private:
  TokenMode mode_ = TokenMode::character;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
  std::optional<int> oov_id_;
};

/// Throws ValidationError on an empty corpus or min_word_count < 1.
Vocabulary build_vocabulary(const Corpus& corpus, TokenMode mode, int min_word_count = 1);

/// Fixed-length next-token windows, stored flat: window i occupies
/// inputs[i*L, (i+1)*L) and predicts targets[i].
struct SequenceDataset {
  int window_length = 0;
  int stride = 1;
  std::vector<int> inputs;
  std::vector<int> targets;
  /// Set when no question was long enough to yield a window.
  bool too_short_warning = false;

  std::size_t size() const { return targets.size(); }
  bool empty() const { return targets.empty(); }
  std::span<const int> input(std::size_t i) const {
    return {inputs.data() + i * static_cast<std::size_t>(window_length),
            static_cast<std::size_t>(window_length)};
  }
  int target(std::size_t i) const { return targets[i]; }
  void push_back(std::span<const int> window, int target);
};

/// Windows every sequence independently. A sequence of T tokens yields
/// floor((T - L - 1) / stride) + 1 windows when T > L, else none; window k
/// starts at k*stride and its target is the token right after it.
SequenceDataset encode_windows(std::span<const std::vector<int>> sequences, int window_length,
                               int stride = 1);

/// Encodes each question with the separator appended, then windows it.
SequenceDataset encode_windows(const Corpus& corpus, const Vocabulary& vocab, int window_length,
                               int stride = 1);

/// Deterministic shuffle then partition. The validation part holds
/// round(fraction * size) windows.
std::pair<SequenceDataset, SequenceDataset> split_dataset(const SequenceDataset& dataset,
                                                          double validation_fraction,
                                                          std::uint64_t rng_seed);

}  // namespace mwpgen
