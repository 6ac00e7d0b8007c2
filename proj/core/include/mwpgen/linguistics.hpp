// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mwpgen Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mwpgen/decimal.hpp"

namespace mwpgen {

/// Penn Treebank subset used by the constraint rules. PUNCT stands in for
/// the Treebank punctuation tags; OTHER covers everything else (JJ, RB, TO...).
enum class PosTag : std::uint8_t {
  CD, JJR, NN, NNS, NNP, IN, DT, PRP, VB, VBD, VBZ, WRB, WP, CC, PUNCT, OTHER
};

std::string_view to_string(PosTag tag);
std::optional<PosTag> parse_pos_tag(std::string_view name);

/// Byte range [begin, end) into the source question.
struct TextSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  friend bool operator==(const TextSpan&, const TextSpan&) = default;
};

struct Token {
  std::string surface;
  TextSpan span;
};

struct TaggedToken {
  std::string surface;
  PosTag tag = PosTag::OTHER;
  TextSpan span;
};

/// Whitespace split with ",", "?", "." (and similar) detached at token
/// edges. Decimal numbers stay whole.
std::vector<Token> tokenize(std::string_view question);

/// The closed set of unit tokens known before any dictionary extends it.
const std::set<std::string>& default_unit_inventory();

/// Item nouns mapped to the units they may be measured in, plus the
/// compatibility groups they belong to.
class UnitsDictionary {
 public:
  struct Entry {
    std::string item;
    std::vector<std::string> units;   // in file order; the first is the repair default
    std::vector<std::string> groups;  // empty = no compatibility constraint
  };

  UnitsDictionary();

  /// Throws ValidationError on duplicates or units outside the inventory.
  void add_item(Entry entry);
  void add_units(std::span<const std::string> units);

  bool is_unit(std::string_view token) const;
  const std::set<std::string>& unit_inventory() const { return units_; }
  /// Exact lookup, then a singular form ("oranges" -> "orange"), case-insensitive.
  const Entry* find_item(std::string_view noun) const;
  const std::map<std::string, Entry>& items() const { return items_; }

 private:
  std::set<std::string> units_;
  std::map<std::string, Entry> items_;
};

/// Parses `item<TAB>unit1,unit2[<TAB>group1,group2]`. "#" starts a comment
/// line, "-" or an empty field means unitless, and a line
/// `@units<TAB>u1,u2` extends the unit inventory. Errors carry the line
/// number.
UnitsDictionary parse_units_dictionary(std::string_view text);
UnitsDictionary load_units_dictionary(const std::filesystem::path& path);

/// Dictionary reconstructed from the worked examples: flour/sugar/butter in
/// kg or g, water/milk in l or ml, cement/sand in kg, unitless countables.
UnitsDictionary builtin_units_dictionary();

/// Replaceable tagging strategy.
class PosTagger {
 public:
  virtual ~PosTagger() = default;
  virtual std::vector<TaggedToken> tag(std::span<const Token> tokens) const = 0;
};

/// Lexicon and suffix rules tuned to single-sentence word problems. Numbers
/// are CD; more/less/fewer and other comparatives JJR; "than" IN; closed
/// classes from fixed word lists; capitalized unknown words NNP; unknown
/// lowercase words NN, or NNS when they look plural. Rejects Sinhala input.
class LexiconTagger : public PosTagger {
 public:
  LexiconTagger();
  /// Units and items from the dictionary are forced to noun tags.
  explicit LexiconTagger(const UnitsDictionary& dictionary);
  std::vector<TaggedToken> tag(std::span<const Token> tokens) const override;

 private:
  std::unordered_map<std::string, PosTag> lexicon_;
};

/// Tags with a default LexiconTagger. Throws UnsupportedLanguage on Sinhala.
std::vector<TaggedToken> pos_tag(std::span<const Token> tokens);
std::vector<TaggedToken> tokenize_and_tag(std::string_view question);

struct QuantityPhrase {
  Decimal value;
  std::optional<std::string> unit;
  std::optional<std::string> item;
  std::size_t value_token = 0;
  std::optional<std::size_t> unit_token;
  std::optional<std::size_t> item_token;
  TextSpan value_span;
  std::optional<TextSpan> unit_span;
  /// From the value to the last token of the phrase.
  TextSpan span;
};

/// One phrase per CD token. Up to two following noun tokens are read as
/// (unit, item) when the first is a known unit, else as (item). "of" may
/// sit between unit and item ("2 kg of flour").
std::vector<QuantityPhrase> extract_quantity_phrases(std::span<const TaggedToken> tagged,
                                                     const UnitsDictionary& dictionary);

}  // namespace mwpgen
