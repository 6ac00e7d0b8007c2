// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mwpgen Authors

#include "mwpgen/linguistics.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>
#include <utility>

#include "mwpgen/corpus.hpp"
#include "mwpgen/error.hpp"
#include "mwpgen/utf8.hpp"

namespace mwpgen {
namespace {

constexpr std::array<std::pair<PosTag, std::string_view>, 16> kTagNames{{
    {PosTag::CD, "CD"},     {PosTag::JJR, "JJR"}, {PosTag::NN, "NN"},   {PosTag::NNS, "NNS"},
    {PosTag::NNP, "NNP"},   {PosTag::IN, "IN"},   {PosTag::DT, "DT"},   {PosTag::PRP, "PRP"},
    {PosTag::VB, "VB"},     {PosTag::VBD, "VBD"}, {PosTag::VBZ, "VBZ"}, {PosTag::WRB, "WRB"},
    {PosTag::WP, "WP"},     {PosTag::CC, "CC"},   {PosTag::PUNCT, "PUNCT"},
    {PosTag::OTHER, "OTHER"},
}};

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> split_list(std::string_view field) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= field.size()) {
    std::size_t comma = field.find(',', start);
    if (comma == std::string_view::npos) comma = field.size();
    std::string_view piece = field.substr(start, comma - start);
    while (!piece.empty() && std::isspace(static_cast<unsigned char>(piece.front()))) piece.remove_prefix(1);
    while (!piece.empty() && std::isspace(static_cast<unsigned char>(piece.back()))) piece.remove_suffix(1);
    if (!piece.empty() && piece != "-") out.emplace_back(piece);
    start = comma + 1;
  }
  return out;
}

bool is_punctuation(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::ispunct(static_cast<unsigned char>(c)) != 0;
  });
}

bool is_noun(PosTag t) { return t == PosTag::NN || t == PosTag::NNS; }

void add_words(std::unordered_map<std::string, PosTag>& lexicon, PosTag tag,
               std::initializer_list<std::string_view> words) {
  for (auto w : words) lexicon.emplace(std::string(w), tag);
}

std::unordered_map<std::string, PosTag> base_lexicon() {
  std::unordered_map<std::string, PosTag> lx;
  add_words(lx, PosTag::JJR,
            {"more", "less", "fewer", "greater", "larger", "smaller", "bigger", "older", "younger",
             "taller", "shorter", "heavier", "lighter", "longer", "higher", "lower", "cheaper"});
  add_words(lx, PosTag::IN,
            {"than", "of", "in", "for", "from", "with", "by", "at", "on", "into", "about", "per",
             "after", "before", "during", "among", "between", "if"});
  add_words(lx, PosTag::DT,
            {"the", "a", "an", "each", "every", "some", "all", "this", "that", "these", "those",
             "another", "any", "no", "both"});
  add_words(lx, PosTag::PRP,
            {"he", "she", "it", "they", "we", "i", "you", "him", "her", "them", "us", "me", "his",
             "its", "their", "our", "my", "your"});
  add_words(lx, PosTag::WRB, {"how", "when", "where", "why"});
  add_words(lx, PosTag::WP, {"what", "who", "whom", "which", "whose"});
  add_words(lx, PosTag::CC, {"and", "or", "but"});
  add_words(lx, PosTag::VBZ,
            {"has", "is", "does", "costs", "weighs", "buys", "sells", "gives", "gets", "makes",
             "needs", "uses", "contains", "holds", "spends", "eats", "owns", "earns", "pays",
             "takes", "reads", "walks", "runs", "saves", "collects", "bakes", "drinks"});
  add_words(lx, PosTag::VBD,
            {"had", "was", "were", "did", "used", "made", "built", "bought", "sold", "gave", "got",
             "ate", "spent", "took", "added", "paid", "earned", "found", "needed", "baked",
             "cooked", "collected", "picked", "received", "lost", "saved", "left", "drank", "read",
             "wrote", "ran", "walked", "mixed", "poured", "planted", "caught", "cut", "shared"});
  add_words(lx, PosTag::VB,
            {"have", "be", "do", "are", "use", "buy", "sell", "get", "make", "give", "need",
             "spend", "find", "remain", "eat", "own", "earn", "pay", "take", "cost", "weigh",
             "contain", "hold", "collect", "bake", "drink", "save", "plant", "catch", "mix",
             "build", "walk", "cook", "share", "divide"});
  add_words(lx, PosTag::NN, {"morning", "evening", "building", "ceiling", "string", "something"});
  add_words(lx, PosTag::OTHER,
            {"to", "many", "much", "not", "also", "then", "there", "too", "altogether", "total",
             "consecutive", "first", "second", "third", "last", "together", "same", "new", "old",
             "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten",
             "eleven", "twelve", "twenty", "hundred", "thousand", "remaining", "equal", "now", "off",
             "up", "out", "long", "far", "tall", "wide", "high", "largest", "smallest", "biggest",
             "even", "odd", "only", "just", "very", "again", "away"});
  return lx;
}

}  // namespace

std::string_view to_string(PosTag tag) {
  for (const auto& [t, name] : kTagNames) {
    if (t == tag) return name;
  }
  return "OTHER";
}

std::optional<PosTag> parse_pos_tag(std::string_view name) {
  for (const auto& [t, n] : kTagNames) {
    if (n == name) return t;
  }
  return std::nullopt;
}

std::vector<Token> tokenize(std::string_view question) {
  std::vector<Token> out;
  for (const auto& w : split_words(question)) out.push_back({std::string(w.text), {w.begin, w.end}});
  return out;
}

const std::set<std::string>& default_unit_inventory() {
  static const std::set<std::string> units{"kg", "g", "l", "ml", "m", "cm", "km", "rs"};
  return units;
}

UnitsDictionary::UnitsDictionary() : units_(default_unit_inventory()) {}

void UnitsDictionary::add_units(std::span<const std::string> units) {
  for (const auto& u : units) units_.insert(lower(u));
}

void UnitsDictionary::add_item(Entry entry) {
  entry.item = lower(entry.item);
  if (entry.item.empty()) throw ValidationError("units dictionary: empty item name");
  for (auto& u : entry.units) {
    u = lower(u);
    if (!units_.contains(u)) {
      throw ValidationError("units dictionary: unknown unit '" + u + "' for item '" + entry.item + "'");
    }
  }
  const std::string key = entry.item;
  if (!items_.emplace(key, std::move(entry)).second) {
    throw ValidationError("units dictionary: duplicate item '" + key + "'");
  }
}

bool UnitsDictionary::is_unit(std::string_view token) const { return units_.contains(lower(token)); }

const UnitsDictionary::Entry* UnitsDictionary::find_item(std::string_view noun) const {
  const std::string key = lower(noun);
  if (auto it = items_.find(key); it != items_.end()) return &it->second;
  for (std::string_view suffix : {"es", "s"}) {
    if (key.size() > suffix.size() + 1 && key.ends_with(suffix)) {
      if (auto it = items_.find(key.substr(0, key.size() - suffix.size())); it != items_.end()) {
        return &it->second;
      }
    }
  }
  return nullptr;
}

UnitsDictionary parse_units_dictionary(std::string_view text) {
  struct Line {
    std::size_t number;
    std::vector<std::string> fields;
  };
  std::vector<Line> item_lines;
  UnitsDictionary dict;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    start = nl + 1;
    ++number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;

    std::vector<std::string> fields;
    std::size_t f = 0;
    while (f <= line.size()) {
      std::size_t tab = line.find('\t', f);
      if (tab == std::string_view::npos) tab = line.size();
      fields.emplace_back(line.substr(f, tab - f));
      f = tab + 1;
    }
    if (fields.size() < 2 || fields.size() > 3 || fields[0].empty()) {
      throw ValidationError("units dictionary line " + std::to_string(number) +
                            ": expected item<TAB>units[<TAB>groups]");
    }
    if (fields[0] == "@units") {
      dict.add_units(split_list(fields[1]));
    } else {
      item_lines.push_back({number, std::move(fields)});
    }
  }
  for (auto& [line_no, fields] : item_lines) {
    UnitsDictionary::Entry entry{fields[0], split_list(fields[1]),
                                 fields.size() == 3 ? split_list(fields[2]) : std::vector<std::string>{}};
    try {
      dict.add_item(std::move(entry));
    } catch (const ValidationError& e) {
      throw ValidationError(std::string(e.what()) + " (line " + std::to_string(line_no) + ")");
    }
  }
  return dict;
}

UnitsDictionary load_units_dictionary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read units dictionary: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_units_dictionary(buffer.str());
}

UnitsDictionary builtin_units_dictionary() {
  return parse_units_dictionary(
      "flour\tkg,g\tbaking\n"
      "sugar\tkg,g\tbaking\n"
      "butter\tkg,g\tbaking\n"
      "rice\tkg,g\tcooking\n"
      "water\tl,ml\tbaking,construction,cooking\n"
      "milk\tl,ml\tbaking,cooking\n"
      "cement\tkg\tconstruction\n"
      "sand\tkg\tconstruction\n"
      "rope\tm,cm\n"
      "road\tkm,m\n"
      "orange\t-\tfruit\n"
      "apple\t-\tfruit\n"
      "mango\t-\tfruit\n"
      "marble\t-\ttoys\n"
      "pencil\t-\tstationery\n"
      "book\t-\tstationery\n");
}

LexiconTagger::LexiconTagger() : lexicon_(base_lexicon()) {}

LexiconTagger::LexiconTagger(const UnitsDictionary& dictionary) : lexicon_(base_lexicon()) {
  for (const auto& u : dictionary.unit_inventory()) lexicon_[u] = PosTag::NN;
}

std::vector<TaggedToken> LexiconTagger::tag(std::span<const Token> tokens) const {
  std::vector<TaggedToken> out;
  out.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& s = tokens[i].surface;
    if (utf8::contains_sinhala(s)) {
      throw UnsupportedLanguage("POS tagging is unsupported for sinhala text");
    }
    PosTag tag = PosTag::NN;
    const std::string lw = lower(s);
    const auto known = lexicon_.find(lw);
    const PosTag prev = out.empty() ? PosTag::PUNCT : out.back().tag;
    if (is_decimal_number(s)) {
      tag = PosTag::CD;
    } else if (is_punctuation(s)) {
      tag = PosTag::PUNCT;
    } else if (std::isupper(static_cast<unsigned char>(s[0])) != 0) {
      // Sentence-initial function words keep their class; other capitals are names.
      tag = known != lexicon_.end() && (i == 0 || lw == "i") ? known->second : PosTag::NNP;
    } else if (known != lexicon_.end()) {
      tag = known->second;
    } else if (lw.size() > 3 && lw.ends_with("ed")) {
      tag = PosTag::VBD;
    } else if (lw.size() > 4 && lw.ends_with("ing")) {
      tag = PosTag::OTHER;
    } else if (lw.size() > 2 && lw.ends_with('s') && !lw.ends_with("ss")) {
      const bool after_subject = prev == PosTag::NNP || (prev == PosTag::PRP && i > 0 &&
                                                         (lower(out.back().surface) == "he" ||
                                                          lower(out.back().surface) == "she" ||
                                                          lower(out.back().surface) == "it"));
      tag = after_subject ? PosTag::VBZ : PosTag::NNS;
    }
    out.push_back({s, tag, tokens[i].span});
  }
  return out;
}

std::vector<TaggedToken> pos_tag(std::span<const Token> tokens) {
  static const LexiconTagger tagger;
  return tagger.tag(tokens);
}

std::vector<TaggedToken> tokenize_and_tag(std::string_view question) {
  return pos_tag(tokenize(question));
}

std::vector<QuantityPhrase> extract_quantity_phrases(std::span<const TaggedToken> tagged,
                                                     const UnitsDictionary& dictionary) {
  std::vector<QuantityPhrase> phrases;
  for (std::size_t i = 0; i < tagged.size(); ++i) {
    if (tagged[i].tag != PosTag::CD) continue;
    QuantityPhrase q;
    q.value = *Decimal::parse(tagged[i].surface);
    q.value_token = i;
    q.value_span = tagged[i].span;
    q.span = tagged[i].span;
    std::size_t j = i + 1;
    if (j < tagged.size() && is_noun(tagged[j].tag)) {
      if (dictionary.is_unit(tagged[j].surface)) {
        q.unit = lower(tagged[j].surface);
        q.unit_token = j;
        q.unit_span = tagged[j].span;
        q.span.end = tagged[j].span.end;
        ++j;
        if (j + 1 < tagged.size() && lower(tagged[j].surface) == "of" && is_noun(tagged[j + 1].tag)) ++j;
      }
      if (j < tagged.size() && is_noun(tagged[j].tag)) {
        q.item = lower(tagged[j].surface);
        q.item_token = j;
        q.span.end = tagged[j].span.end;
      }
    }
    phrases.push_back(std::move(q));
  }
  return phrases;
}

}  // namespace mwpgen
