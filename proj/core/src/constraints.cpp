// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mwpgen Authors

#include "mwpgen/constraints.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>

#include "mwpgen/error.hpp"
#include "mwpgen/utf8.hpp"

namespace mwpgen {
namespace {

constexpr int kMaxRepairSteps = 64;

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string singular(std::string s) {
  if (s.size() > 3 && s.ends_with("ies")) return s.substr(0, s.size() - 3) + "y";
  if (s.size() > 2 && s.ends_with('s') && !s.ends_with("ss")) s.pop_back();
  return s;
}

bool same_noun(std::string_view a, std::string_view b) {
  const std::string la = lower(a);
  const std::string lb = lower(b);
  return la == lb || singular(la) == singular(lb);
}

bool is_noun(PosTag t) { return t == PosTag::NN || t == PosTag::NNS; }

std::optional<int> number_word(std::string_view w) {
  static constexpr std::array<std::string_view, 11> kWords{
      "zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten"};
  const std::string lw = lower(w);
  for (std::size_t i = 0; i < kWords.size(); ++i) {
    if (kWords[i] == lw) return static_cast<int>(i);
  }
  return std::nullopt;
}

const QuantityPhrase* phrase_at(std::span<const QuantityPhrase> phrases, std::size_t value_token) {
  for (const auto& p : phrases) {
    if (p.value_token == value_token) return &p;
  }
  return nullptr;
}

const QuantityPhrase* phrase_for_item(std::span<const QuantityPhrase> phrases, std::string_view noun) {
  for (const auto& p : phrases) {
    if (p.item && same_noun(*p.item, noun)) return &p;
  }
  return nullptr;
}

void detect_ordering(std::span<const TaggedToken> tagged, std::span<const QuantityPhrase> phrases,
                     std::vector<ConstraintFinding>& out) {
  if (phrases.size() < 2) return;
  for (std::size_t i = 0; i < tagged.size(); ++i) {
    if (tagged[i].tag != PosTag::JJR) continue;
    const std::string cmp = lower(tagged[i].surface);
    if (cmp != "more" && cmp != "less" && cmp != "fewer") continue;
    const bool more = cmp == "more";

    // "N fewer X than ...": a difference. Only less/fewer constrain the
    // other quantity to exceed N.
    if (i > 0 && tagged[i - 1].tag == PosTag::CD) {
      if (more) continue;
      const QuantityPhrase* diff = phrase_at(phrases, i - 1);
      const QuantityPhrase* anchor = nullptr;
      for (const auto& p : phrases) {
        if (p.value_token < diff->value_token) anchor = &p;
      }
      if (anchor == nullptr) {
        for (const auto& p : phrases) {
          if (p.value_token > diff->value_token) {
            anchor = &p;
            break;
          }
        }
      }
      if (anchor != nullptr && anchor->value <= diff->value) {
        out.push_back({ConstraintKind::ordering, {*anchor, *diff}, cmp, 0, true,
                       "difference exceeds the quantity it is taken from"});
      }
      continue;
    }

    // "more X than Y": item X must outnumber item Y.
    std::optional<std::size_t> than;
    for (std::size_t k = i + 1; k < tagged.size() && k <= i + 3; ++k) {
      if (lower(tagged[k].surface) == "than") {
        than = k;
        break;
      }
    }
    if (!than) continue;
    std::optional<std::size_t> x;
    for (std::size_t k = i + 1; k < *than; ++k) {
      if (is_noun(tagged[k].tag)) x = k;
    }
    std::optional<std::size_t> y;
    for (std::size_t k = *than + 1; k < tagged.size() && k <= *than + 2; ++k) {
      if (is_noun(tagged[k].tag)) {
        y = k;
        break;
      }
      if (tagged[k].tag != PosTag::DT) break;
    }
    if (!x || !y) continue;
    const QuantityPhrase* px = phrase_for_item(phrases, tagged[*x].surface);
    const QuantityPhrase* py = phrase_for_item(phrases, tagged[*y].surface);
    if (px == nullptr || py == nullptr || px == py) continue;
    const QuantityPhrase* larger = more ? px : py;
    const QuantityPhrase* smaller = more ? py : px;
    if (larger->value <= smaller->value) {
      out.push_back({ConstraintKind::ordering, {*larger, *smaller}, cmp, 0, true,
                     "comparison contradicts the stated quantities"});
    }
  }
}

void detect_units(std::span<const QuantityPhrase> phrases, const UnitsDictionary& dictionary,
                  std::vector<ConstraintFinding>& out) {
  for (const auto& p : phrases) {
    if (!p.unit || !p.item) continue;
    const auto* entry = dictionary.find_item(*p.item);
    if (entry == nullptr) {
      out.push_back({ConstraintKind::unit_mismatch, {p}, std::nullopt, 0, false,
                     "item not in units dictionary"});
    } else if (std::find(entry->units.begin(), entry->units.end(), *p.unit) == entry->units.end()) {
      const bool fixable = !entry->units.empty();
      out.push_back({ConstraintKind::unit_mismatch, {p}, std::nullopt, 0, fixable,
                     fixable ? "unit not valid for item" : "item takes no unit"});
    }
  }
}

void detect_incompatible(std::span<const QuantityPhrase> phrases, const UnitsDictionary& dictionary,
                         std::vector<ConstraintFinding>& out) {
  std::vector<std::pair<const QuantityPhrase*, const UnitsDictionary::Entry*>> seen;
  for (const auto& p : phrases) {
    if (!p.item) continue;
    const auto* entry = dictionary.find_item(*p.item);
    if (entry == nullptr || entry->groups.empty()) continue;
    const bool repeat = std::any_of(seen.begin(), seen.end(), [&](const auto& s) { return s.second == entry; });
    if (repeat) continue;
    for (const auto& [other, other_entry] : seen) {
      const bool shared = std::any_of(entry->groups.begin(), entry->groups.end(), [&](const std::string& g) {
        return std::find(other_entry->groups.begin(), other_entry->groups.end(), g) !=
               other_entry->groups.end();
      });
      if (!shared) {
        out.push_back({ConstraintKind::incompatible_items, {*other, p}, std::nullopt, 0, false,
                       "'" + other_entry->item + "' and '" + entry->item + "' share no group"});
      }
    }
    seen.emplace_back(&p, entry);
  }
}

std::int64_t residue(std::int64_t k) { return (k * (k - 1) / 2) % k; }

void detect_math(std::span<const TaggedToken> tagged, std::span<const QuantityPhrase> phrases,
                 std::vector<ConstraintFinding>& out) {
  for (std::size_t c = 0; c < tagged.size(); ++c) {
    if (lower(tagged[c].surface) != "consecutive") continue;
    if (c + 1 >= tagged.size()) continue;
    const std::string noun = lower(tagged[c + 1].surface);
    if (noun != "integers" && noun != "numbers") continue;
    if (c > 0) {
      const std::string prev = lower(tagged[c - 1].surface);
      if (prev == "even" || prev == "odd") continue;
    }
    std::optional<std::size_t> sum_at;
    for (std::size_t k = c + 2; k < tagged.size(); ++k) {
      if (lower(tagged[k].surface) == "sum") {
        sum_at = k;
        break;
      }
    }
    if (!sum_at) {
      for (std::size_t k = 0; k < c; ++k) {
        if (lower(tagged[k].surface) == "sum") {
          sum_at = k;
          break;
        }
      }
    }
    if (!sum_at) continue;

    std::optional<std::int64_t> count;
    if (c > 0) {
      if (tagged[c - 1].tag == PosTag::CD) {
        const auto d = Decimal::parse(tagged[c - 1].surface);
        if (d && d->is_integer()) count = d->whole();
      } else if (auto w = number_word(tagged[c - 1].surface)) {
        count = *w;
      }
    }
    const QuantityPhrase* total = nullptr;
    for (const auto& p : phrases) {
      if (p.value_token > *sum_at && p.value_token != c - 1) {
        total = &p;
        break;
      }
    }
    if (total == nullptr) continue;
    if (!count || *count < 1) {
      out.push_back({ConstraintKind::math_validity, {*total}, std::nullopt, 0, false,
                     "cannot read how many consecutive integers"});
      continue;
    }
    const bool ok = total->value.is_integer() && total->value.whole() % *count == residue(*count);
    if (!ok) {
      out.push_back({ConstraintKind::math_validity, {*total}, std::nullopt, static_cast<int>(*count), true,
                     "no run of consecutive integers has this sum"});
    }
  }
}

struct Edit {
  TextSpan span;
  std::string replacement;
};

std::string apply_edit(std::string_view question, const Edit& e) {
  if (e.span.end > question.size() || e.span.begin > e.span.end) {
    throw std::invalid_argument("repair span outside question");
  }
  std::string out(question.substr(0, e.span.begin));
  out += e.replacement;
  out += question.substr(e.span.end);
  return out;
}

void check_value(const QuantityPhrase& p, std::string_view question) {
  const auto parsed = p.value_span.end > question.size()
                          ? std::nullopt
                          : Decimal::parse(question.substr(p.value_span.begin, p.value_span.end - p.value_span.begin));
  if (!parsed || *parsed != p.value) {
    throw std::invalid_argument("finding does not belong to this question");
  }
}

std::optional<Edit> ordering_edit(const ConstraintFinding& f, std::string_view question) {
  if (f.kind != ConstraintKind::ordering || !f.repairable || f.phrases.size() != 2) return std::nullopt;
  const QuantityPhrase& larger = f.phrases[0];
  const QuantityPhrase& smaller = f.phrases[1];
  check_value(larger, question);
  // Smallest whole step that makes `larger` strictly greater.
  const int scale = std::max(larger.value.scale(), smaller.value.scale());
  auto at_scale = [scale](const Decimal& d) {
    __int128 m = d.mantissa();
    for (int s = d.scale(); s < scale; ++s) m *= 10;
    return m;
  };
  __int128 one = 1;
  for (int s = 0; s < scale; ++s) one *= 10;
  const __int128 gap = at_scale(smaller.value) - at_scale(larger.value);
  const auto steps = static_cast<std::int64_t>(gap < 0 ? 0 : gap / one + 1);
  return Edit{larger.value_span, larger.value.plus(steps).to_string()};
}

std::optional<Edit> units_edit(const ConstraintFinding& f, std::string_view question,
                               const UnitsDictionary& dictionary) {
  if (f.kind != ConstraintKind::unit_mismatch || !f.repairable || f.phrases.size() != 1) return std::nullopt;
  const QuantityPhrase& p = f.phrases[0];
  if (!p.unit_span || !p.item) return std::nullopt;
  check_value(p, question);
  const auto* entry = dictionary.find_item(*p.item);
  if (entry == nullptr || entry->units.empty()) return std::nullopt;
  return Edit{*p.unit_span, entry->units.front()};
}

std::optional<Edit> math_edit(const ConstraintFinding& f, std::string_view question) {
  if (f.kind != ConstraintKind::math_validity || !f.repairable || f.phrases.size() != 1 ||
      f.consecutive_count < 1) {
    return std::nullopt;
  }
  const QuantityPhrase& p = f.phrases[0];
  check_value(p, question);
  const std::int64_t k = f.consecutive_count;
  std::int64_t s = p.value.whole() + (p.value.is_integer() ? 0 : 1);
  const std::int64_t want = residue(k);
  s += ((want - s % k) % k + k) % k;
  return Edit{p.value_span, std::to_string(s)};
}

std::optional<Edit> edit_for(const ConstraintFinding& f, std::string_view question,
                             const UnitsDictionary& dictionary) {
  switch (f.kind) {
    case ConstraintKind::ordering: return ordering_edit(f, question);
    case ConstraintKind::unit_mismatch: return units_edit(f, question, dictionary);
    case ConstraintKind::math_validity: return math_edit(f, question);
    case ConstraintKind::incompatible_items: return std::nullopt;
  }
  return std::nullopt;
}

std::string span_text(std::string_view question, const TextSpan& s) {
  return std::string(question.substr(s.begin, s.end - s.begin));
}

TextSpan report_span(const ConstraintFinding& f) {
  if (f.kind == ConstraintKind::incompatible_items && f.phrases.size() == 2) {
    return {f.phrases[0].span.begin, f.phrases[1].span.end};
  }
  return f.phrases.front().span;
}

int priority(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::ordering: return 0;
    case ConstraintKind::unit_mismatch: return 1;
    case ConstraintKind::math_validity: return 2;
    case ConstraintKind::incompatible_items: return 3;
  }
  return 3;
}

}  // namespace

std::string_view to_string(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::ordering: return "ordering";
    case ConstraintKind::unit_mismatch: return "unit_mismatch";
    case ConstraintKind::incompatible_items: return "incompatible_items";
    case ConstraintKind::math_validity: return "math_validity";
  }
  return "unknown";
}

std::vector<ConstraintFinding> detect(std::span<const TaggedToken> tagged, const UnitsDictionary& dictionary) {
  const auto phrases = extract_quantity_phrases(tagged, dictionary);
  std::vector<ConstraintFinding> out;
  detect_ordering(tagged, phrases, out);
  detect_units(phrases, dictionary, out);
  detect_incompatible(phrases, dictionary, out);
  detect_math(tagged, phrases, out);
  return out;
}

std::vector<ConstraintFinding> detect(std::string_view question, const UnitsDictionary& dictionary) {
  const LexiconTagger tagger(dictionary);
  const auto tagged = tagger.tag(tokenize(question));
  return detect(tagged, dictionary);
}

std::optional<std::string> repair_ordering(const ConstraintFinding& finding, std::string_view question) {
  if (finding.kind != ConstraintKind::ordering) throw std::invalid_argument("not an ordering finding");
  auto e = ordering_edit(finding, question);
  if (!e) return std::nullopt;
  return apply_edit(question, *e);
}

std::optional<std::string> repair_units(const ConstraintFinding& finding, std::string_view question,
                                        const UnitsDictionary& dictionary) {
  if (finding.kind != ConstraintKind::unit_mismatch) throw std::invalid_argument("not a unit finding");
  auto e = units_edit(finding, question, dictionary);
  if (!e) return std::nullopt;
  return apply_edit(question, *e);
}

std::optional<std::string> repair_math_validity(const ConstraintFinding& finding, std::string_view question) {
  if (finding.kind != ConstraintKind::math_validity) throw std::invalid_argument("not a math finding");
  auto e = math_edit(finding, question);
  if (!e) return std::nullopt;
  return apply_edit(question, *e);
}

RepairOutcome apply_all(std::string_view question, const UnitsDictionary& dictionary) {
  if (utf8::contains_sinhala(question)) {
    throw UnsupportedLanguage("constraint repair unsupported for sinhala");
  }
  RepairOutcome result;
  result.question = std::string(question);
  for (int step = 0; step < kMaxRepairSteps; ++step) {
    auto findings = detect(result.question, dictionary);
    std::stable_sort(findings.begin(), findings.end(),
                     [](const auto& a, const auto& b) { return priority(a.kind) < priority(b.kind); });
    bool repaired = false;
    for (const auto& f : findings) {
      const auto e = edit_for(f, result.question, dictionary);
      if (!e) continue;
      const TextSpan whole = report_span(f);
      const std::string before = span_text(result.question, whole);
      std::string after = before;
      after.replace(e->span.begin - whole.begin, e->span.end - e->span.begin, e->replacement);
      result.question = apply_edit(result.question, *e);
      result.entries.push_back({f.kind, before, after, true, f.note});
      repaired = true;
      break;
    }
    if (!repaired) break;
  }
  for (auto& f : detect(result.question, dictionary)) {
    if (f.repairable) {
      // Repairs kept undoing each other; give up on this one.
      f.repairable = false;
      f.note = "conflicting constraints";
    }
    const std::string text = span_text(result.question, report_span(f));
    result.entries.push_back({f.kind, text, text, false, f.note});
    result.remaining.push_back(std::move(f));
  }
  return result;
}

std::string format_report_line(std::size_t question_index, const RepairEntry& entry) {
  std::string line = std::to_string(question_index);
  line += '\t';
  line += to_string(entry.kind);
  line += '\t';
  line += entry.old_text;
  line += '\t';
  line += entry.applied ? entry.new_text : std::string("-");
  return line;
}

std::size_t count_repairable(std::string_view question, const UnitsDictionary& dictionary) {
  const auto findings = detect(question, dictionary);
  return static_cast<std::size_t>(std::count_if(findings.begin(), findings.end(), [&](const auto& f) {
    return edit_for(f, question, dictionary).has_value();
  }));
}

}  // namespace mwpgen
