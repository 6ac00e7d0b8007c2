// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mwpgen Authors

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mwpgen/linguistics.hpp"

namespace mwpgen {

enum class ConstraintKind : std::uint8_t {
  ordering,            // the quantity a comparison says is larger is not
  unit_mismatch,       // unit not valid for the item it measures
  incompatible_items,  // items from disjoint compatibility groups
  math_validity,       // k consecutive integers cannot sum to the stated value
};

std::string_view to_string(ConstraintKind kind);

struct ConstraintFinding {
  ConstraintKind kind = ConstraintKind::ordering;
  /// ordering: {must be larger, other}; unit_mismatch: {phrase};
  /// incompatible_items: {first, second}; math_validity: {stated sum}.
  std::vector<QuantityPhrase> phrases;
  std::optional<std::string> comparator;
  /// math_validity only: how many consecutive integers; 0 when unparseable.
  int consecutive_count = 0;
  bool repairable = true;
  std::string note;
};

/// Runs every rule over a tagged English question.
std::vector<ConstraintFinding> detect(std::span<const TaggedToken> tagged,
                                      const UnitsDictionary& dictionary);
std::vector<ConstraintFinding> detect(std::string_view question, const UnitsDictionary& dictionary);

/// Each repair returns the edited question, or nullopt when the finding is
/// not repairable. Findings must come from detect() on the same question.
std::optional<std::string> repair_ordering(const ConstraintFinding& finding, std::string_view question);
std::optional<std::string> repair_units(const ConstraintFinding& finding, std::string_view question,
                                        const UnitsDictionary& dictionary);
std::optional<std::string> repair_math_validity(const ConstraintFinding& finding,
                                                std::string_view question);

struct RepairEntry {
  ConstraintKind kind = ConstraintKind::ordering;
  std::string old_text;
  std::string new_text;  // equals old_text when the finding was only flagged
  bool applied = false;
  std::string note;
};

struct RepairOutcome {
  std::string question;
  std::vector<RepairEntry> entries;
  /// Findings still present after repair; none of them is repairable.
  std::vector<ConstraintFinding> remaining;
};

/// Detect, repair one finding at a time in the order ordering -> units ->
/// math validity, re-detecting after each edit. Incompatible items are only
/// flagged. Throws UnsupportedLanguage on Sinhala input.
RepairOutcome apply_all(std::string_view question, const UnitsDictionary& dictionary);

/// `index<TAB>kind<TAB>old<TAB>new`, with "-" as the new column of flagged
/// (unrepaired) entries.
std::string format_report_line(std::size_t question_index, const RepairEntry& entry);

/// Number of findings in `question` that a repair could still fix.
std::size_t count_repairable(std::string_view question, const UnitsDictionary& dictionary);

}  // namespace mwpgen
