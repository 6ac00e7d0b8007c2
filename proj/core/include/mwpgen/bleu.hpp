// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mwpgen Authors

#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mwpgen {

using TokenSequence = std::vector<std::string>;

/// Word tokens for scoring: whitespace split with punctuation detached.
TokenSequence bleu_tokens(std::string_view text);

struct ClippedCounts {
  std::size_t matched = 0;  // clipped
  std::size_t total = 0;    // candidate n-grams
};

/// Reference side prepared once: per order, the maximum count of each
/// n-gram in any single reference, and the sorted reference lengths.
class ReferenceSet {
 public:
  ReferenceSet(std::span<const TokenSequence> references, std::size_t max_order);

  std::size_t max_order() const { return max_order_; }
  std::size_t size() const { return size_; }
  ClippedCounts clipped(const TokenSequence& candidate, std::size_t n) const;
  /// Reference length closest to `length`; the shorter one on ties.
  std::size_t closest_length(std::size_t length) const;

 private:
  std::size_t max_order_;
  std::size_t size_;
  std::vector<std::map<std::vector<std::string>, std::size_t>> max_counts_;
  std::vector<std::size_t> lengths_;
};

/// Clipped n-gram matches over candidate n-grams; 0 when the candidate has
/// no n-grams of that order.
double modified_precision(const TokenSequence& candidate, std::span<const TokenSequence> references,
                          std::size_t n);

/// Corpus BLEU: geometric mean of aggregated modified precisions for orders
/// 1..n, times the brevity penalty when enabled. Zero if any order is zero.
double bleu_n(std::span<const TokenSequence> candidates, std::span<const TokenSequence> references,
              std::size_t n, bool use_brevity_penalty = true);
double bleu_n(std::span<const TokenSequence> candidates, const ReferenceSet& references, std::size_t n,
              bool use_brevity_penalty = true);

struct BleuReport {
  std::string model;
  double bleu2 = 0;
  double bleu3 = 0;
  double bleu4 = 0;
  double bleu5 = 0;
  std::size_t candidate_count = 0;
  std::size_t reference_count = 0;
  bool brevity_penalty = true;

  double score(std::size_t n) const;
};

BleuReport bleu_report(std::string model, std::span<const std::string> candidates,
                       std::span<const std::string> references, bool use_brevity_penalty = true);

/// Aligned table: one row per report, columns BLEU-2..BLEU-5.
std::string format_bleu_table(std::span<const BleuReport> reports);
/// `model<TAB>n<TAB>score` per report and order.
std::string format_bleu_lines(std::span<const BleuReport> reports);

}  // namespace mwpgen
