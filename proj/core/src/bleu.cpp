// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mwpgen Authors

#include "mwpgen/bleu.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "mwpgen/corpus.hpp"

namespace mwpgen {
namespace {

using Gram = std::vector<std::string>;

std::map<Gram, std::size_t> count_grams(const TokenSequence& tokens, std::size_t n) {
  std::map<Gram, std::size_t> counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[Gram(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                  tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

std::string fixed(double v, int digits) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

TokenSequence bleu_tokens(std::string_view text) { return split_word_strings(text); }

ReferenceSet::ReferenceSet(std::span<const TokenSequence> references, std::size_t max_order)
    : max_order_(max_order), size_(references.size()), max_counts_(max_order) {
  if (max_order == 0) throw std::invalid_argument("max_order must be at least 1");
  for (const auto& ref : references) {
    lengths_.push_back(ref.size());
    for (std::size_t n = 1; n <= max_order; ++n) {
      auto& table = max_counts_[n - 1];
      for (auto& [gram, c] : count_grams(ref, n)) {
        auto& slot = table[gram];
        slot = std::max(slot, c);
      }
    }
  }
  std::sort(lengths_.begin(), lengths_.end());
}

ClippedCounts ReferenceSet::clipped(const TokenSequence& candidate, std::size_t n) const {
  if (n == 0 || n > max_order_) throw std::invalid_argument("n-gram order out of range");
  ClippedCounts out;
  const auto& table = max_counts_[n - 1];
  for (const auto& [gram, c] : count_grams(candidate, n)) {
    out.total += c;
    const auto it = table.find(gram);
    if (it != table.end()) out.matched += std::min(c, it->second);
  }
  return out;
}

std::size_t ReferenceSet::closest_length(std::size_t length) const {
  if (lengths_.empty()) return 0;
  const auto it = std::lower_bound(lengths_.begin(), lengths_.end(), length);
  if (it == lengths_.end()) return lengths_.back();
  if (it == lengths_.begin() || *it == length) return *it;
  const std::size_t above = *it;
  const std::size_t below = *(it - 1);
  return length - below <= above - length ? below : above;
}

double modified_precision(const TokenSequence& candidate, std::span<const TokenSequence> references,
                          std::size_t n) {
  const ReferenceSet refs(references, n);
  const auto c = refs.clipped(candidate, n);
  return c.total == 0 ? 0.0 : static_cast<double>(c.matched) / static_cast<double>(c.total);
}

double bleu_n(std::span<const TokenSequence> candidates, const ReferenceSet& references, std::size_t n,
              bool use_brevity_penalty) {
  if (candidates.empty() || references.size() == 0) return 0.0;
  double log_sum = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    std::size_t matched = 0;
    std::size_t total = 0;
    for (const auto& cand : candidates) {
      const auto c = references.clipped(cand, k);
      matched += c.matched;
      total += c.total;
    }
    if (matched == 0 || total == 0) return 0.0;
    log_sum += std::log(static_cast<double>(matched) / static_cast<double>(total));
  }
  double score = std::exp(log_sum / static_cast<double>(n));
  if (use_brevity_penalty) {
    std::size_t c = 0;
    std::size_t r = 0;
    for (const auto& cand : candidates) {
      c += cand.size();
      r += references.closest_length(cand.size());
    }
    if (c < r) score *= std::exp(1.0 - static_cast<double>(r) / static_cast<double>(c));
  }
  return std::min(score, 1.0);
}

double bleu_n(std::span<const TokenSequence> candidates, std::span<const TokenSequence> references,
              std::size_t n, bool use_brevity_penalty) {
  if (n == 0) throw std::invalid_argument("n-gram order must be at least 1");
  return bleu_n(candidates, ReferenceSet(references, n), n, use_brevity_penalty);
}

double BleuReport::score(std::size_t n) const {
  switch (n) {
    case 2: return bleu2;
    case 3: return bleu3;
    case 4: return bleu4;
    case 5: return bleu5;
    default: throw std::invalid_argument("report holds BLEU-2..5 only");
  }
}

BleuReport bleu_report(std::string model, std::span<const std::string> candidates,
                       std::span<const std::string> references, bool use_brevity_penalty) {
  std::vector<TokenSequence> cands;
  std::vector<TokenSequence> refs;
  for (const auto& c : candidates) cands.push_back(bleu_tokens(c));
  for (const auto& r : references) refs.push_back(bleu_tokens(r));
  const ReferenceSet set(refs, 5);
  BleuReport report;
  report.model = std::move(model);
  report.bleu2 = bleu_n(cands, set, 2, use_brevity_penalty);
  report.bleu3 = bleu_n(cands, set, 3, use_brevity_penalty);
  report.bleu4 = bleu_n(cands, set, 4, use_brevity_penalty);
  report.bleu5 = bleu_n(cands, set, 5, use_brevity_penalty);
  report.candidate_count = candidates.size();
  report.reference_count = references.size();
  report.brevity_penalty = use_brevity_penalty;
  return report;
}

std::string format_bleu_table(std::span<const BleuReport> reports) {
  std::size_t width = 5;
  for (const auto& r : reports) width = std::max(width, r.model.size());
  auto pad = [width](std::string s) {
    s.resize(width, ' ');
    return s;
  };
  std::string out = pad("Model") + "  BLEU-2  BLEU-3  BLEU-4  BLEU-5\n";
  for (const auto& r : reports) {
    out += pad(r.model);
    for (std::size_t n = 2; n <= 5; ++n) out += "  " + fixed(r.score(n), 4);
    out += '\n';
  }
  return out;
}

std::string format_bleu_lines(std::span<const BleuReport> reports) {
  std::string out;
  for (const auto& r : reports) {
    for (std::size_t n = 2; n <= 5; ++n) {
      out += r.model + '\t' + std::to_string(n) + '\t' + fixed(r.score(n), 6) + '\n';
    }
  }
  return out;
}

}  // namespace mwpgen
