// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mwpgen Authors

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "mwpgen/bleu.hpp"

namespace testing_support {

// Straight-from-the-definition corpus BLEU, quadratic and unoptimized.
inline double oracle_bleu(const std::vector<mwpgen::TokenSequence>& cands,
                          const std::vector<mwpgen::TokenSequence>& refs, std::size_t n_max,
                          bool brevity_penalty = true) {
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    double matched = 0.0;
    double total = 0.0;
    for (const auto& c : cands) {
      if (c.size() < n) continue;
      std::vector<mwpgen::TokenSequence> grams;
      for (std::size_t i = 0; i + n <= c.size(); ++i) grams.emplace_back(c.begin() + i, c.begin() + i + n);
      total += static_cast<double>(grams.size());
      std::vector<mwpgen::TokenSequence> seen;
      for (const auto& g : grams) {
        if (std::find(seen.begin(), seen.end(), g) != seen.end()) continue;
        seen.push_back(g);
        const auto in_cand = std::count(grams.begin(), grams.end(), g);
        long best = 0;
        for (const auto& r : refs) {
          long k = 0;
          for (std::size_t i = 0; i + n <= r.size(); ++i) {
            if (mwpgen::TokenSequence(r.begin() + i, r.begin() + i + n) == g) ++k;
          }
          best = std::max(best, k);
        }
        matched += static_cast<double>(std::min<long>(in_cand, best));
      }
    }
    if (matched == 0.0 || total == 0.0) return 0.0;
    log_sum += std::log(matched / total);
  }
  double c_len = 0.0;
  double r_len = 0.0;
  for (const auto& c : cands) {
    c_len += static_cast<double>(c.size());
    std::size_t best = refs.front().size();
    for (const auto& r : refs) {
      const auto d = [&](std::size_t x) { return x > c.size() ? x - c.size() : c.size() - x; };
      if (d(r.size()) < d(best) || (d(r.size()) == d(best) && r.size() < best)) best = r.size();
    }
    r_len += static_cast<double>(best);
  }
  const double bp = !brevity_penalty || c_len > r_len ? 1.0 : std::exp(1.0 - r_len / c_len);
  return bp * std::exp(log_sum / static_cast<double>(n_max));
}

}  // namespace testing_support
