// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mwpgen Authors

#include "mwpgen/decimal.hpp"

#include <algorithm>
#include <cmath>

namespace mwpgen {
namespace {

std::int64_t pow10(int n) {
  std::int64_t p = 1;
  while (n-- > 0) p *= 10;
  return p;
}

}  // namespace

std::optional<Decimal> Decimal::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::int64_t mantissa = 0;
  int scale = 0;
  int digits = 0;
  bool seen_point = false;
  bool digit_after_point = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '.') {
      if (seen_point || i == 0) return std::nullopt;
      seen_point = true;
      continue;
    }
    if (c < '0' || c > '9') return std::nullopt;
    if (++digits > 15) return std::nullopt;
    mantissa = mantissa * 10 + (c - '0');
    if (seen_point) {
      ++scale;
      digit_after_point = true;
    }
  }
  if (seen_point && !digit_after_point) return std::nullopt;
  return Decimal(mantissa, scale);
}

bool Decimal::is_integer() const { return mantissa_ % pow10(scale_) == 0; }

std::int64_t Decimal::whole() const { return mantissa_ / pow10(scale_); }

double Decimal::to_double() const {
  return static_cast<double>(mantissa_) / static_cast<double>(pow10(scale_));
}

std::string Decimal::to_string() const {
  if (scale_ == 0) return std::to_string(mantissa_);
  const std::int64_t p = pow10(scale_);
  std::string frac = std::to_string(mantissa_ % p);
  frac.insert(0, static_cast<std::size_t>(scale_) - frac.size(), '0');
  return std::to_string(mantissa_ / p) + "." + frac;
}

Decimal Decimal::plus(std::int64_t units) const { return {mantissa_ + units * pow10(scale_), scale_}; }

std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
  const int scale = std::max(a.scale_, b.scale_);
  // 15 digits times 10^15 overflows int64.
  const __int128 x = static_cast<__int128>(a.mantissa_) * pow10(scale - a.scale_);
  const __int128 y = static_cast<__int128>(b.mantissa_) * pow10(scale - b.scale_);
  return x <=> y;
}

}  // namespace mwpgen
