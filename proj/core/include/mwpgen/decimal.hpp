// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mwpgen Authors

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace mwpgen {

/// Exact non-negative decimal: mantissa / 10^scale. Keeps the number of
/// fractional digits it was written with so repairs can print "1.25" for an
/// edited "0.25".
class Decimal {
 public:
  Decimal() = default;
  Decimal(std::int64_t mantissa, int scale) : mantissa_(mantissa), scale_(scale) {}
  static Decimal integer(std::int64_t v) { return {v, 0}; }

  /// Accepts [0-9]+(\.[0-9]+)? with at most 15 significant digits.
  static std::optional<Decimal> parse(std::string_view text);

  std::int64_t mantissa() const { return mantissa_; }
  int scale() const { return scale_; }
  bool is_integer() const;
  /// Value truncated toward zero.
  std::int64_t whole() const;
  double to_double() const;
  std::string to_string() const;

  /// Adds an integer, keeping the scale.
  Decimal plus(std::int64_t units) const;

  friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b);
  friend bool operator==(const Decimal& a, const Decimal& b) { return (a <=> b) == 0; }

 private:
  std::int64_t mantissa_ = 0;
  int scale_ = 0;
};

/// True when `text` is a plain decimal number such as "9" or "0.625".
inline bool is_decimal_number(std::string_view text) { return Decimal::parse(text).has_value(); }

}  // namespace mwpgen
