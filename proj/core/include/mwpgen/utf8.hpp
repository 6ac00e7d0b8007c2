// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mwpgen Authors

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mwpgen::utf8 {

/// Byte offset of the first malformed sequence, or nullopt when `text` is
/// well-formed UTF-8 (overlong forms and surrogates count as malformed).
std::optional<std::size_t> find_invalid(std::string_view text);

inline bool is_valid(std::string_view text) { return !find_invalid(text); }

/// Splits well-formed UTF-8 into one string per codepoint.
std::vector<std::string> split_codepoints(std::string_view text);

/// Decodes the codepoint that starts at `text[0]`. Requires valid UTF-8.
char32_t decode_first(std::string_view text);

/// True when any codepoint falls in the Sinhala block (U+0D80..U+0DFF).
bool contains_sinhala(std::string_view text);

}  // namespace mwpgen::utf8
