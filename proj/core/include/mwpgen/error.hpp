// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mwpgen Authors

#pragma once

#include <stdexcept>
#include <string>

namespace mwpgen {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: malformed files, out-of-range settings, missing paths.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A checkpoint or dictionary file that cannot be decoded.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// The model vocabulary cannot represent the text it is asked to process.
class VocabularyMismatch : public Error {
 public:
  using Error::Error;
};

/// Raised when an English-only stage receives text in another language.
class UnsupportedLanguage : public Error {
 public:
  using Error::Error;
};

}  // namespace mwpgen
