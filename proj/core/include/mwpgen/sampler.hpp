// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mwpgen Authors

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mwpgen/checkpoint.hpp"
#include "mwpgen/corpus.hpp"
#include "mwpgen/random.hpp"

namespace mwpgen {

enum class SamplingMode : std::uint8_t { greedy = 0, stochastic = 1 };

std::string_view to_string(SamplingMode mode);
std::optional<SamplingMode> parse_sampling_mode(std::string_view name);

struct GenerationConfig {
  double temperature = 0.8;
  SamplingMode mode = SamplingMode::stochastic;
  int seed_length_min = 20;
  int seed_length_max = 30;
  int max_output_tokens = 200;
  int count = 1;
  std::uint64_t rng_seed = 1;
  /// Tokens that end a problem and are kept in the output. The question
  /// separator always ends a problem and is never emitted.
  std::vector<std::string> terminators{"?"};

  /// Throws ValidationError; window_length bounds the seed length range.
  void validate(int window_length) const;
};

/// q_i = p_i^(1/T) / sum_j p_j^(1/T), computed in log space. T = 1 returns
/// the input unchanged. Throws std::invalid_argument on non-finite or
/// negative entries, a sum away from 1 by more than 1e-9, or T <= 0.
std::vector<double> temperature_reweight(std::span<const double> p, double temperature);

/// Greedy: argmax, lowest index on ties. Stochastic: inverse CDF of one
/// uniform draw.
int sample_next(std::span<const double> p, SamplingMode mode, Rng& rng);

/// A uniformly chosen question long enough for the minimum seed, truncated
/// to a uniform length in the seed range. Throws ValidationError when no
/// question reaches the minimum length.
std::vector<int> select_seed(std::span<const std::vector<int>> encoded_questions,
                             const GenerationConfig& config, Rng& rng);
std::vector<int> select_seed(const Corpus& corpus, const Vocabulary& vocab,
                             const GenerationConfig& config, Rng& rng);

/// Continues `seed` one token at a time over the trailing window until a
/// terminator or max_output_tokens. Returns seed + continuation ids.
std::vector<int> continue_sequence(const ModelCheckpoint& model, std::vector<int> seed,
                                   const GenerationConfig& config, Rng& rng);

/// `count` problems; problem k draws from its own stream derived from
/// (rng_seed, k). Throws VocabularyMismatch if the corpus has tokens the
/// model cannot encode.
std::vector<std::string> generate(const ModelCheckpoint& model, const Corpus& corpus,
                                  const GenerationConfig& config);

}  // namespace mwpgen
