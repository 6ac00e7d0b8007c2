// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mwpgen Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "mwpgen/corpus.hpp"
#include "mwpgen/lstm.hpp"

namespace mwpgen {

struct TrainingMetadata {
  std::uint32_t epochs_run = 0;
  double final_loss = 0.0;
  std::uint64_t rng_seed = 0;
};

struct ModelCheckpoint {
  Vocabulary vocabulary;
  int window_length = 0;
  LstmParams params;
  TrainingMetadata metadata;
};

inline constexpr char kCheckpointMagic[4] = {'M', 'W', 'P', 'F'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

// Layout, all integers little-endian:
//   "MWPF"  u32 version  u8 mode  u32 layers  u32 vocab  u32 hidden  u32 window
//   vocabulary: u32 count, then per token u32 byte length + UTF-8 bytes
//   metadata:   u32 epochs_run  f64 final_loss  u64 rng_seed
//   weights:    per layer input (4H x D), recurrent (4H x H), bias (4H);
//               then output (V x H), output bias (V). Row-major IEEE-754
//               binary64, little-endian.
std::string serialize_checkpoint(const ModelCheckpoint& checkpoint);

/// Throws FormatError naming the block that failed (header, vocabulary,
/// metadata, or the specific weight tensor).
ModelCheckpoint deserialize_checkpoint(std::string_view bytes);

void save_checkpoint(const ModelCheckpoint& checkpoint, const std::filesystem::path& path);
ModelCheckpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace mwpgen
