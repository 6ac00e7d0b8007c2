// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mwpgen Authors

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "mwpgen/checkpoint.hpp"
#include "mwpgen/corpus.hpp"
#include "mwpgen/lstm.hpp"

namespace mwpgen {

enum class Optimizer : std::uint8_t { sgd = 0, asgd = 1 };

std::string_view to_string(Optimizer optimizer);
std::optional<Optimizer> parse_optimizer(std::string_view name);

struct ModelConfig {
  int hidden = 256;
  int layers = 2;
  int window_length = 30;
};

struct TrainingConfig {
  int epochs = 20;
  double learning_rate = 1.0;
  double dropout_rate = 0.0;
  double dropconnect_rate = 0.0;
  double gradient_clip_norm = 5.0;
  Optimizer optimizer = Optimizer::sgd;
  /// 1-based epoch from which ASGD starts averaging iterates.
  int asgd_trigger_epoch = 1;
  int batch_size = 32;
  std::uint64_t rng_seed = 1;
  /// Stop once an epoch improves the mean loss by less than this; 0 disables.
  double min_improvement = 1e-4;
  /// Stop once an epoch's mean loss falls below this; 0 disables.
  double target_loss = 0.0;

  /// Throws ValidationError naming the first offending field.
  void validate() const;
};

/// Running average of the iterates produced after the trigger epoch.
struct AsgdState {
  long count = 0;
  LstmParams average;
};

/// params <- params - lr * grads; under ASGD, also folds the new iterate into
/// the running average once `epoch` (1-based) reaches the trigger.
void optimizer_step(LstmParams& params, const LstmParams& grads, const TrainingConfig& config,
                    int epoch, AsgdState& asgd);

struct EpochReport {
  int epoch = 0;
  double mean_loss = 0.0;
};

struct TrainResult {
  ModelCheckpoint checkpoint;
  std::vector<double> loss_history;
  /// Set when an epoch produced a non-finite loss; the checkpoint then holds
  /// the parameters at the end of the last finite epoch.
  std::optional<int> diverged_epoch;
};

struct TrainHooks {
  std::function<void(const EpochReport&)> on_epoch;
  /// Sees the raw iterate after every optimizer step.
  std::function<void(const LstmParams&, int epoch)> on_step;
};

/// The weights a checkpoint stores for a trained model: the ASGD average when
/// one exists, with recurrent matrices scaled by (1 - dropconnect_rate) so
/// inference sees the expected training-time recurrent weights.
LstmParams finalize_weights(const LstmParams& params, const AsgdState& asgd,
                            const TrainingConfig& config);

/// Mini-batch training over shuffled windows. The per-epoch shuffle and the
/// per-batch mask streams are derived from rng_seed, so identical inputs give
/// identical results.
TrainResult train(const SequenceDataset& dataset, const Vocabulary& vocab, const ModelConfig& model,
                  const TrainingConfig& config, const TrainHooks& hooks = {});

/// Mean cross-entropy of the model over a dataset, in inference mode.
double evaluate_loss(const LstmParams& params, const SequenceDataset& dataset, int batch_size = 64);

}  // namespace mwpgen
