// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mwpgen Authors

#include "mwpgen/training.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "mwpgen/error.hpp"
#include "mwpgen/random.hpp"

namespace mwpgen {

std::string_view to_string(Optimizer optimizer) {
  return optimizer == Optimizer::sgd ? "sgd" : "asgd";
}

std::optional<Optimizer> parse_optimizer(std::string_view name) {
  if (name == "sgd") return Optimizer::sgd;
  if (name == "asgd") return Optimizer::asgd;
  return std::nullopt;
}

void TrainingConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& rule) {
    throw ValidationError("training config: " + field + " " + rule);
  };
  if (epochs < 1) fail("epochs", "must be >= 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) fail("learning_rate", "must be > 0");
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) fail("dropout_rate", "must lie in [0, 1)");
  if (!(dropconnect_rate >= 0.0 && dropconnect_rate < 1.0)) {
    fail("dropconnect_rate", "must lie in [0, 1)");
  }
  if (!(gradient_clip_norm > 0.0)) fail("gradient_clip_norm", "must be > 0");
  if (asgd_trigger_epoch < 1) fail("asgd_trigger_epoch", "must be >= 1");
  if (batch_size < 1) fail("batch_size", "must be >= 1");
  if (!(min_improvement >= 0.0)) fail("min_improvement", "must be >= 0");
  if (!(target_loss >= 0.0)) fail("target_loss", "must be >= 0");
}

void optimizer_step(LstmParams& params, const LstmParams& grads, const TrainingConfig& config,
                    int epoch, AsgdState& asgd) {
  axpy(params, -config.learning_rate, grads);
  if (config.optimizer != Optimizer::asgd || epoch < config.asgd_trigger_epoch) return;
  if (asgd.count == 0) {
    asgd.average = params;
  } else {
    // avg += (params - avg) / (count + 1)
    const double w = 1.0 / static_cast<double>(asgd.count + 1);
    for (std::size_t l = 0; l < params.layers.size(); ++l) {
      auto& a = asgd.average.layers[l];
      const auto& q = params.layers[l];
      a.input_weights += w * (q.input_weights - a.input_weights);
      a.recurrent_weights += w * (q.recurrent_weights - a.recurrent_weights);
      a.bias += w * (q.bias - a.bias);
    }
    asgd.average.output_weights += w * (params.output_weights - asgd.average.output_weights);
    asgd.average.output_bias += w * (params.output_bias - asgd.average.output_bias);
  }
  ++asgd.count;
}

LstmParams finalize_weights(const LstmParams& params, const AsgdState& asgd,
                            const TrainingConfig& config) {
  LstmParams out = config.optimizer == Optimizer::asgd && asgd.count > 0 ? asgd.average : params;
  if (config.dropconnect_rate > 0.0) {
    for (auto& layer : out.layers) layer.recurrent_weights *= 1.0 - config.dropconnect_rate;
  }
  return out;
}

double evaluate_loss(const LstmParams& params, const SequenceDataset& dataset, int batch_size) {
  if (dataset.empty()) return 0.0;
  Rng unused(0);
  double total = 0.0;
  std::vector<std::span<const int>> windows;
  std::vector<int> targets;
  for (std::size_t start = 0; start < dataset.size(); start += static_cast<std::size_t>(batch_size)) {
    const std::size_t end = std::min(dataset.size(), start + static_cast<std::size_t>(batch_size));
    windows.clear();
    targets.clear();
    for (std::size_t i = start; i < end; ++i) {
      windows.push_back(dataset.input(i));
      targets.push_back(dataset.target(i));
    }
    auto fwd = forward(params, windows, {}, unused, false);
    for (std::size_t b = 0; b < windows.size(); ++b) {
      const auto col = fwd.logits.col(static_cast<Eigen::Index>(b));
      const double m = col.maxCoeff();
      total += std::log((col.array() - m).exp().sum()) + m - col(targets[b]);
    }
  }
  return total / static_cast<double>(dataset.size());
}

TrainResult train(const SequenceDataset& dataset, const Vocabulary& vocab, const ModelConfig& model,
                  const TrainingConfig& config, const TrainHooks& hooks) {
  config.validate();
  if (dataset.empty()) throw ValidationError("training dataset is empty");
  if (model.window_length != dataset.window_length) {
    throw ValidationError("model window_length does not match the dataset");
  }

  LstmParams params = init_model(static_cast<int>(vocab.size()), model.hidden, model.layers,
                                 derive_seed(config.rng_seed, {0x1417}));
  LstmParams last_finite = params;
  AsgdState asgd;
  AsgdState last_finite_asgd;
  const RegularizationRates rates{config.dropout_rate, config.dropconnect_rate};

  TrainResult result;
  std::vector<std::size_t> order(dataset.size());
  std::vector<std::span<const int>> windows;
  std::vector<int> targets;
  const auto batch = static_cast<std::size_t>(config.batch_size);

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng shuffle_rng(derive_seed(config.rng_seed, {static_cast<std::uint64_t>(epoch), 0}));
    shuffle(std::span<std::size_t>(order), shuffle_rng);

    double epoch_loss = 0.0;
    bool finite = true;
    for (std::size_t start = 0, b = 0; start < order.size(); start += batch, ++b) {
      const std::size_t end = std::min(order.size(), start + batch);
      windows.clear();
      targets.clear();
      for (std::size_t k = start; k < end; ++k) {
        windows.push_back(dataset.input(order[k]));
        targets.push_back(dataset.target(order[k]));
      }
      Rng mask_rng(derive_seed(config.rng_seed, {static_cast<std::uint64_t>(epoch), b + 1}));
      LossAndGrads lg = loss_and_backward(params, windows, targets, rates, mask_rng, true);
      if (!std::isfinite(lg.loss)) {
        finite = false;
        break;
      }
      clip_gradients(lg.grads, config.gradient_clip_norm);
      optimizer_step(params, lg.grads, config, epoch, asgd);
      if (hooks.on_step) hooks.on_step(params, epoch);
      epoch_loss += lg.loss * static_cast<double>(end - start);
    }
    const double mean = epoch_loss / static_cast<double>(order.size());
    if (!finite || !std::isfinite(mean) || !params.all_finite()) {
      result.diverged_epoch = epoch;
      params = std::move(last_finite);
      asgd = std::move(last_finite_asgd);
      break;
    }
    result.loss_history.push_back(mean);
    last_finite = params;
    last_finite_asgd = asgd;
    if (hooks.on_epoch) hooks.on_epoch({epoch, mean});

    if (mean < config.target_loss) break;
    const auto n = result.loss_history.size();
    if (config.min_improvement > 0.0 && n >= 2 &&
        result.loss_history[n - 2] - result.loss_history[n - 1] < config.min_improvement) {
      break;
    }
  }

  result.checkpoint.vocabulary = vocab;
  result.checkpoint.window_length = model.window_length;
  result.checkpoint.params = finalize_weights(params, asgd, config);
  result.checkpoint.metadata.epochs_run = static_cast<std::uint32_t>(result.loss_history.size());
  result.checkpoint.metadata.final_loss =
      result.loss_history.empty() ? 0.0 : result.loss_history.back();
  result.checkpoint.metadata.rng_seed = config.rng_seed;
  return result;
}

}  // namespace mwpgen
