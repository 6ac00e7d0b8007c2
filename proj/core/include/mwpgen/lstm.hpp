// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mwpgen Authors

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mwpgen/random.hpp"

namespace mwpgen {

// Gate blocks are stacked in the order input, forget, candidate, output:
// rows [0,H) i, [H,2H) f, [2H,3H) g, [3H,4H) o.
enum Gate : int { kInputGate = 0, kForgetGate = 1, kCandidate = 2, kOutputGate = 3 };

struct LayerParams {
  Eigen::MatrixXd input_weights;      // 4H x D
  Eigen::MatrixXd recurrent_weights;  // 4H x H
  Eigen::VectorXd bias;               // 4H
};

/// Stacked LSTM with a linear projection to vocabulary logits. Layer 0 reads
/// one-hot tokens (D = V); deeper layers read the previous layer's h (D = H).
/// The same type holds gradients.
struct LstmParams {
  std::vector<LayerParams> layers;
  Eigen::MatrixXd output_weights;  // V x H
  Eigen::VectorXd output_bias;     // V

  int vocab_size() const { return static_cast<int>(output_bias.size()); }
  int hidden_size() const { return static_cast<int>(output_weights.cols()); }
  int layer_count() const { return static_cast<int>(layers.size()); }

  /// Visits every tensor in checkpoint order: per layer input, recurrent,
  /// bias; then output weights and output bias.
  template <typename F>
  void for_each_tensor(F&& fn) {
    for (auto& l : layers) {
      fn(l.input_weights);
      fn(l.recurrent_weights);
      fn(l.bias);
    }
    fn(output_weights);
    fn(output_bias);
  }
  template <typename F>
  void for_each_tensor(F&& fn) const {
    for (const auto& l : layers) {
      fn(l.input_weights);
      fn(l.recurrent_weights);
      fn(l.bias);
    }
    fn(output_weights);
    fn(output_bias);
  }

  std::size_t parameter_count() const;
  bool all_finite() const;
  /// Throws std::invalid_argument when dimensions are inconsistent.
  void check_shapes() const;

  friend bool operator==(const LstmParams& a, const LstmParams& b);
};

/// Same shapes as `like`, all zeros.
LstmParams zeros_like(const LstmParams& like);
double squared_norm(const LstmParams& p);
/// a += scale * b
void axpy(LstmParams& a, double scale, const LstmParams& b);
void scale(LstmParams& p, double factor);

/// Weights uniform in [-1/sqrt(H), 1/sqrt(H)], forget-gate bias 1, other
/// biases 0. Draw order follows for_each_tensor, each matrix row-major.
LstmParams init_model(int vocab_size, int hidden, int layers, std::uint64_t rng_seed);

/// Intermediates of one cell step over a batch (one column per sequence).
struct CellCache {
  Eigen::MatrixXd h_prev;
  Eigen::MatrixXd c_prev;
  Eigen::MatrixXd input_gate;
  Eigen::MatrixXd forget_gate;
  Eigen::MatrixXd candidate;
  Eigen::MatrixXd output_gate;
  Eigen::MatrixXd cell;
  Eigen::MatrixXd tanh_cell;
  Eigen::MatrixXd hidden;
};

/// One LSTM step on dense inputs. `x` is D x B, states are H x B. When a
/// DropConnect mask (4H x H of 0/1) is supplied the masked recurrent entries
/// are zeroed before the product. Throws std::invalid_argument on any
/// dimension mismatch.
CellCache cell_forward(const Eigen::MatrixXd& x, const Eigen::MatrixXd& h_prev,
                       const Eigen::MatrixXd& c_prev, const LayerParams& layer,
                       const Eigen::MatrixXd* dropconnect_mask = nullptr);

struct RegularizationRates {
  double dropout = 0.0;
  double dropconnect = 0.0;
};

/// Everything the backward pass needs from a forward pass, including the
/// exact masks that were sampled.
struct ForwardCache {
  int window_length = 0;
  int batch = 0;
  std::vector<std::vector<int>> tokens;          // [t][b]
  std::vector<std::vector<CellCache>> steps;     // [layer][t]
  std::vector<Eigen::MatrixXd> dropout_masks;    // [layer] H x B, scaled by 1/(1-p); empty when off
  std::vector<Eigen::MatrixXd> dropconnect_masks;  // [layer] 4H x H; empty when off
  Eigen::MatrixXd top_hidden;                    // H x B, final step after dropout
};

struct ForwardResult {
  Eigen::MatrixXd logits;  // V x B
  ForwardCache cache;
};

/// Runs a batch of equal-length windows (tokens[b] is window b). Masks are
/// drawn only when `training` is set: one DropConnect mask per recurrent
/// matrix, then one inverted-dropout mask per layer output, reused across
/// time steps.
ForwardResult forward(const LstmParams& params, std::span<const std::span<const int>> windows,
                      const RegularizationRates& rates, Rng& rng, bool training);

/// Single-window convenience; returns the V logits.
Eigen::VectorXd forward(const LstmParams& params, std::span<const int> window,
                        const RegularizationRates& rates, Rng& rng, bool training);

/// Numerically stable softmax over a vector.
Eigen::VectorXd softmax(const Eigen::VectorXd& logits);

struct LossAndGrads {
  double loss = 0.0;  // mean cross-entropy over the batch
  LstmParams grads;
};

/// Cross-entropy of the next-token logits against `targets`, with full BPTT
/// over each window. Gradients are for the mean loss.
LossAndGrads loss_and_backward(const LstmParams& params,
                               std::span<const std::span<const int>> windows,
                               std::span<const int> targets, const RegularizationRates& rates,
                               Rng& rng, bool training = true);

LossAndGrads loss_and_backward(const LstmParams& params, std::span<const int> window, int target,
                               const RegularizationRates& rates, Rng& rng, bool training = true);

/// Rescales all gradients by max_norm/g when their global L2 norm g exceeds
/// max_norm. Returns the norm before clipping.
double clip_gradients(LstmParams& grads, double max_norm);

}  // namespace mwpgen
