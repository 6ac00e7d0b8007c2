// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mwpgen Authors

#include "mwpgen/lstm.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mwpgen {
namespace {

Eigen::MatrixXd logistic(const Eigen::MatrixXd& x) {
  return (1.0 + (-x.array()).exp()).inverse().matrix();
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

// Gate nonlinearities and state update given the summed pre-activations.
CellCache cell_step(const Eigen::MatrixXd& pre, const Eigen::MatrixXd& h_prev,
                    const Eigen::MatrixXd& c_prev) {
  const Eigen::Index H = h_prev.rows();
  CellCache s;
  s.h_prev = h_prev;
  s.c_prev = c_prev;
  s.input_gate = logistic(pre.middleRows(kInputGate * H, H));
  s.forget_gate = logistic(pre.middleRows(kForgetGate * H, H));
  s.candidate = pre.middleRows(kCandidate * H, H).array().tanh().matrix();
  s.output_gate = logistic(pre.middleRows(kOutputGate * H, H));
  s.cell = s.forget_gate.cwiseProduct(c_prev) + s.input_gate.cwiseProduct(s.candidate);
  s.tanh_cell = s.cell.array().tanh().matrix();
  s.hidden = s.output_gate.cwiseProduct(s.tanh_cell);
  return s;
}

Eigen::MatrixXd bernoulli_mask(Eigen::Index rows, Eigen::Index cols, double drop, double keep_value,
                               Rng& rng) {
  // Row-major draw order so the stream does not depend on storage order.
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = rng.uniform() < drop ? 0.0 : keep_value;
  }
  return m;
}

}  // namespace

std::size_t LstmParams::parameter_count() const {
  std::size_t n = 0;
  for_each_tensor([&](const auto& t) { n += static_cast<std::size_t>(t.size()); });
  return n;
}

bool LstmParams::all_finite() const {
  bool ok = true;
  for_each_tensor([&](const auto& t) { ok = ok && t.allFinite(); });
  return ok;
}

void LstmParams::check_shapes() const {
  const Eigen::Index H = output_weights.cols();
  const Eigen::Index V = output_weights.rows();
  require(!layers.empty(), "model has no layers");
  require(H >= 1 && V >= 2, "bad output projection shape");
  require(output_bias.size() == V, "output bias size != vocab size");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& layer = layers[l];
    const Eigen::Index D = l == 0 ? V : H;
    require(layer.input_weights.rows() == 4 * H && layer.input_weights.cols() == D,
            "input weight shape mismatch");
    require(layer.recurrent_weights.rows() == 4 * H && layer.recurrent_weights.cols() == H,
            "recurrent weight shape mismatch");
    require(layer.bias.size() == 4 * H, "bias shape mismatch");
  }
}

bool operator==(const LstmParams& a, const LstmParams& b) {
  if (a.layers.size() != b.layers.size()) return false;
  auto same = [](const auto& x, const auto& y) {
    return x.rows() == y.rows() && x.cols() == y.cols() && x == y;
  };
  for (std::size_t l = 0; l < a.layers.size(); ++l) {
    if (!same(a.layers[l].input_weights, b.layers[l].input_weights) ||
        !same(a.layers[l].recurrent_weights, b.layers[l].recurrent_weights) ||
        !same(a.layers[l].bias, b.layers[l].bias)) {
      return false;
    }
  }
  return same(a.output_weights, b.output_weights) && same(a.output_bias, b.output_bias);
}

LstmParams zeros_like(const LstmParams& like) {
  LstmParams z = like;
  z.for_each_tensor([](auto& t) { t.setZero(); });
  return z;
}

double squared_norm(const LstmParams& p) {
  double s = 0.0;
  p.for_each_tensor([&](const auto& t) { s += t.squaredNorm(); });
  return s;
}

void axpy(LstmParams& a, double factor, const LstmParams& b) {
  for (std::size_t l = 0; l < a.layers.size(); ++l) {
    a.layers[l].input_weights += factor * b.layers[l].input_weights;
    a.layers[l].recurrent_weights += factor * b.layers[l].recurrent_weights;
    a.layers[l].bias += factor * b.layers[l].bias;
  }
  a.output_weights += factor * b.output_weights;
  a.output_bias += factor * b.output_bias;
}

void scale(LstmParams& p, double factor) {
  p.for_each_tensor([&](auto& t) { t *= factor; });
}

LstmParams init_model(int vocab_size, int hidden, int layers, std::uint64_t rng_seed) {
  if (vocab_size < 2 || hidden < 1 || layers < 1) {
    throw std::invalid_argument("init_model requires vocab_size >= 2, hidden >= 1, layers >= 1");
  }
  const Eigen::Index H = hidden;
  const Eigen::Index V = vocab_size;
  LstmParams p;
  p.layers.resize(static_cast<std::size_t>(layers));
  for (std::size_t l = 0; l < p.layers.size(); ++l) {
    p.layers[l].input_weights.resize(4 * H, l == 0 ? V : H);
    p.layers[l].recurrent_weights.resize(4 * H, H);
    p.layers[l].bias = Eigen::VectorXd::Zero(4 * H);
    p.layers[l].bias.segment(kForgetGate * H, H).setOnes();
  }
  p.output_weights.resize(V, H);
  p.output_bias = Eigen::VectorXd::Zero(V);

  const double bound = 1.0 / std::sqrt(static_cast<double>(hidden));
  Rng rng(rng_seed);
  auto fill = [&](Eigen::MatrixXd& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = rng.uniform(-bound, bound);
    }
  };
  for (auto& layer : p.layers) {
    fill(layer.input_weights);
    fill(layer.recurrent_weights);
  }
  fill(p.output_weights);
  return p;
}

CellCache cell_forward(const Eigen::MatrixXd& x, const Eigen::MatrixXd& h_prev,
                       const Eigen::MatrixXd& c_prev, const LayerParams& layer,
                       const Eigen::MatrixXd* dropconnect_mask) {
  const Eigen::Index H = layer.recurrent_weights.cols();
  require(layer.recurrent_weights.rows() == 4 * H, "recurrent weights must be 4H x H");
  require(layer.input_weights.rows() == 4 * H && layer.input_weights.cols() == x.rows(),
          "input width does not match input weights");
  require(layer.bias.size() == 4 * H, "bias must have 4H entries");
  require(h_prev.rows() == H && c_prev.rows() == H, "state height must equal H");
  require(h_prev.cols() == x.cols() && c_prev.cols() == x.cols(), "batch widths differ");
  Eigen::MatrixXd pre = layer.input_weights * x;
  if (dropconnect_mask != nullptr) {
    require(dropconnect_mask->rows() == 4 * H && dropconnect_mask->cols() == H,
            "DropConnect mask must be 4H x H");
    pre.noalias() += layer.recurrent_weights.cwiseProduct(*dropconnect_mask) * h_prev;
  } else {
    pre.noalias() += layer.recurrent_weights * h_prev;
  }
  pre.colwise() += layer.bias;
  return cell_step(pre, h_prev, c_prev);
}

ForwardResult forward(const LstmParams& params, std::span<const std::span<const int>> windows,
                      const RegularizationRates& rates, Rng& rng, bool training) {
  require(!windows.empty(), "forward needs at least one window");
  const auto B = static_cast<Eigen::Index>(windows.size());
  const auto L = static_cast<int>(windows[0].size());
  require(L >= 1, "windows must be non-empty");
  const Eigen::Index H = params.hidden_size();
  const int V = params.vocab_size();
  const std::size_t layer_count = params.layers.size();

  ForwardResult result;
  ForwardCache& cache = result.cache;
  cache.window_length = L;
  cache.batch = static_cast<int>(B);
  cache.tokens.assign(static_cast<std::size_t>(L), std::vector<int>(static_cast<std::size_t>(B)));
  for (Eigen::Index b = 0; b < B; ++b) {
    const auto& w = windows[static_cast<std::size_t>(b)];
    require(static_cast<int>(w.size()) == L, "windows in a batch must share one length");
    for (int t = 0; t < L; ++t) {
      require(w[static_cast<std::size_t>(t)] >= 0 && w[static_cast<std::size_t>(t)] < V,
              "token id out of vocabulary range");
      cache.tokens[static_cast<std::size_t>(t)][static_cast<std::size_t>(b)] = w[static_cast<std::size_t>(t)];
    }
  }

  if (training && rates.dropconnect > 0.0) {
    for (std::size_t l = 0; l < layer_count; ++l) {
      cache.dropconnect_masks.push_back(bernoulli_mask(4 * H, H, rates.dropconnect, 1.0, rng));
    }
  }
  if (training && rates.dropout > 0.0) {
    const double keep = 1.0 / (1.0 - rates.dropout);
    for (std::size_t l = 0; l < layer_count; ++l) {
      cache.dropout_masks.push_back(bernoulli_mask(H, B, rates.dropout, keep, rng));
    }
  }

  cache.steps.resize(layer_count);
  std::vector<Eigen::MatrixXd> below;  // previous layer outputs, after dropout
  for (std::size_t l = 0; l < layer_count; ++l) {
    const LayerParams& layer = params.layers[l];
    Eigen::MatrixXd masked_recurrent;
    const Eigen::MatrixXd* recurrent = &layer.recurrent_weights;
    if (!cache.dropconnect_masks.empty()) {
      masked_recurrent = layer.recurrent_weights.cwiseProduct(cache.dropconnect_masks[l]);
      recurrent = &masked_recurrent;
    }
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(H, B);
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(H, B);
    std::vector<Eigen::MatrixXd> outputs(static_cast<std::size_t>(L));
    auto& steps = cache.steps[l];
    steps.reserve(static_cast<std::size_t>(L));
    for (int t = 0; t < L; ++t) {
      Eigen::MatrixXd pre(4 * H, B);
      if (l == 0) {
        const auto& toks = cache.tokens[static_cast<std::size_t>(t)];
        for (Eigen::Index b = 0; b < B; ++b) {
          pre.col(b) = layer.input_weights.col(toks[static_cast<std::size_t>(b)]);
        }
      } else {
        pre.noalias() = layer.input_weights * below[static_cast<std::size_t>(t)];
      }
      pre.noalias() += *recurrent * h;
      pre.colwise() += layer.bias;
      steps.push_back(cell_step(pre, h, c));
      h = steps.back().hidden;
      c = steps.back().cell;
      auto& out = outputs[static_cast<std::size_t>(t)];
      out = cache.dropout_masks.empty() ? h : h.cwiseProduct(cache.dropout_masks[l]);
    }
    below = std::move(outputs);
  }
  cache.top_hidden = below.back();
  result.logits = params.output_weights * cache.top_hidden;
  result.logits.colwise() += params.output_bias;
  return result;
}

Eigen::VectorXd forward(const LstmParams& params, std::span<const int> window,
                        const RegularizationRates& rates, Rng& rng, bool training) {
  const std::span<const int> one[] = {window};
  return forward(params, one, rates, rng, training).logits.col(0);
}

Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
  Eigen::VectorXd e = (logits.array() - logits.maxCoeff()).exp().matrix();
  return e / e.sum();
}

LossAndGrads loss_and_backward(const LstmParams& params,
                               std::span<const std::span<const int>> windows,
                               std::span<const int> targets, const RegularizationRates& rates,
                               Rng& rng, bool training) {
  require(targets.size() == windows.size(), "one target per window");
  ForwardResult fwd = forward(params, windows, rates, rng, training);
  const ForwardCache& cache = fwd.cache;
  const Eigen::Index B = cache.batch;
  const Eigen::Index H = params.hidden_size();
  const int L = cache.window_length;
  const std::size_t layer_count = params.layers.size();

  LossAndGrads out;
  out.grads = zeros_like(params);
  LstmParams& g = out.grads;

  // Softmax cross-entropy, averaged over the batch.
  Eigen::MatrixXd dlogits(fwd.logits.rows(), B);
  double loss = 0.0;
  for (Eigen::Index b = 0; b < B; ++b) {
    const int target = targets[static_cast<std::size_t>(b)];
    require(target >= 0 && target < params.vocab_size(), "target id out of vocabulary range");
    const auto col = fwd.logits.col(b);
    const double m = col.maxCoeff();
    const Eigen::VectorXd e = (col.array() - m).exp().matrix();
    const double z = e.sum();
    loss += std::log(z) + m - col(target);
    dlogits.col(b) = e / z;
    dlogits(target, b) -= 1.0;
  }
  const double inv_b = 1.0 / static_cast<double>(B);
  out.loss = loss * inv_b;
  dlogits *= inv_b;

  g.output_weights.noalias() = dlogits * cache.top_hidden.transpose();
  g.output_bias = dlogits.rowwise().sum();

  // Gradient with respect to each layer's (post-dropout) outputs, per step.
  std::vector<Eigen::MatrixXd> d_out(static_cast<std::size_t>(L));
  d_out.back() = params.output_weights.transpose() * dlogits;

  for (std::size_t li = layer_count; li-- > 0;) {
    const LayerParams& layer = params.layers[li];
    LayerParams& grad = g.layers[li];
    const auto& steps = cache.steps[li];
    const bool has_dropout = !cache.dropout_masks.empty();
    const bool has_dropconnect = !cache.dropconnect_masks.empty();
    Eigen::MatrixXd masked_recurrent;
    const Eigen::MatrixXd* recurrent = &layer.recurrent_weights;
    if (has_dropconnect) {
      masked_recurrent = layer.recurrent_weights.cwiseProduct(cache.dropconnect_masks[li]);
      recurrent = &masked_recurrent;
    }

    std::vector<Eigen::MatrixXd> d_in;
    if (li > 0) d_in.resize(static_cast<std::size_t>(L));
    Eigen::MatrixXd dh_next = Eigen::MatrixXd::Zero(H, B);
    Eigen::MatrixXd dc_next = Eigen::MatrixXd::Zero(H, B);
    Eigen::MatrixXd d_recurrent = Eigen::MatrixXd::Zero(4 * H, H);
    Eigen::MatrixXd dgates(4 * H, B);

    for (int t = L - 1; t >= 0; --t) {
      const CellCache& s = steps[static_cast<std::size_t>(t)];
      Eigen::MatrixXd dh = dh_next;
      const auto& ext = d_out[static_cast<std::size_t>(t)];
      if (ext.size() != 0) dh += has_dropout ? ext.cwiseProduct(cache.dropout_masks[li]) : ext;

      const Eigen::ArrayXXd tc = s.tanh_cell.array();
      const Eigen::ArrayXXd dc =
          dh.array() * s.output_gate.array() * (1.0 - tc.square()) + dc_next.array();
      const Eigen::ArrayXXd i = s.input_gate.array();
      const Eigen::ArrayXXd f = s.forget_gate.array();
      const Eigen::ArrayXXd gg = s.candidate.array();
      const Eigen::ArrayXXd o = s.output_gate.array();

      dgates.middleRows(kInputGate * H, H) = (dc * gg * i * (1.0 - i)).matrix();
      dgates.middleRows(kForgetGate * H, H) = (dc * s.c_prev.array() * f * (1.0 - f)).matrix();
      dgates.middleRows(kCandidate * H, H) = (dc * i * (1.0 - gg.square())).matrix();
      dgates.middleRows(kOutputGate * H, H) = (dh.array() * tc * o * (1.0 - o)).matrix();
      dc_next = (dc * f).matrix();

      grad.bias += dgates.rowwise().sum();
      d_recurrent.noalias() += dgates * s.h_prev.transpose();
      dh_next.noalias() = recurrent->transpose() * dgates;

      if (li == 0) {
        const auto& toks = cache.tokens[static_cast<std::size_t>(t)];
        for (Eigen::Index b = 0; b < B; ++b) {
          grad.input_weights.col(toks[static_cast<std::size_t>(b)]) += dgates.col(b);
        }
      } else {
        // Input to this layer is the lower layer's output after its dropout.
        const CellCache& lower = cache.steps[li - 1][static_cast<std::size_t>(t)];
        const Eigen::MatrixXd x = has_dropout
                                      ? Eigen::MatrixXd(lower.hidden.cwiseProduct(cache.dropout_masks[li - 1]))
                                      : lower.hidden;
        grad.input_weights.noalias() += dgates * x.transpose();
        d_in[static_cast<std::size_t>(t)].noalias() = layer.input_weights.transpose() * dgates;
      }
    }
    grad.recurrent_weights =
        has_dropconnect ? Eigen::MatrixXd(d_recurrent.cwiseProduct(cache.dropconnect_masks[li]))
                        : d_recurrent;
    if (li > 0) d_out = std::move(d_in);
  }
  return out;
}

LossAndGrads loss_and_backward(const LstmParams& params, std::span<const int> window, int target,
                               const RegularizationRates& rates, Rng& rng, bool training) {
  const std::span<const int> one[] = {window};
  const int targets[] = {target};
  return loss_and_backward(params, one, targets, rates, rng, training);
}

double clip_gradients(LstmParams& grads, double max_norm) {
  if (!(max_norm > 0.0)) throw std::invalid_argument("max_norm must be positive");
  const double norm = std::sqrt(squared_norm(grads));
  if (norm > max_norm) scale(grads, max_norm / norm);
  return norm;
}

}  // namespace mwpgen
