// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mwpgen Authors

#include "mwpgen/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "mwpgen/error.hpp"

namespace mwpgen {
namespace {

class Writer {
 public:
  void bytes(std::string_view b) { out_.append(b); }
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  template <typename Matrix>
  void tensor(const Matrix& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) f64(m(r, c));
    }
  }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}

  void block(std::string name) { block_ = std::move(name); }

  std::string_view bytes(std::size_t n) {
    if (in_.size() - pos_ < n) {
      throw FormatError("checkpoint truncated in block '" + block_ + "' at byte " +
                        std::to_string(pos_));
    }
    auto b = in_.substr(pos_, n);
    pos_ += n;
    return b;
  }
  std::uint8_t u8() { return static_cast<std::uint8_t>(bytes(1)[0]); }
  std::uint32_t u32() {
    auto b = bytes(4);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<std::uint8_t>(b[static_cast<std::size_t>(i)]);
    return v;
  }
  std::uint64_t u64() {
    auto b = bytes(8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<std::uint8_t>(b[static_cast<std::size_t>(i)]);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  template <typename Matrix>
  void tensor(Matrix& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = f64();
    }
  }
  std::size_t remaining() const { return in_.size() - pos_; }
  [[noreturn]] void fail(const std::string& what) const {
    throw FormatError("checkpoint block '" + block_ + "': " + what);
  }

 private:
  std::string_view in_;
  std::size_t pos_ = 0;
  std::string block_ = "header";
};

}  // namespace

std::string serialize_checkpoint(const ModelCheckpoint& ckpt) {
  const LstmParams& p = ckpt.params;
  p.check_shapes();
  if (static_cast<std::size_t>(p.vocab_size()) != ckpt.vocabulary.size()) {
    throw std::invalid_argument("checkpoint vocabulary size does not match the output layer");
  }
  Writer w;
  w.bytes(std::string_view(kCheckpointMagic, 4));
  w.u32(kCheckpointVersion);
  w.u8(static_cast<std::uint8_t>(ckpt.vocabulary.mode()));
  w.u32(static_cast<std::uint32_t>(p.layer_count()));
  w.u32(static_cast<std::uint32_t>(p.vocab_size()));
  w.u32(static_cast<std::uint32_t>(p.hidden_size()));
  w.u32(static_cast<std::uint32_t>(ckpt.window_length));

  w.u32(static_cast<std::uint32_t>(ckpt.vocabulary.size()));
  for (const auto& t : ckpt.vocabulary.tokens()) {
    w.u32(static_cast<std::uint32_t>(t.size()));
    w.bytes(t);
  }

  w.u32(ckpt.metadata.epochs_run);
  w.f64(ckpt.metadata.final_loss);
  w.u64(ckpt.metadata.rng_seed);

  p.for_each_tensor([&](const auto& t) { w.tensor(t); });
  return w.take();
}

ModelCheckpoint deserialize_checkpoint(std::string_view bytes) {
  Reader r(bytes);
  r.block("header");
  if (r.bytes(4) != std::string_view(kCheckpointMagic, 4)) r.fail("bad magic, not an MWPF file");
  const std::uint32_t version = r.u32();
  if (version != kCheckpointVersion) {
    r.fail("unsupported format version " + std::to_string(version) + " (expected " +
           std::to_string(kCheckpointVersion) + ")");
  }
  const std::uint8_t mode = r.u8();
  if (mode > 1) r.fail("unknown token mode " + std::to_string(mode));
  const std::uint32_t layers = r.u32();
  const std::uint32_t vocab = r.u32();
  const std::uint32_t hidden = r.u32();
  const std::uint32_t window = r.u32();
  if (layers < 1 || layers > 64 || vocab < 2 || hidden < 1 || hidden > (1u << 16) ||
      vocab > (1u << 24) || window < 1) {
    r.fail("implausible dimensions");
  }

  r.block("vocabulary");
  const std::uint32_t count = r.u32();
  if (count != vocab) r.fail("token count " + std::to_string(count) + " != vocab size");
  std::vector<std::string> tokens;
  tokens.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint32_t len = r.u32();
    tokens.emplace_back(r.bytes(len));
  }

  ModelCheckpoint ckpt;
  try {
    ckpt.vocabulary = Vocabulary(static_cast<TokenMode>(mode), std::move(tokens));
  } catch (const ValidationError& e) {
    r.fail(e.what());
  }
  ckpt.window_length = static_cast<int>(window);

  r.block("metadata");
  ckpt.metadata.epochs_run = r.u32();
  ckpt.metadata.final_loss = r.f64();
  ckpt.metadata.rng_seed = r.u64();

  const Eigen::Index H = hidden;
  const Eigen::Index V = vocab;
  LstmParams& p = ckpt.params;
  p.layers.resize(layers);
  for (std::uint32_t l = 0; l < layers; ++l) {
    auto& layer = p.layers[l];
    const std::string prefix = "weights: layer " + std::to_string(l) + " ";
    layer.input_weights.resize(4 * H, l == 0 ? V : H);
    r.block(prefix + "input");
    r.tensor(layer.input_weights);
    layer.recurrent_weights.resize(4 * H, H);
    r.block(prefix + "recurrent");
    r.tensor(layer.recurrent_weights);
    layer.bias.resize(4 * H);
    r.block(prefix + "bias");
    r.tensor(layer.bias);
  }
  p.output_weights.resize(V, H);
  r.block("weights: output");
  r.tensor(p.output_weights);
  p.output_bias.resize(V);
  r.block("weights: output bias");
  r.tensor(p.output_bias);

  r.block("trailer");
  if (r.remaining() != 0) r.fail(std::to_string(r.remaining()) + " unexpected trailing bytes");
  return ckpt;
}

void save_checkpoint(const ModelCheckpoint& checkpoint, const std::filesystem::path& path) {
  const std::string bytes = serialize_checkpoint(checkpoint);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write checkpoint: " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ValidationError("failed writing checkpoint: " + path.string());
}

ModelCheckpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read checkpoint: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return deserialize_checkpoint(buffer.str());
}

}  // namespace mwpgen
