// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mwpgen Authors

#include "mwpgen/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mwpgen/error.hpp"
#include "mwpgen/lstm.hpp"

namespace mwpgen {

std::string_view to_string(SamplingMode mode) {
  return mode == SamplingMode::greedy ? "greedy" : "stochastic";
}

std::optional<SamplingMode> parse_sampling_mode(std::string_view name) {
  if (name == "greedy") return SamplingMode::greedy;
  if (name == "stochastic") return SamplingMode::stochastic;
  return std::nullopt;
}

void GenerationConfig::validate(int window_length) const {
  auto fail = [](const std::string& msg) { throw ValidationError("generation config: " + msg); };
  if (!(temperature > 0.0) || !std::isfinite(temperature)) fail("temperature must be > 0");
  if (seed_length_min < 1 || seed_length_max < seed_length_min) {
    fail("seed length range must satisfy 1 <= min <= max");
  }
  if (seed_length_max > window_length) {
    fail("seed_length_max " + std::to_string(seed_length_max) + " exceeds the window length " +
         std::to_string(window_length));
  }
  if (max_output_tokens < 1) fail("max_output_tokens must be >= 1");
  if (count < 1) fail("count must be >= 1");
}

std::vector<double> temperature_reweight(std::span<const double> p, double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw std::invalid_argument("temperature must be a positive finite number");
  }
  double sum = 0.0;
  for (double v : p) {
    if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("probabilities must be finite and >= 0");
    sum += v;
  }
  if (p.empty() || std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("probabilities must sum to 1");
  }
  std::vector<double> q(p.begin(), p.end());
  if (temperature == 1.0) return q;

  const double inv_t = 1.0 / temperature;
  double max_log = -std::numeric_limits<double>::infinity();
  for (double v : p) {
    if (v > 0.0) max_log = std::max(max_log, std::log(v) * inv_t);
  }
  double z = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    q[i] = p[i] > 0.0 ? std::exp(std::log(p[i]) * inv_t - max_log) : 0.0;
    z += q[i];
  }
  for (double& v : q) v /= z;
  return q;
}

int sample_next(std::span<const double> p, SamplingMode mode, Rng& rng) {
  if (p.empty()) throw std::invalid_argument("empty distribution");
  if (mode == SamplingMode::greedy) {
    return static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
  }
  const double u = rng.uniform();
  double cumulative = 0.0;
  int last_support = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    cumulative += p[i];
    last_support = static_cast<int>(i);
    if (u < cumulative) return last_support;
  }
  // u landed in the rounding gap above the final cumulative sum.
  return last_support;
}

std::vector<int> select_seed(std::span<const std::vector<int>> encoded_questions,
                             const GenerationConfig& config, Rng& rng) {
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < encoded_questions.size(); ++i) {
    if (static_cast<int>(encoded_questions[i].size()) >= config.seed_length_min) eligible.push_back(i);
  }
  if (eligible.empty()) {
    throw ValidationError("every question is shorter than the minimum seed length " +
                          std::to_string(config.seed_length_min));
  }
  const auto& q = encoded_questions[eligible[rng.index(eligible.size())]];
  const int longest = std::min(config.seed_length_max, static_cast<int>(q.size()));
  const auto length = static_cast<std::size_t>(rng.between(config.seed_length_min, longest));
  return {q.begin(), q.begin() + static_cast<std::ptrdiff_t>(length)};
}

std::vector<int> select_seed(const Corpus& corpus, const Vocabulary& vocab,
                             const GenerationConfig& config, Rng& rng) {
  if (corpus.questions.empty()) throw ValidationError("cannot select a seed from an empty corpus");
  std::vector<std::vector<int>> encoded;
  encoded.reserve(corpus.questions.size());
  for (const auto& q : corpus.questions) encoded.push_back(vocab.encode(q));
  return select_seed(encoded, config, rng);
}

std::vector<int> continue_sequence(const ModelCheckpoint& model, std::vector<int> seed,
                                   const GenerationConfig& config, Rng& rng) {
  std::vector<int> terminators;
  for (const auto& t : config.terminators) {
    if (auto id = model.vocabulary.find(t)) terminators.push_back(*id);
  }
  const auto window = static_cast<std::size_t>(model.window_length);
  const RegularizationRates none{};
  for (int step = 0; step < config.max_output_tokens; ++step) {
    const std::size_t start = seed.size() > window ? seed.size() - window : 0;
    const std::span<const int> context(seed.data() + start, seed.size() - start);
    Eigen::VectorXd probs;
    if (context.empty()) {
      probs = Eigen::VectorXd::Constant(model.params.vocab_size(), 1.0 / model.params.vocab_size());
    } else {
      probs = softmax(forward(model.params, context, none, rng, false));
    }
    const std::vector<double> q =
        temperature_reweight(std::span<const double>(probs.data(), static_cast<std::size_t>(probs.size())),
                             config.temperature);
    const int next = sample_next(q, config.mode, rng);
    if (next == Vocabulary::kSeparatorId) break;
    seed.push_back(next);
    if (std::find(terminators.begin(), terminators.end(), next) != terminators.end()) break;
  }
  return seed;
}

std::vector<std::string> generate(const ModelCheckpoint& model, const Corpus& corpus,
                                  const GenerationConfig& config) {
  config.validate(model.window_length);
  if (corpus.questions.empty()) throw ValidationError("generation needs a non-empty seed corpus");
  std::vector<std::vector<int>> encoded;
  encoded.reserve(corpus.questions.size());
  for (const auto& q : corpus.questions) encoded.push_back(model.vocabulary.encode(q));

  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(config.count));
  for (int k = 0; k < config.count; ++k) {
    Rng rng(derive_seed(config.rng_seed, {static_cast<std::uint64_t>(k)}));
    auto ids = continue_sequence(model, select_seed(encoded, config, rng), config, rng);
    out.push_back(model.vocabulary.decode(ids));
  }
  return out;
}

}  // namespace mwpgen
