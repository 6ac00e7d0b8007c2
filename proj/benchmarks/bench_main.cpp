// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mwpgen Authors

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "mwpgen/bleu.hpp"
#include "mwpgen/constraints.hpp"
#include "mwpgen/lstm.hpp"
#include "mwpgen/random.hpp"

namespace {

std::vector<std::vector<int>> random_windows(int batch, int length, int vocab, std::uint64_t seed) {
  mwpgen::Rng rng(seed);
  std::vector<std::vector<int>> out(static_cast<std::size_t>(batch));
  for (auto& w : out) {
    for (int t = 0; t < length; ++t) w.push_back(static_cast<int>(rng.index(static_cast<std::uint64_t>(vocab))));
  }
  return out;
}

void BM_Forward(benchmark::State& state) {
  const int hidden = static_cast<int>(state.range(0));
  const int batch = static_cast<int>(state.range(1));
  const auto params = mwpgen::init_model(60, hidden, 2, 7);
  const auto windows = random_windows(batch, 30, 60, 11);
  std::vector<std::span<const int>> views(windows.begin(), windows.end());
  mwpgen::Rng rng(3);
  for (auto _ : state) {
    auto r = mwpgen::forward(params, views, {}, rng, false);
    benchmark::DoNotOptimize(r.logits.data());
  }
  state.SetItemsProcessed(state.iterations() * batch * 30);
}
BENCHMARK(BM_Forward)->Args({64, 1})->Args({64, 32})->Args({256, 32});

void BM_LossAndBackward(benchmark::State& state) {
  const int hidden = static_cast<int>(state.range(0));
  const int batch = static_cast<int>(state.range(1));
  const auto params = mwpgen::init_model(60, hidden, 2, 7);
  const auto windows = random_windows(batch, 30, 60, 11);
  std::vector<std::span<const int>> views(windows.begin(), windows.end());
  std::vector<int> targets(static_cast<std::size_t>(batch), 5);
  mwpgen::Rng rng(3);
  const mwpgen::RegularizationRates rates{0.2, 0.3};
  for (auto _ : state) {
    auto r = mwpgen::loss_and_backward(params, views, targets, rates, rng);
    benchmark::DoNotOptimize(r.loss);
  }
  state.SetItemsProcessed(state.iterations() * batch * 30);
}
BENCHMARK(BM_LossAndBackward)->Args({64, 32})->Args({256, 32});

std::vector<std::string> sentences(int n, std::uint64_t seed) {
  static const char* words[] = {"how", "many", "apples", "does", "nimal", "have", "kg", "of",
                                "flour", "more", "than", "sugar", "3", "12", "?", "and"};
  mwpgen::Rng rng(seed);
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) {
    std::string s;
    const int len = 8 + static_cast<int>(rng.index(10));
    for (int k = 0; k < len; ++k) {
      if (k) s += ' ';
      s += words[rng.index(16)];
    }
    out.push_back(s);
  }
  return out;
}

void BM_BleuReport(benchmark::State& state) {
  const auto cands = sentences(static_cast<int>(state.range(0)), 1);
  const auto refs = sentences(300, 2);
  for (auto _ : state) {
    auto r = mwpgen::bleu_report("bench", cands, refs);
    benchmark::DoNotOptimize(r.bleu2);
  }
}
BENCHMARK(BM_BleuReport)->Arg(100);

void BM_ApplyAll(benchmark::State& state) {
  const auto dict = mwpgen::builtin_units_dictionary();
  const std::string q =
      "vimal built house and he used 2 kg cement and 6 kg water, how much more cement than water did vimal use?";
  for (auto _ : state) {
    auto r = mwpgen::apply_all(q, dict);
    benchmark::DoNotOptimize(r.question.data());
  }
}
BENCHMARK(BM_ApplyAll);

}  // namespace

BENCHMARK_MAIN();
