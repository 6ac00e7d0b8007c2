// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mwpgen Authors

#include <cmath>
#include <vector>

#include "doctest.h"
#include "mwpgen/lstm.hpp"
#include "mwpgen/random.hpp"

using namespace mwpgen;

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Scalar re-implementation of one cell step for a single column.
void scalar_cell(const LayerParams& p, const std::vector<double>& x, const std::vector<double>& h,
                 const std::vector<double>& c, const Eigen::MatrixXd* mask, std::vector<double>& h_out,
                 std::vector<double>& c_out) {
  const std::size_t H = h.size();
  std::vector<double> pre(4 * H);
  for (std::size_t r = 0; r < 4 * H; ++r) {
    double s = p.bias(static_cast<Eigen::Index>(r));
    for (std::size_t j = 0; j < x.size(); ++j) {
      s += p.input_weights(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) * x[j];
    }
    for (std::size_t j = 0; j < H; ++j) {
      double w = p.recurrent_weights(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j));
      if (mask != nullptr) w *= (*mask)(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j));
      s += w * h[j];
    }
    pre[r] = s;
  }
  h_out.assign(H, 0.0);
  c_out.assign(H, 0.0);
  for (std::size_t k = 0; k < H; ++k) {
    const double i = sigmoid(pre[k]);
    const double f = sigmoid(pre[H + k]);
    const double g = std::tanh(pre[2 * H + k]);
    const double o = sigmoid(pre[3 * H + k]);
    c_out[k] = f * c[k] + i * g;
    h_out[k] = o * std::tanh(c_out[k]);
  }
}

Eigen::MatrixXd random_matrix(Eigen::Index r, Eigen::Index c, Rng& rng, double scale = 1.0) {
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = rng.uniform(-scale, scale);
  }
  return m;
}

std::vector<double> column(const Eigen::MatrixXd& m, Eigen::Index c) {
  return {m.col(c).data(), m.col(c).data() + m.rows()};
}

double loss_only(const LstmParams& p, std::span<const int> window, int target, const RegularizationRates& rates,
                 std::uint64_t seed) {
  Rng rng(seed);
  return loss_and_backward(p, window, target, rates, rng, true).loss;
}

// Central differences over every parameter entry; returns the worst relative error.
double worst_gradient_error(LstmParams params, std::span<const int> window, int target,
                            const RegularizationRates& rates, std::uint64_t seed) {
  Rng rng(seed);
  const LossAndGrads analytic = loss_and_backward(params, window, target, rates, rng, true);
  const double eps = 1e-5;
  std::vector<double> numeric;
  params.for_each_tensor([&](auto& t) {
    for (Eigen::Index k = 0; k < t.size(); ++k) {
      const double keep = t.data()[k];
      t.data()[k] = keep + eps;
      const double up = loss_only(params, window, target, rates, seed);
      t.data()[k] = keep - eps;
      const double down = loss_only(params, window, target, rates, seed);
      t.data()[k] = keep;
      numeric.push_back((up - down) / (2 * eps));
    }
  });
  std::vector<double> exact;
  analytic.grads.for_each_tensor([&](const auto& t) {
    for (Eigen::Index k = 0; k < t.size(); ++k) exact.push_back(t.data()[k]);
  });
  REQUIRE(exact.size() == numeric.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < exact.size(); ++k) {
    const double denom = std::max({std::abs(exact[k]), std::abs(numeric[k]), 1e-6});
    worst = std::max(worst, std::abs(exact[k] - numeric[k]) / denom);
  }
  return worst;
}

}  // namespace

TEST_SUITE("lstm") {
  TEST_CASE("init_model shapes, bounds, forget bias, determinism") {
    const LstmParams p = init_model(5, 8, 1, 42);
    REQUIRE(p.layer_count() == 1);
    CHECK(p.layers[0].input_weights.rows() == 32);
    CHECK(p.layers[0].input_weights.cols() == 5);
    CHECK(p.layers[0].recurrent_weights.rows() == 32);
    CHECK(p.layers[0].recurrent_weights.cols() == 8);
    CHECK(p.output_weights.rows() == 5);
    CHECK(p.output_weights.cols() == 8);
    CHECK(p == init_model(5, 8, 1, 42));
    CHECK_FALSE(p == init_model(5, 8, 1, 43));
    const double s = 1.0 / std::sqrt(8.0);
    CHECK(p.layers[0].input_weights.cwiseAbs().maxCoeff() <= s);
    CHECK(p.layers[0].recurrent_weights.cwiseAbs().maxCoeff() <= s);
    CHECK(p.output_weights.cwiseAbs().maxCoeff() <= s);
    CHECK(p.layers[0].bias.segment(8, 8).isConstant(1.0));
    CHECK(p.layers[0].bias.segment(0, 8).isZero());
    CHECK(p.layers[0].bias.segment(16, 16).isZero());
    const LstmParams deep = init_model(5, 8, 3, 1);
    CHECK(deep.layers[2].input_weights.cols() == 8);
    CHECK_THROWS_AS(init_model(1, 8, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(init_model(5, 0, 1, 1), std::invalid_argument);
  }

  TEST_CASE("cell_forward zero weights give zero state") {
    LayerParams l{Eigen::MatrixXd::Zero(12, 4), Eigen::MatrixXd::Zero(12, 3), Eigen::VectorXd::Zero(12)};
    Rng rng(5);
    const auto cache = cell_forward(random_matrix(4, 2, rng), Eigen::MatrixXd::Zero(3, 2),
                                    Eigen::MatrixXd::Zero(3, 2), l);
    CHECK(cache.hidden.isZero(0.0));
    CHECK(cache.cell.isZero(0.0));
  }

  TEST_CASE("cell state is conserved when i=0 and f=1") {
    Rng rng(9);
    const int H = 4;
    LayerParams l{random_matrix(4 * H, 3, rng, 0.1), random_matrix(4 * H, H, rng, 0.1),
                  Eigen::VectorXd::Zero(4 * H)};
    l.bias.segment(0, H).setConstant(-1000.0);  // input gate shut
    l.bias.segment(H, H).setConstant(1000.0);   // forget gate open
    Eigen::MatrixXd h = random_matrix(H, 2, rng);
    const Eigen::MatrixXd c0 = random_matrix(H, 2, rng);
    Eigen::MatrixXd c = c0;
    for (int t = 0; t < 6; ++t) {
      const auto cache = cell_forward(random_matrix(3, 2, rng), h, c, l);
      h = cache.hidden;
      c = cache.cell;
      CHECK((c - c0).cwiseAbs().maxCoeff() == 0.0);
    }
  }

  TEST_CASE("cell_forward matches a scalar oracle") {
    Rng rng(77);
    const int H = 5;
    const int D = 4;
    const int B = 3;
    LayerParams l{random_matrix(4 * H, D, rng), random_matrix(4 * H, H, rng), random_matrix(4 * H, 1, rng).col(0)};
    const Eigen::MatrixXd x = random_matrix(D, B, rng);
    const Eigen::MatrixXd h = random_matrix(H, B, rng);
    const Eigen::MatrixXd c = random_matrix(H, B, rng);
    Eigen::MatrixXd mask(4 * H, H);
    for (Eigen::Index i = 0; i < mask.size(); ++i) mask.data()[i] = rng.uniform() < 0.5 ? 0.0 : 1.0;
    for (const Eigen::MatrixXd* m : {static_cast<const Eigen::MatrixXd*>(nullptr), static_cast<const Eigen::MatrixXd*>(&mask)}) {
      const auto cache = cell_forward(x, h, c, l, m);
      for (Eigen::Index b = 0; b < B; ++b) {
        std::vector<double> ho;
        std::vector<double> co;
        scalar_cell(l, column(x, b), column(h, b), column(c, b), m, ho, co);
        for (Eigen::Index k = 0; k < H; ++k) {
          CHECK(std::abs(cache.hidden(k, b) - ho[static_cast<std::size_t>(k)]) <= 1e-12);
          CHECK(std::abs(cache.cell(k, b) - co[static_cast<std::size_t>(k)]) <= 1e-12);
        }
      }
    }
    CHECK_THROWS_AS(cell_forward(random_matrix(D + 1, B, rng), h, c, l), std::invalid_argument);
    CHECK_THROWS_AS(cell_forward(x, random_matrix(H, B + 1, rng), c, l), std::invalid_argument);
  }

  TEST_CASE("inference ignores the rng; zero rates in training equal inference") {
    const LstmParams p = init_model(7, 6, 2, 3);
    const std::vector<int> w{1, 4, 2, 6, 0};
    Rng a(1);
    Rng b(999);
    const Eigen::VectorXd x = forward(p, w, {0.5, 0.5}, a, false);
    CHECK(x == forward(p, w, {0.5, 0.5}, b, false));
    Rng c(5);
    CHECK(x == forward(p, w, {}, c, true));
  }

  TEST_CASE("batched forward equals per-window forward") {
    const LstmParams p = init_model(9, 7, 2, 11);
    const std::vector<std::vector<int>> ws{{1, 2, 3, 4}, {8, 0, 5, 5}, {3, 3, 3, 3}};
    std::vector<std::span<const int>> views(ws.begin(), ws.end());
    Rng rng(0);
    const auto batch = forward(p, views, {}, rng, false);
    for (std::size_t b = 0; b < ws.size(); ++b) {
      const Eigen::VectorXd single = forward(p, ws[b], {}, rng, false);
      CHECK((batch.logits.col(static_cast<Eigen::Index>(b)) - single).cwiseAbs().maxCoeff() <= 1e-14);
    }
  }

  TEST_CASE("dropconnect 0.99 approaches a zeroed recurrent matrix") {
    LstmParams p = init_model(7, 16, 1, 21);
    p.layers[0].recurrent_weights *= 4.0;
    LstmParams zeroed = p;
    zeroed.layers[0].recurrent_weights.setZero();
    const std::vector<int> w{1, 2, 3, 4, 5, 6};
    Rng r0(0);
    const Eigen::VectorXd reference = forward(zeroed, w, {}, r0, false);
    Rng r1(0);
    const Eigen::VectorXd full = forward(p, w, {}, r1, false);
    double gap_dropped = 0.0;
    const int trials = 50;
    for (int t = 0; t < trials; ++t) {
      Rng rng(static_cast<std::uint64_t>(100 + t));
      gap_dropped += (forward(p, w, {0.0, 0.99}, rng, true) - reference).norm();
    }
    gap_dropped /= trials;
    const double gap_full = (full - reference).norm();
    CHECK(gap_full > 0.0);
    CHECK(gap_dropped < 0.1 * gap_full);
  }

  TEST_CASE("inverted dropout keeps the expectation") {
    // One layer with identity output: the mean masked top hidden state
    // converges to the unmasked one.
    const LstmParams p = init_model(5, 8, 1, 4);
    const std::vector<int> w{1, 2, 3};
    const std::vector<std::span<const int>> views{std::span<const int>(w)};
    Rng r0(0);
    const Eigen::MatrixXd clean = forward(p, views, {}, r0, false).cache.top_hidden;
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(clean.rows(), clean.cols());
    const int n = 10000;
    Rng rng(8);
    for (int k = 0; k < n; ++k) sum += forward(p, views, {0.3, 0.0}, rng, true).cache.top_hidden;
    const Eigen::MatrixXd mean = sum / n;
    CHECK((mean - clean).cwiseAbs().maxCoeff() <= 0.02 * clean.cwiseAbs().maxCoeff());
  }

  TEST_CASE("uniform logits give loss ln(V)") {
    LstmParams p = init_model(7, 6, 1, 2);
    p.output_weights.setZero();
    p.output_bias.setZero();
    Rng rng(1);
    const auto r = loss_and_backward(p, std::vector<int>{1, 2, 3}, 4, {}, rng, true);
    CHECK(std::abs(r.loss - std::log(7.0)) <= 1e-12);
  }

  TEST_CASE("initial loss on random data is near ln(V)") {
    const int V = 20;
    const LstmParams p = init_model(V, 16, 2, 13);
    Rng data(3);
    std::vector<std::vector<int>> ws(256);
    std::vector<int> targets;
    for (auto& w : ws) {
      for (int t = 0; t < 10; ++t) w.push_back(static_cast<int>(data.index(V)));
      targets.push_back(static_cast<int>(data.index(V)));
    }
    std::vector<std::span<const int>> views(ws.begin(), ws.end());
    Rng rng(0);
    const auto r = loss_and_backward(p, views, targets, {}, rng, false);
    CHECK(std::abs(r.loss - std::log(double(V))) <= 0.05 * std::log(double(V)));
  }

  TEST_CASE("gradients match central differences") {
    const std::vector<int> window{1, 5, 0, 6, 3};
    SUBCASE("one layer, no regularization") {
      CHECK(worst_gradient_error(init_model(7, 6, 1, 31), window, 2, {}, 5) <= 1e-4);
    }
    SUBCASE("two layers, no regularization") {
      CHECK(worst_gradient_error(init_model(7, 6, 2, 32), window, 4, {}, 5) <= 1e-4);
    }
    SUBCASE("fixed dropout and DropConnect masks") {
      CHECK(worst_gradient_error(init_model(7, 6, 2, 33), window, 6, {0.3, 0.4}, 17) <= 1e-4);
    }
  }

  TEST_CASE("batch gradients are the mean of single-window gradients") {
    const LstmParams p = init_model(7, 5, 1, 8);
    const std::vector<std::vector<int>> ws{{1, 2, 3}, {4, 5, 6}};
    const std::vector<int> targets{0, 3};
    std::vector<std::span<const int>> views(ws.begin(), ws.end());
    Rng rng(0);
    const auto both = loss_and_backward(p, views, targets, {}, rng, false);
    const auto a = loss_and_backward(p, ws[0], 0, {}, rng, false);
    const auto b = loss_and_backward(p, ws[1], 3, {}, rng, false);
    CHECK(std::abs(both.loss - 0.5 * (a.loss + b.loss)) <= 1e-12);
    LstmParams mean = zeros_like(p);
    axpy(mean, 0.5, a.grads);
    axpy(mean, 0.5, b.grads);
    LstmParams diff = both.grads;
    axpy(diff, -1.0, mean);
    CHECK(std::sqrt(squared_norm(diff)) <= 1e-12);
    // Shapes of grads equal the shapes of params.
    CHECK(both.grads.layer_count() == 1);
    CHECK(both.grads.parameter_count() == p.parameter_count());
  }

  TEST_CASE("clip_gradients") {
    LstmParams g = zeros_like(init_model(5, 4, 1, 1));
    g.output_bias(0) = 0.5;
    CHECK(clip_gradients(g, 1.0) == doctest::Approx(0.5));
    CHECK(g.output_bias(0) == 0.5);

    g.output_bias(0) = 6.0;
    g.output_bias(1) = 8.0;
    CHECK(clip_gradients(g, 1.0) == doctest::Approx(10.0));
    CHECK(std::abs(g.output_bias(0) - 0.6) <= 1e-15);
    CHECK(std::abs(std::sqrt(squared_norm(g)) - 1.0) <= 1e-12);

    Rng rng(12);
    for (int trial = 0; trial < 1000; ++trial) {
      LstmParams r = zeros_like(g);
      const double s = rng.uniform(0.0, 20.0);
      r.for_each_tensor([&](auto& t) {
        for (Eigen::Index k = 0; k < t.size(); ++k) t.data()[k] = rng.uniform(-s, s);
      });
      const double max_norm = rng.uniform(0.01, 5.0);
      clip_gradients(r, max_norm);
      CHECK(std::sqrt(squared_norm(r)) <= max_norm * (1 + 1e-12));
    }
    CHECK_THROWS_AS(clip_gradients(g, 0.0), std::invalid_argument);
  }
}
