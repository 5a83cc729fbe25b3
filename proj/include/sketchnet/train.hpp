// Copyright 2026 The Sketchnet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Mini-batch SGD on squared loss for one-hidden-layer ReLU regressors (or a
// plain linear model when hidden_units == 0), with proximal l1 shrinkage on
// the first-layer weights.
//
// Sparse inputs only touch the first-layer rows of their nonzero columns.
// Shrinkage of untouched rows is applied lazily: soft-thresholding steps
// compose additively, so a row that sat idle is shrunk by the sum of the
// per-step thresholds it missed just before its next use.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "json.hpp"
#include "sketchnet/errors.hpp"
#include "sketchnet/network.hpp"
#include "sketchnet/random.hpp"
#include "sketchnet/synth.hpp"

namespace sketchnet {

struct TrainConfig {
  std::size_t hidden_units = 60;  // 0 trains a linear model
  double learning_rate = 0.03;
  double lr_decay = 0.0;  // epoch e uses learning_rate / (1 + lr_decay * e)
  std::size_t epochs = 150;
  std::size_t batch_size = 64;
  double l1 = 1e-4;
  std::uint64_t seed = 1;

  void validate() const {
    if (!(learning_rate > 0.0) || epochs == 0 || batch_size == 0)
      throw ParameterError("learning rate, epochs and batch size must be positive");
    if (l1 < 0.0) throw ParameterError("l1 penalty must be nonnegative");
    if (lr_decay < 0.0) throw ParameterError("lr_decay must be nonnegative");
  }
};

struct TrainResult {
  Network net;
  double train_mse = 0.0;
  double test_mse = 0.0;
};

namespace detail {

inline float soft_threshold(float w, float thr) {
  if (w > thr) return w - thr;
  if (w < -thr) return w + thr;
  return 0.0f;
}

class OneLayerTrainer {
 public:
  OneLayerTrainer(std::size_t dim, const TrainConfig& tc)
      : tc_(tc), dim_(dim), hidden_(std::max<std::size_t>(tc.hidden_units, 1)),
        linear_(tc.hidden_units == 0) {
    Rng rng(tc.seed);
    const float r1 = 1.0f / std::sqrt(static_cast<float>(std::max<std::size_t>(dim, 1)));
    w1_.resize(dim_ * hidden_);
    b1_.assign(hidden_, 0.0f);
    w2_.assign(hidden_, 1.0f);
    if (linear_) {
      // Linear model: one identity unit with output weight fixed at 1.
      std::fill(w1_.begin(), w1_.end(), 0.0f);
    } else {
      std::uniform_real_distribution<float> u1(-r1, r1);
      for (float& w : w1_) w = u1(rng);
      const float r2 = 1.0f / std::sqrt(static_cast<float>(hidden_));
      std::uniform_real_distribution<float> u2(-r2, r2);
      for (float& w : w2_) w = u2(rng);
    }
    shuffle_rng_.seed(derive_seed(tc.seed, 1));
    grad_w1_.assign(dim_ * hidden_, 0.0f);
    touched_flag_.assign(dim_, 0);
    applied_.assign(dim_, 0.0);
    h_.resize(hidden_);
    a_.resize(hidden_);
    delta_.resize(hidden_);
    grad_b1_.resize(hidden_);
    grad_w2_.resize(hidden_);
  }

  void fit(const FeatureMatrix& x, std::span<const double> y, std::span<const std::size_t> rows) {
    std::vector<std::size_t> order(rows.begin(), rows.end());
    for (std::size_t epoch = 0; epoch < tc_.epochs; ++epoch) {
      lr_ = tc_.learning_rate / (1.0 + tc_.lr_decay * static_cast<double>(epoch));
      std::shuffle(order.begin(), order.end(), shuffle_rng_);
      double loss = 0.0;
      for (std::size_t start = 0; start < order.size(); start += tc_.batch_size) {
        const std::size_t end = std::min(order.size(), start + tc_.batch_size);
        loss += batch(x, y, std::span<const std::size_t>(order).subspan(start, end - start));
      }
      if (!std::isfinite(loss)) throw TrainingError("training loss is not finite", static_cast<int>(epoch) + 1);
    }
    flush_shrinkage();
  }

  double predict(FeatureMatrix::Row row) {
    forward(row);
    return output();
  }

  double mse(const FeatureMatrix& x, std::span<const double> y, std::span<const std::size_t> rows) {
    if (rows.empty()) return 0.0;
    double acc = 0.0;
    for (std::size_t r : rows) {
      double err = predict(x.row(r)) - y[r];
      acc += err * err;
    }
    return acc / static_cast<double>(rows.size());
  }

  Network to_network() const {
    Network net;
    net.input_dim = dim_;
    for (std::size_t u = 0; u < hidden_; ++u) {
      HiddenUnit unit;
      unit.kind = linear_ ? UnitKind::linear : UnitKind::relu;
      unit.bias = b1_[u];
      for (std::size_t c = 0; c < dim_; ++c) {
        float w = w1_[c * hidden_ + u];
        if (w != 0.0f) unit.weights.push_back({c, w});
      }
      net.output.push_back({u, w2_[u]});
      net.hidden.push_back(std::move(unit));
    }
    net.output_bias = b2_;
    return net;
  }

 private:
  template <typename F>
  void for_each_input(FeatureMatrix::Row row, F&& f) const {
    if (row.cols.empty()) {
      for (std::size_t n = 0; n < row.vals.size(); ++n) f(n, row.vals[n]);
    } else {
      for (std::size_t n = 0; n < row.vals.size(); ++n) f(row.cols[n], row.vals[n]);
    }
  }

  // Applies the shrinkage column c missed while its inputs were zero. Repeated
  // soft-thresholding composes into one threshold equal to the sum.
  void catch_up(std::size_t c) {
    const double owed = shrink_total_ - applied_[c];
    if (owed <= 0.0) return;
    const float thr = static_cast<float>(owed);
    float* w = &w1_[c * hidden_];
    for (std::size_t u = 0; u < hidden_; ++u) w[u] = soft_threshold(w[u], thr);
    applied_[c] = shrink_total_;
  }

  void forward(FeatureMatrix::Row row) {
    std::copy(b1_.begin(), b1_.end(), h_.begin());
    const std::size_t hidden = hidden_;
    float* h = h_.data();
    for_each_input(row, [&](std::size_t c, float v) {
      if (tc_.l1 > 0.0) catch_up(c);
      const float* w = &w1_[c * hidden];
      for (std::size_t u = 0; u < hidden; ++u) h[u] += v * w[u];
    });
    for (std::size_t u = 0; u < hidden; ++u) a_[u] = linear_ ? h_[u] : std::max(0.0f, h_[u]);
  }

  double output() const {
    float out = b2_;
    for (std::size_t u = 0; u < hidden_; ++u) out += w2_[u] * a_[u];
    return out;
  }

  double batch(const FeatureMatrix& x, std::span<const double> y, std::span<const std::size_t> rows) {
    std::fill(grad_b1_.begin(), grad_b1_.end(), 0.0f);
    std::fill(grad_w2_.begin(), grad_w2_.end(), 0.0f);
    float grad_b2 = 0.0f;
    double loss = 0.0;
    const std::size_t hidden = hidden_;
    for (std::size_t r : rows) {
      auto row = x.row(r);
      forward(row);
      const float err = static_cast<float>(output() - y[r]);
      loss += static_cast<double>(err) * err;
      grad_b2 += err;
      for (std::size_t u = 0; u < hidden; ++u) {
        grad_w2_[u] += err * a_[u];
        delta_[u] = (linear_ || h_[u] > 0.0f) ? err * w2_[u] : 0.0f;
        grad_b1_[u] += delta_[u];
      }
      const float* delta = delta_.data();
      for_each_input(row, [&](std::size_t c, float v) {
        if (!touched_flag_[c]) {
          touched_flag_[c] = 1;
          touched_.push_back(c);
        }
        float* g = &grad_w1_[c * hidden];
        for (std::size_t u = 0; u < hidden; ++u) g[u] += v * delta[u];
      });
    }
    const float scale = static_cast<float>(lr_ / static_cast<double>(rows.size()));
    const float thr = static_cast<float>(lr_ * tc_.l1);
    shrink_total_ += lr_ * tc_.l1;
    for (std::size_t c : touched_) {
      float* w = &w1_[c * hidden];
      float* g = &grad_w1_[c * hidden];
      for (std::size_t u = 0; u < hidden; ++u) {
        w[u] -= scale * g[u];
        if (tc_.l1 > 0.0) w[u] = soft_threshold(w[u], thr);
        g[u] = 0.0f;
      }
      touched_flag_[c] = 0;
      applied_[c] = shrink_total_;
    }
    touched_.clear();
    if (!linear_) {
      for (std::size_t u = 0; u < hidden; ++u) {
        b1_[u] -= scale * grad_b1_[u];
        w2_[u] -= scale * grad_w2_[u];
      }
      b2_ -= scale * grad_b2;
    } else {
      // The identity unit's bias doubles as the model intercept.
      b1_[0] -= scale * grad_b1_[0];
    }
    return loss;
  }

  void flush_shrinkage() {
    if (tc_.l1 > 0.0)
      for (std::size_t c = 0; c < dim_; ++c) catch_up(c);
  }

  TrainConfig tc_;
  std::size_t dim_;
  std::size_t hidden_;
  bool linear_;
  std::vector<float> w1_;  // dim x hidden, row per input column
  std::vector<float> b1_;
  std::vector<float> w2_;
  float b2_ = 0.0f;
  Rng shuffle_rng_;
  double lr_ = 0.0;
  double shrink_total_ = 0.0;  // sum of per-step l1 thresholds so far
  std::vector<float> grad_w1_;
  std::vector<char> touched_flag_;
  std::vector<std::size_t> touched_;
  std::vector<double> applied_;  // shrink_total_ when column was last shrunk
  std::vector<float> h_, a_, delta_, grad_b1_, grad_w2_;
};

}  // namespace detail

/// Trains on `train` rows and reports the final MSE on `train` and `test`.
/// Deterministic for a given seed: fixed initialization, fixed shuffles.
inline TrainResult train_one_layer(const FeatureMatrix& x, std::span<const double> y,
                                   std::span<const std::size_t> train,
                                   std::span<const std::size_t> test, const TrainConfig& tc) {
  tc.validate();
  if (y.size() != x.rows()) throw ParameterError("targets and features have different lengths");
  for (auto rows : {train, test})
    for (std::size_t r : rows)
      if (r >= x.rows()) throw ParameterError("row index out of range");
  detail::OneLayerTrainer trainer(x.dim(), tc);
  trainer.fit(x, y, train);
  TrainResult result;
  result.train_mse = trainer.mse(x, y, train);
  result.test_mse = trainer.mse(x, y, test);
  if (!std::isfinite(result.train_mse)) throw TrainingError("training loss is not finite", static_cast<int>(tc.epochs));
  result.net = trainer.to_network();
  return result;
}

/// Mean squared error of an arbitrary network over the given rows.
inline double network_mse(const Network& net, const FeatureMatrix& x, std::span<const double> y,
                          std::span<const std::size_t> rows) {
  if (rows.empty()) return 0.0;
  double acc = 0.0;
  for (std::size_t r : rows) {
    double err = eval_network(net, x.row_dense(r)) - y[r];
    acc += err * err;
  }
  return acc / static_cast<double>(rows.size());
}

inline void to_json(nlohmann::json& out, const TrainConfig& c) {
  out = nlohmann::json{{"hidden_units", c.hidden_units}, {"learning_rate", c.learning_rate},
                       {"lr_decay", c.lr_decay},         {"epochs", c.epochs},
                       {"batch_size", c.batch_size},
                       {"l1", c.l1},                     {"seed", c.seed}};
}

inline TrainConfig train_config_from_json(const nlohmann::json& in, TrainConfig base = {}) {
  try {
    base.hidden_units = in.value("hidden_units", base.hidden_units);
    base.learning_rate = in.value("learning_rate", base.learning_rate);
    base.lr_decay = in.value("lr_decay", base.lr_decay);
    base.epochs = in.value("epochs", base.epochs);
    base.batch_size = in.value("batch_size", base.batch_size);
    base.l1 = in.value("l1", base.l1);
    base.seed = in.value("seed", base.seed);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed training config: ") + e.what());
  }
  return base;
}

}  // namespace sketchnet
