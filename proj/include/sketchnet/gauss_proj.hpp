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

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "sketchnet/errors.hpp"
#include "sketchnet/network.hpp"
#include "sketchnet/random.hpp"
#include "sketchnet/sparse_vector.hpp"

namespace sketchnet {

/// Dense d_out x d Gaussian matrix with i.i.d. N(0, 1/d_out) entries,
/// regenerated from its seed. Stored column by column.
class GaussianProjector {
 public:
  GaussianProjector() = default;

  GaussianProjector(std::size_t d, std::size_t d_out, std::uint64_t seed)
      : d_(d), d_out_(d_out), seed_(seed) {
    if (d == 0 || d_out == 0) throw ParameterError("projector dimensions must be positive");
    g_.resize(d * d_out);
    Rng rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(d_out)));
    for (double& v : g_) v = normal(rng);
  }

  /// Explicit matrix, columns[i][j] = G_{ji}. For tests and degenerate cases.
  static GaussianProjector from_columns(const std::vector<std::vector<double>>& columns) {
    if (columns.empty() || columns.front().empty()) throw ParameterError("projector matrix is empty");
    GaussianProjector p;
    p.d_ = columns.size();
    p.d_out_ = columns.front().size();
    for (const auto& c : columns) {
      if (c.size() != p.d_out_) throw ParameterError("ragged projector columns");
      p.g_.insert(p.g_.end(), c.begin(), c.end());
    }
    return p;
  }

  std::size_t dim() const noexcept { return d_; }
  std::size_t out_dim() const noexcept { return d_out_; }
  std::optional<std::uint64_t> seed() const noexcept { return seed_; }

  std::span<const double> column(std::size_t i) const {
    if (i >= d_) throw ParameterError("projector column out of range");
    return std::span<const double>(g_).subspan(i * d_out_, d_out_);
  }

 private:
  std::size_t d_ = 0;
  std::size_t d_out_ = 0;
  std::optional<std::uint64_t> seed_;
  std::vector<double> g_;
};

/// y = G x, summing only the columns in the support of x.
inline std::vector<double> gaussian_project(const SparseVector& x, const GaussianProjector& p) {
  if (x.dim() != p.dim()) throw ParameterError("vector dimension does not match projector");
  std::vector<double> y(p.out_dim(), 0.0);
  for (const auto& e : x) {
    auto col = p.column(e.index);
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += col[j] * e.value;
  }
  return y;
}

namespace detail {

inline double column_sq_norm(std::span<const double> col, std::size_t i) {
  double s = 0.0;
  for (double g : col) s += g * g;
  if (s == 0.0) throw EstimationError("projector column " + std::to_string(i) + " is all zero");
  return s;
}

}  // namespace detail

/// Minimum-variance linear estimate of x_i from y = Gx: the per-row ratios
/// y_j / g_ji averaged with weights g_ji^2, i.e. (sum_j g_ji y_j) / (sum_j g_ji^2).
inline double gauss_estimate_coord(std::span<const double> y, const GaussianProjector& p,
                                   std::size_t i) {
  if (y.size() != p.out_dim()) throw ParameterError("projection has wrong length");
  auto col = p.column(i);
  const double norm = detail::column_sq_norm(col, i);
  double dot = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) dot += col[j] * y[j];
  return dot / norm;
}

/// Network on y = Gx computing w^T x for binary x whenever every estimate is
/// within 1/4 of its bit. Each i in S(w) gets two ReLU units on the estimate
/// e_i: ReLU(a(e_i - 1/2) + 1/2) - ReLU(a(e_i - 1/2) - 1/2), a clamp of
/// a(e_i - 1/2) + 1/2 to [0, 1]. Unit rows are dense.
inline Network build_gauss_net(const SparseVector& w, const GaussianProjector& p,
                               double steepness = 4.0) {
  if (w.dim() != p.dim()) throw ParameterError("weight dimension does not match projector");
  Network net;
  net.input_dim = p.out_dim();
  for (const auto& e : w) {
    auto col = p.column(e.index);
    const double norm = detail::column_sq_norm(col, e.index);
    HiddenUnit upper;
    upper.kind = UnitKind::relu;
    for (std::size_t j = 0; j < col.size(); ++j) upper.weights.push_back({j, steepness * col[j] / norm});
    HiddenUnit lower = upper;
    upper.bias = -0.5 * steepness + 0.5;
    lower.bias = -0.5 * steepness - 0.5;
    net.output.push_back({net.hidden.size(), e.value});
    net.hidden.push_back(std::move(upper));
    net.output.push_back({net.hidden.size(), -e.value});
    net.hidden.push_back(std::move(lower));
  }
  return net;
}

// Persisted as seed + dims; the matrix is regenerated on load.
inline void to_json(nlohmann::json& out, const GaussianProjector& p) {
  if (!p.seed()) throw ParameterError("only seeded projectors can be serialized");
  out = nlohmann::json{{"seed", *p.seed()}, {"d", p.dim()}, {"d_out", p.out_dim()}};
}

inline GaussianProjector projector_from_json(const nlohmann::json& in) {
  try {
    return GaussianProjector(in.at("d").get<std::size_t>(), in.at("d_out").get<std::size_t>(),
                             in.at("seed").get<std::uint64_t>());
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed projector JSON: ") + e.what());
  }
}

}  // namespace sketchnet
