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

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sketchnet/errors.hpp"
#include "sketchnet/hash_family.hpp"
#include "sketchnet/sparse_vector.hpp"

namespace sketchnet {

enum class SketchKind { count, boolean };

/// m x t matrix whose column j is the sub-sketch of the input under h_j.
///
/// Cells are stored column-major, so cell (l, j) sits at flat index j*m + l.
/// The same order is the input layout of every network built over a sketch.
class SketchMatrix {
 public:
  SketchMatrix() = default;
  SketchMatrix(HashFamily fam, SketchKind kind)
      : fam_(std::move(fam)), kind_(kind), cells_(fam_.m() * fam_.t(), 0.0) {}

  std::size_t rows() const noexcept { return fam_.m(); }
  std::size_t cols() const noexcept { return fam_.t(); }
  SketchKind kind() const noexcept { return kind_; }
  const HashFamily& family() const noexcept { return fam_; }

  static std::size_t flat_index(std::size_t l, std::size_t j, std::size_t m) noexcept {
    return j * m + l;
  }

  double operator()(std::size_t l, std::size_t j) const { return cells_[flat_index(l, j, rows())]; }
  double& operator()(std::size_t l, std::size_t j) { return cells_[flat_index(l, j, rows())]; }

  /// Cells in flattened (column-major) order.
  std::span<const double> flat() const noexcept { return cells_; }
  std::span<const double> column(std::size_t j) const {
    return std::span<const double>(cells_).subspan(j * rows(), rows());
  }

 private:
  HashFamily fam_;
  SketchKind kind_ = SketchKind::count;
  std::vector<double> cells_;
};

namespace detail {

inline void check_dims(const SparseVector& x, const HashFamily& fam) {
  if (fam.t() == 0) throw ParameterError("hash family is empty");
  if (x.dim() != fam.d()) throw ParameterError("vector dimension does not match hash family");
}

}  // namespace detail

/// Count sketch: cell (l, j) = sum of x_i over i with h_j(i) = l.
/// Touches only the nonzeros of x, in increasing index order.
inline SketchMatrix count_sketch(const SparseVector& x, const HashFamily& fam) {
  detail::check_dims(x, fam);
  SketchMatrix y(fam, SketchKind::count);
  for (std::size_t j = 0; j < fam.t(); ++j)
    for (const auto& e : x) y(fam.eval_unchecked(j, e.index), j) += e.value;
  return y;
}

/// Boolean sketch: cell (l, j) = OR of x_i over i with h_j(i) = l.
inline SketchMatrix bool_sketch(const SparseVector& x, const HashFamily& fam) {
  if (!x.is_binary()) throw ParameterError("boolean sketch needs a binary vector");
  detail::check_dims(x, fam);
  SketchMatrix y(fam, SketchKind::boolean);
  for (std::size_t j = 0; j < fam.t(); ++j)
    for (const auto& e : x) y(fam.eval_unchecked(j, e.index), j) = 1.0;
  return y;
}

/// Writes the flattened boolean sketch of x into `out` (length m*t), for
/// featurizing many vectors without allocating a matrix each.
inline void bool_sketch_into(const SparseVector& x, const HashFamily& fam, std::span<double> out) {
  if (!x.is_binary()) throw ParameterError("boolean sketch needs a binary vector");
  detail::check_dims(x, fam);
  if (out.size() != fam.m() * fam.t()) throw ParameterError("output span has wrong length");
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t j = 0; j < fam.t(); ++j)
    for (const auto& e : x) out[SketchMatrix::flat_index(fam.eval_unchecked(j, e.index), j, fam.m())] = 1.0;
}

inline void to_json(nlohmann::json& out, const SketchMatrix& y) {
  std::vector<std::vector<double>> columns;
  for (std::size_t j = 0; j < y.cols(); ++j) {
    auto c = y.column(j);
    columns.emplace_back(c.begin(), c.end());
  }
  out = nlohmann::json{{"kind", y.kind() == SketchKind::count ? "count" : "boolean"},
                       {"m", y.rows()},
                       {"t", y.cols()},
                       {"family", y.family()},
                       {"columns", columns}};
}

}  // namespace sketchnet
