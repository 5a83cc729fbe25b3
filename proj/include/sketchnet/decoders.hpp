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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "sketchnet/errors.hpp"
#include "sketchnet/sketch.hpp"
#include "sketchnet/sparse_vector.hpp"

namespace sketchnet {

enum class DecodeMode { min, and_, median };

inline std::string_view to_string(DecodeMode mode) {
  switch (mode) {
    case DecodeMode::min: return "min";
    case DecodeMode::and_: return "and";
    case DecodeMode::median: return "median";
  }
  return "?";
}

inline DecodeMode parse_decode_mode(std::string_view name) {
  if (name == "min") return DecodeMode::min;
  if (name == "and") return DecodeMode::and_;
  if (name == "median" || name == "med") return DecodeMode::median;
  throw ParameterError("unknown decode mode '" + std::string(name) + "'");
}

// Sketch sizing. Bounds are powers of e, so logarithms are natural.

/// m = ceil(e k): per-column collision probability at most 1/e for k-sparse binary x.
inline std::size_t rows_for_binary(std::size_t k) {
  return static_cast<std::size_t>(std::ceil(std::numbers::e * static_cast<double>(k)));
}

/// m = ceil(e (k + 1/eps)) for nonnegative near-sparse x.
inline std::size_t rows_for_nonneg(std::size_t k, double eps) {
  if (!(eps > 0.0)) throw ParameterError("epsilon must be positive");
  return static_cast<std::size_t>(std::ceil(std::numbers::e * (static_cast<double>(k) + 1.0 / eps)));
}

/// m = ceil(4 e^2 (k + 2/eps)) for general real near-sparse x.
inline std::size_t rows_for_real(std::size_t k, double eps) {
  if (!(eps > 0.0)) throw ParameterError("epsilon must be positive");
  const double e2 = std::numbers::e * std::numbers::e;
  return static_cast<std::size_t>(std::ceil(4.0 * e2 * (static_cast<double>(k) + 2.0 / eps)));
}

/// t = ceil(ln(s / delta)), at least 1.
inline std::size_t hashes_for(std::size_t s, double delta) {
  if (s == 0 || !(delta > 0.0) || !(delta < 1.0)) throw ParameterError("need s >= 1 and 0 < delta < 1");
  double t = std::ceil(std::log(static_cast<double>(s) / delta));
  return static_cast<std::size_t>(std::max(1.0, t));
}

/// Single-column decode: the cell that coordinate i hashes to in column j.
inline double dec(const SketchMatrix& y, std::size_t j, std::size_t i) {
  const HashFamily& fam = y.family();
  if (j >= y.cols()) throw ParameterError("sketch column out of range");
  if (i >= fam.d()) throw ParameterError("coordinate out of range");
  return y(fam.eval_unchecked(j, i), j);
}

namespace detail {

inline void check_decode(const SketchMatrix& y, std::size_t i) {
  if (y.cols() == 0 || y.rows() == 0) throw ParameterError("sketch is empty");
  if (i >= y.family().d()) throw ParameterError("coordinate out of range");
}

inline double median_inplace(std::vector<double>& v) {
  const std::size_t n = v.size();
  const std::size_t mid = n / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  if (n % 2 == 1) return v[mid];
  double upper = v[mid];
  double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace detail

/// Minimum of the t single-column decodes. For nonnegative x this never
/// underestimates x_i.
inline double dec_min(const SketchMatrix& y, std::size_t i) {
  detail::check_decode(y, i);
  const HashFamily& fam = y.family();
  double best = y(fam.eval_unchecked(0, i), 0);
  for (std::size_t j = 1; j < y.cols(); ++j) best = std::min(best, y(fam.eval_unchecked(j, i), j));
  return best;
}

/// AND of the t single-column decodes of a boolean sketch.
inline int dec_and(const SketchMatrix& y, std::size_t i) {
  if (y.kind() != SketchKind::boolean) throw ModeError("AND decoding needs a boolean sketch");
  detail::check_decode(y, i);
  const HashFamily& fam = y.family();
  for (std::size_t j = 0; j < y.cols(); ++j)
    if (y(fam.eval_unchecked(j, i), j) == 0.0) return 0;
  return 1;
}

/// Median of the t single-column decodes; even t averages the middle two.
inline double dec_med(const SketchMatrix& y, std::size_t i) {
  detail::check_decode(y, i);
  const HashFamily& fam = y.family();
  std::vector<double> vals(y.cols());
  for (std::size_t j = 0; j < y.cols(); ++j) vals[j] = y(fam.eval_unchecked(j, i), j);
  return detail::median_inplace(vals);
}

inline void check_mode(const SketchMatrix& y, DecodeMode mode) {
  if (mode == DecodeMode::and_ && y.kind() != SketchKind::boolean)
    throw ModeError("AND decoding needs a boolean sketch");
}

inline double decode(const SketchMatrix& y, std::size_t i, DecodeMode mode) {
  switch (mode) {
    case DecodeMode::min: return dec_min(y, i);
    case DecodeMode::and_: return dec_and(y, i);
    case DecodeMode::median: return dec_med(y, i);
  }
  throw ModeError("unknown decode mode");
}

/// Sum of w_i * decode(Y, i) over the support of w, in increasing index order.
inline double eval_linear_from_sketch(const SparseVector& w, const SketchMatrix& y,
                                      DecodeMode mode) {
  check_mode(y, mode);
  if (w.dim() != y.family().d()) throw ParameterError("weight dimension does not match sketch");
  double acc = 0.0;
  for (const auto& e : w) acc += e.value * decode(y, e.index, mode);
  return acc;
}

}  // namespace sketchnet
