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

// Deterministic sketch of k-sparse binary vectors.
//
// For x with support S, p_x(z) = 1 - (k+1) * prod_{i in S} (z - label(i))^2
// where label(i) = i + 1 (coordinate labels start at 1, so index 0 is not a
// root at z = 0). p_x equals 1 on the labels of S and is at most -k on every
// other label in [1, d]. The sketch is the 2k+1 integer coefficients of p_x;
// averaging p_x over the labels of a set A and applying a ReLU yields the
// monomial prod_{j in A} x_j exactly.
//
// Coefficients grow like (k+1) d^{2k}, so everything is exact integer or
// rational arithmetic. The float export is only for feeding networks.

#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"
#include "sketchnet/errors.hpp"
#include "sketchnet/sparse_vector.hpp"

namespace sketchnet {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

struct DetSketch {
  std::size_t k = 0;
  std::size_t d = 0;
  std::vector<BigInt> coeffs;  // a_0 .. a_{2k}, lowest degree first

  /// p_x(z) by Horner's rule.
  BigInt evaluate(const BigInt& z) const {
    BigInt acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  /// Nearest-double export of the coefficients. Exact decoding guarantees do
  /// not carry over once the coefficients are rounded.
  std::vector<double> to_doubles() const {
    std::vector<double> out;
    out.reserve(coeffs.size());
    for (const auto& c : coeffs) out.push_back(c.convert_to<double>());
    return out;
  }

  friend bool operator==(const DetSketch&, const DetSketch&) = default;
};

/// Polynomial label of 0-based coordinate i.
inline std::size_t det_label(std::size_t i) noexcept { return i + 1; }

inline DetSketch det_sketch(const SparseVector& x, std::size_t k) {
  if (!x.is_binary()) throw ParameterError("deterministic sketch needs a binary vector");
  if (x.nnz() > k) {
    throw SparsityError("vector has " + std::to_string(x.nnz()) + " nonzeros, budget is " +
                        std::to_string(k));
  }
  // prod (z - r)^2 = prod (z^2 - 2 r z + r^2), accumulated lowest degree first.
  std::vector<BigInt> prod{1};
  for (const auto& e : x) {
    const BigInt r = det_label(e.index);
    const BigInt c0 = r * r;
    const BigInt c1 = -2 * r;
    std::vector<BigInt> next(prod.size() + 2, 0);
    for (std::size_t n = 0; n < prod.size(); ++n) {
      next[n] += prod[n] * c0;
      next[n + 1] += prod[n] * c1;
      next[n + 2] += prod[n];
    }
    prod = std::move(next);
  }
  DetSketch sk;
  sk.k = k;
  sk.d = x.dim();
  sk.coeffs.assign(2 * k + 1, 0);
  const BigInt scale = static_cast<long long>(k) + 1;
  for (std::size_t n = 0; n < prod.size(); ++n) sk.coeffs[n] = -scale * prod[n];
  sk.coeffs[0] += 1;
  return sk;
}

namespace detail {

inline std::vector<std::size_t> check_index_set(const DetSketch& sk, std::vector<std::size_t> a) {
  if (a.empty()) throw ParameterError("index set must be nonempty");
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  if (a.back() >= sk.d) throw ParameterError("index set element out of range");
  return a;
}

}  // namespace detail

/// Exact average of p_x over the labels of A.
inline BigRational dec_poly(const DetSketch& sk, std::vector<std::size_t> a) {
  a = detail::check_index_set(sk, std::move(a));
  BigInt sum = 0;
  for (std::size_t j : a) sum += sk.evaluate(BigInt(det_label(j)));
  return BigRational(sum, BigInt(a.size()));
}

/// ReLU(dec_poly) for a valid sketch; either 0 or 1.
inline int det_decode_monomial(const DetSketch& sk, std::vector<std::size_t> a) {
  return dec_poly(sk, std::move(a)) > 0 ? 1 : 0;
}

// Coefficients travel as decimal strings so no precision is lost.
inline void to_json(nlohmann::json& out, const DetSketch& sk) {
  std::vector<std::string> coeffs;
  coeffs.reserve(sk.coeffs.size());
  for (const auto& c : sk.coeffs) coeffs.push_back(c.str());
  out = nlohmann::json{{"k", sk.k}, {"d", sk.d}, {"coeffs", coeffs}};
}

inline DetSketch det_sketch_from_json(const nlohmann::json& in) {
  DetSketch sk;
  try {
    sk.k = in.at("k").get<std::size_t>();
    sk.d = in.at("d").get<std::size_t>();
    for (const auto& s : in.at("coeffs")) sk.coeffs.emplace_back(s.get<std::string>());
  } catch (const std::exception& e) {
    throw ParameterError(std::string("malformed deterministic sketch JSON: ") + e.what());
  }
  if (sk.coeffs.size() != 2 * sk.k + 1) throw ParameterError("coefficient count must be 2k+1");
  return sk;
}

}  // namespace sketchnet
