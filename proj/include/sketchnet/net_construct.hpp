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

// Explicit one-hidden-layer networks for sparse polynomials
//   g(x) = sum_j w_j prod_{i in A_j} x_i
// read from a boolean sketch, a count sketch, a deterministic sketch, or the
// raw 0/1 input. Each hidden unit evaluates one term; the output layer holds
// the term weights.

#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "sketchnet/det_sketch.hpp"
#include "sketchnet/errors.hpp"
#include "sketchnet/hash_family.hpp"
#include "sketchnet/network.hpp"
#include "sketchnet/sketch.hpp"
#include "sketchnet/sparse_vector.hpp"

namespace sketchnet {

struct PolyTerm {
  double weight = 0.0;
  std::vector<std::size_t> indices;  // sorted, unique, nonempty
  friend bool operator==(const PolyTerm&, const PolyTerm&) = default;
};

/// Weighted sum of monomials over [0, d). Linear models have |A_j| = 1.
class SparsePolynomialModel {
 public:
  SparsePolynomialModel() = default;
  SparsePolynomialModel(std::size_t d, std::vector<PolyTerm> terms) : d_(d), terms_(std::move(terms)) {
    for (auto& term : terms_) {
      auto& a = term.indices;
      if (a.empty()) throw ParameterError("monomial index set must be nonempty");
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
      if (a.back() >= d_) throw ParameterError("monomial index out of range");
    }
  }

  /// Linear model w^T x as one singleton term per nonzero of w.
  static SparsePolynomialModel linear(const SparseVector& w) {
    std::vector<PolyTerm> terms;
    for (const auto& e : w) terms.push_back({e.value, {e.index}});
    return SparsePolynomialModel(w.dim(), std::move(terms));
  }

  std::size_t dim() const noexcept { return d_; }
  const std::vector<PolyTerm>& terms() const noexcept { return terms_; }

  bool is_linear() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const PolyTerm& t) { return t.indices.size() == 1; });
  }

  std::size_t degree() const {
    std::size_t p = 0;
    for (const auto& t : terms_) p = std::max(p, t.indices.size());
    return p;
  }

  /// Distinct coordinates used by any term.
  std::vector<std::size_t> variables() const {
    std::vector<std::size_t> vars;
    for (const auto& t : terms_) vars.insert(vars.end(), t.indices.begin(), t.indices.end());
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
  }

  /// g(x) for a 0/1 vector; terms are summed in order.
  double operator()(const SparseVector& x) const {
    if (x.dim() != d_) throw ParameterError("vector dimension does not match model");
    double acc = 0.0;
    for (const auto& t : terms_) {
      bool on = std::all_of(t.indices.begin(), t.indices.end(),
                            [&](std::size_t i) { return x[i] != 0.0; });
      acc += on ? t.weight : 0.0;
    }
    return acc;
  }

 private:
  std::size_t d_ = 0;
  std::vector<PolyTerm> terms_;
};

/// ReLU AND-gate network over a flattened boolean sketch (cell (l, j) at
/// j*m + l). Term j gets 0/1 weights on T_A = {(h_r(i), r) : i in A, r < t}
/// and bias -(|T_A| - 1); its output weight is w_j.
inline Network build_bool_sketch_net(const SparsePolynomialModel& model, const HashFamily& fam) {
  if (fam.t() == 0 || fam.d() != model.dim())
    throw ParameterError("model dimension does not match hash family");
  const std::size_t m = fam.m();
  Network net;
  net.input_dim = m * fam.t();
  for (const auto& term : model.terms()) {
    std::vector<std::size_t> cells;
    for (std::size_t i : term.indices)
      for (std::size_t r = 0; r < fam.t(); ++r)
        cells.push_back(SketchMatrix::flat_index(fam.eval_unchecked(r, i), r, m));
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    HiddenUnit unit;
    unit.kind = UnitKind::relu;
    unit.bias = -(static_cast<double>(cells.size()) - 1.0);
    for (std::size_t c : cells) unit.weights.push_back({c, 1.0});
    net.output.push_back({net.hidden.size(), term.weight});
    net.hidden.push_back(std::move(unit));
  }
  return net;
}

/// Min-gate network over a flattened count sketch; computes
/// sum_i w_i * DecMin(Y, i). Linear models only.
inline Network build_min_sketch_net(const SparsePolynomialModel& model, const HashFamily& fam) {
  if (!model.is_linear()) throw CapabilityError("min-gate construction is defined for linear models only");
  if (fam.t() == 0 || fam.d() != model.dim())
    throw ParameterError("model dimension does not match hash family");
  const std::size_t m = fam.m();
  Network net;
  net.input_dim = m * fam.t();
  for (const auto& term : model.terms()) {
    const std::size_t i = term.indices.front();
    HiddenUnit unit;
    unit.kind = UnitKind::min;
    for (std::size_t r = 0; r < fam.t(); ++r)
      unit.weights.push_back({SketchMatrix::flat_index(fam.eval_unchecked(r, i), r, m), 1.0});
    net.output.push_back({net.hidden.size(), term.weight});
    net.hidden.push_back(std::move(unit));
  }
  return net;
}

/// ReLU network over the 2k+1 deterministic-sketch coefficients. Unit j has
/// dense weights v_n = (sum_{r in A_j} label(r)^n) / |A_j|, bias 0, so its
/// pre-activation is the average of p_x over the labels of A_j.
inline Network build_det_net(const SparsePolynomialModel& model, std::size_t k) {
  Network net;
  net.input_dim = 2 * k + 1;
  for (const auto& term : model.terms()) {
    HiddenUnit unit;
    unit.kind = UnitKind::relu;
    const BigInt size = term.indices.size();
    for (std::size_t n = 0; n <= 2 * k; ++n) {
      BigInt sum = 0;
      for (std::size_t r : term.indices) sum += boost::multiprecision::pow(BigInt(det_label(r)), static_cast<unsigned>(n));
      unit.weights.push_back({n, BigRational(sum, size).convert_to<double>()});
    }
    net.output.push_back({net.hidden.size(), term.weight});
    net.hidden.push_back(std::move(unit));
  }
  return net;
}

/// ReLU AND-gate network on the raw 0/1 input: unit j is
/// ReLU(sum_{i in A_j} x_i - |A_j| + 1).
inline Network build_raw_bool_net(const SparsePolynomialModel& model) {
  Network net;
  net.input_dim = model.dim();
  for (const auto& term : model.terms()) {
    HiddenUnit unit;
    unit.kind = UnitKind::relu;
    unit.bias = -(static_cast<double>(term.indices.size()) - 1.0);
    for (std::size_t i : term.indices) unit.weights.push_back({i, 1.0});
    net.output.push_back({net.hidden.size(), term.weight});
    net.hidden.push_back(std::move(unit));
  }
  return net;
}

// Model file: {"d": 4, "terms": [{"w": 0.5, "A": [0]}, {"w": -2, "A": [2, 3]}]}
inline void to_json(nlohmann::json& out, const SparsePolynomialModel& model) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : model.terms()) terms.push_back({{"w", t.weight}, {"A", t.indices}});
  out = nlohmann::json{{"d", model.dim()}, {"terms", terms}};
}

inline SparsePolynomialModel model_from_json(const nlohmann::json& in) {
  try {
    std::vector<PolyTerm> terms;
    for (const auto& t : in.at("terms"))
      terms.push_back({t.at("w").get<double>(), t.at("A").get<std::vector<std::size_t>>()});
    return SparsePolynomialModel(in.at("d").get<std::size_t>(), std::move(terms));
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed model JSON: ") + e.what());
  }
}

}  // namespace sketchnet
