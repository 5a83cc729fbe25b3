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

// Synthetic sparse regression data and the feature maps compared by the
// benchmark (raw 0/1 input, flattened boolean sketch, Gaussian projection).

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "json.hpp"
#include "sketchnet/errors.hpp"
#include "sketchnet/gauss_proj.hpp"
#include "sketchnet/hash_family.hpp"
#include "sketchnet/net_construct.hpp"
#include "sketchnet/random.hpp"
#include "sketchnet/sketch.hpp"
#include "sketchnet/sparse_vector.hpp"

namespace sketchnet {

struct SynthConfig {
  std::size_t d = 2000;
  std::size_t k = 20;                    // nonzeros per example
  std::size_t s = 60;                    // monomials in the target
  std::size_t n = 20000;                 // examples
  std::size_t relevant_size = 20;        // |I|
  std::size_t per_example_relevant = 5;  // drawn from I per example
  std::size_t min_term_card = 1;
  std::size_t max_term_card = 1;
  double noise_sd = 0.05;
  std::uint64_t seed = 1;

  static SynthConfig desk_scale() { return {}; }

  static SynthConfig paper_scale() {
    SynthConfig c;
    c.d = 10000;
    c.k = 50;
    c.s = 300;
    c.n = 200000;
    c.relevant_size = 50;
    c.per_example_relevant = 12;
    return c;
  }

  void validate() const {
    if (d == 0 || n == 0 || s == 0) throw ParameterError("d, n and s must be positive");
    if (relevant_size == 0 || relevant_size > d) throw ParameterError("need 1 <= |I| <= d");
    if (per_example_relevant > k || k > d) throw ParameterError("need per_example_relevant <= k <= d");
    if (per_example_relevant > relevant_size) throw ParameterError("per_example_relevant exceeds |I|");
    if (min_term_card < 1 || min_term_card > max_term_card || max_term_card > 3)
      throw ParameterError("term cardinality must satisfy 1 <= min <= max <= 3");
    if (max_term_card > relevant_size) throw ParameterError("term cardinality exceeds |I|");
    if (noise_sd < 0.0) throw ParameterError("noise_sd must be nonnegative");
  }
};

struct Example {
  SparseVector x;
  double target = 0.0;
};

struct Dataset {
  std::vector<Example> examples;
  SparsePolynomialModel model;
  std::vector<std::size_t> relevant;  // the index set I, sorted
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
  std::size_t d = 0;
};

namespace detail {

/// `count` distinct values from `pool`, in draw order.
inline std::vector<std::size_t> draw_distinct(const std::vector<std::size_t>& pool, std::size_t count,
                                              Rng& rng) {
  std::vector<std::size_t> out;
  if (count == 0) return out;
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  while (out.size() < count) {
    std::size_t v = pool[pick(rng)];
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

}  // namespace detail

/// Draws a target polynomial over a random relevant set I and n examples,
/// each with `per_example_relevant` indices from I and the rest uniform over
/// [d] (duplicates redrawn, so every x has exactly k ones). Targets get
/// N(0, noise_sd^2) noise. A seeded shuffle puts 90% of examples in train.
inline Dataset gen_synthetic(const SynthConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  Dataset ds;
  ds.d = cfg.d;

  std::vector<std::size_t> all(cfg.d);
  for (std::size_t i = 0; i < cfg.d; ++i) all[i] = i;
  // Partial Fisher-Yates for I.
  for (std::size_t n = 0; n < cfg.relevant_size; ++n) {
    std::uniform_int_distribution<std::size_t> pick(n, cfg.d - 1);
    std::swap(all[n], all[pick(rng)]);
  }
  ds.relevant.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(cfg.relevant_size));
  std::sort(ds.relevant.begin(), ds.relevant.end());

  std::normal_distribution<double> standard(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> card(cfg.min_term_card, cfg.max_term_card);
  std::vector<PolyTerm> terms;
  for (std::size_t j = 0; j < cfg.s; ++j) {
    PolyTerm term;
    term.indices = detail::draw_distinct(ds.relevant, card(rng), rng);
    term.weight = standard(rng);
    terms.push_back(std::move(term));
  }
  ds.model = SparsePolynomialModel(cfg.d, std::move(terms));

  std::normal_distribution<double> noise(0.0, cfg.noise_sd);
  std::uniform_int_distribution<std::size_t> any(0, cfg.d - 1);
  ds.examples.reserve(cfg.n);
  for (std::size_t e = 0; e < cfg.n; ++e) {
    std::vector<std::size_t> support = detail::draw_distinct(ds.relevant, cfg.per_example_relevant, rng);
    while (support.size() < cfg.k) {
      std::size_t v = any(rng);
      if (std::find(support.begin(), support.end(), v) == support.end()) support.push_back(v);
    }
    SparseVector x = SparseVector::binary(cfg.d, std::move(support));
    double y = ds.model(x);
    if (cfg.noise_sd > 0.0) y += noise(rng);
    ds.examples.push_back({std::move(x), y});
  }

  std::vector<std::size_t> order(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  const std::size_t n_train = (cfg.n * 9) / 10;
  ds.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  ds.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  return ds;
}

/// Row-major feature matrix. Sparse rows are (column, value) lists; dense
/// rows store every column.
class FeatureMatrix {
 public:
  struct Row {
    std::span<const std::uint32_t> cols;  // empty for dense rows
    std::span<const float> vals;
  };

  FeatureMatrix() = default;
  FeatureMatrix(std::size_t dim, bool dense) : dim_(dim), dense_(dense) { row_ptr_.push_back(0); }

  std::size_t dim() const noexcept { return dim_; }
  bool dense() const noexcept { return dense_; }
  std::size_t rows() const noexcept { return row_ptr_.size() - 1; }

  void add_sparse_row(std::span<const std::uint32_t> cols, std::span<const float> vals) {
    cols_.insert(cols_.end(), cols.begin(), cols.end());
    vals_.insert(vals_.end(), vals.begin(), vals.end());
    row_ptr_.push_back(vals_.size());
  }
  void add_dense_row(std::span<const float> vals) {
    vals_.insert(vals_.end(), vals.begin(), vals.end());
    row_ptr_.push_back(vals_.size());
  }

  Row row(std::size_t r) const {
    const std::size_t b = row_ptr_[r];
    const std::size_t len = row_ptr_[r + 1] - b;
    Row out;
    out.vals = std::span<const float>(vals_).subspan(b, len);
    if (!dense_) out.cols = std::span<const std::uint32_t>(cols_).subspan(b, len);
    return out;
  }

  std::vector<double> row_dense(std::size_t r) const {
    std::vector<double> out(dim_, 0.0);
    Row rw = row(r);
    for (std::size_t n = 0; n < rw.vals.size(); ++n) out[dense_ ? n : rw.cols[n]] = rw.vals[n];
    return out;
  }

 private:
  std::size_t dim_ = 0;
  bool dense_ = false;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::uint32_t> cols_;
  std::vector<float> vals_;
};

struct Scheme {
  enum class Kind { raw, sketch, gaussian };
  Kind kind = Kind::raw;
  std::size_t m = 0;    // sketch rows
  std::size_t t = 0;    // sketch columns
  std::size_t dim = 0;  // gaussian output dim

  static Scheme raw() { return {Kind::raw, 0, 0, 0}; }
  static Scheme sketch(std::size_t m, std::size_t t) { return {Kind::sketch, m, t, 0}; }
  static Scheme gaussian(std::size_t dim) { return {Kind::gaussian, 0, 0, dim}; }

  std::string name() const {
    switch (kind) {
      case Kind::raw: return "raw";
      case Kind::sketch: return "sketch";
      case Kind::gaussian: return "gaussian";
    }
    return "?";
  }

  std::size_t feature_dim(std::size_t d) const {
    switch (kind) {
      case Kind::raw: return d;
      case Kind::sketch: return m * t;
      case Kind::gaussian: return dim;
    }
    return 0;
  }
};

struct Featurized {
  FeatureMatrix features;
  std::vector<double> targets;
  std::optional<HashFamily> family;
  std::optional<GaussianProjector> projector;
};

/// Maps every example through one shared feature map: raw 0/1, the flattened
/// boolean sketch (dim m*t), or a Gaussian projection (dim d').
inline Featurized featurize(const Dataset& ds, const Scheme& scheme, std::uint64_t seed) {
  Featurized out;
  out.targets.reserve(ds.examples.size());
  for (const auto& ex : ds.examples) out.targets.push_back(ex.target);

  switch (scheme.kind) {
    case Scheme::Kind::raw: {
      out.features = FeatureMatrix(ds.d, false);
      std::vector<std::uint32_t> cols;
      std::vector<float> vals;
      for (const auto& ex : ds.examples) {
        cols.clear();
        vals.clear();
        for (const auto& e : ex.x) {
          cols.push_back(static_cast<std::uint32_t>(e.index));
          vals.push_back(static_cast<float>(e.value));
        }
        out.features.add_sparse_row(cols, vals);
      }
      break;
    }
    case Scheme::Kind::sketch: {
      HashFamily fam = make_hash_family(seed, scheme.t, ds.d, scheme.m);
      out.features = FeatureMatrix(scheme.m * scheme.t, false);
      std::vector<std::uint32_t> cols;
      std::vector<float> ones;
      for (const auto& ex : ds.examples) {
        cols.clear();
        for (std::size_t j = 0; j < fam.t(); ++j)
          for (const auto& e : ex.x)
            cols.push_back(static_cast<std::uint32_t>(
                SketchMatrix::flat_index(fam.eval_unchecked(j, e.index), j, fam.m())));
        std::sort(cols.begin(), cols.end());
        cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
        ones.assign(cols.size(), 1.0f);
        out.features.add_sparse_row(cols, ones);
      }
      out.family = std::move(fam);
      break;
    }
    case Scheme::Kind::gaussian: {
      GaussianProjector proj(ds.d, scheme.dim, seed);
      out.features = FeatureMatrix(scheme.dim, true);
      std::vector<float> row(scheme.dim);
      for (const auto& ex : ds.examples) {
        std::vector<double> y = gaussian_project(ex.x, proj);
        std::copy(y.begin(), y.end(), row.begin());
        out.features.add_dense_row(row);
      }
      out.projector = std::move(proj);
      break;
    }
  }
  return out;
}

inline void to_json(nlohmann::json& out, const SynthConfig& c) {
  out = nlohmann::json{{"d", c.d},
                       {"k", c.k},
                       {"s", c.s},
                       {"n", c.n},
                       {"relevant_size", c.relevant_size},
                       {"per_example_relevant", c.per_example_relevant},
                       {"min_term_card", c.min_term_card},
                       {"max_term_card", c.max_term_card},
                       {"noise_sd", c.noise_sd},
                       {"seed", c.seed}};
}

/// Overlays the fields present in `in` onto `base`.
inline SynthConfig synth_config_from_json(const nlohmann::json& in, SynthConfig base = {}) {
  try {
    base.d = in.value("d", base.d);
    base.k = in.value("k", base.k);
    base.s = in.value("s", base.s);
    base.n = in.value("n", base.n);
    base.relevant_size = in.value("relevant_size", base.relevant_size);
    base.per_example_relevant = in.value("per_example_relevant", base.per_example_relevant);
    base.min_term_card = in.value("min_term_card", base.min_term_card);
    base.max_term_card = in.value("max_term_card", base.max_term_card);
    base.noise_sd = in.value("noise_sd", base.noise_sd);
    base.seed = in.value("seed", base.seed);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed data config: ") + e.what());
  }
  return base;
}

}  // namespace sketchnet
