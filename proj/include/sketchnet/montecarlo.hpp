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

// Per-coordinate decode failure rates over random (x, family, i) trials.
//
// A trial draws x from the input class, a fresh seeded hash family, and a
// coordinate i uniform over [d]; it fails when the decode leaves the allowed
// set: exactly x_i for binary input, [x_i, x_i + eps*c] for nonnegative input
// under min decoding, [x_i - eps*c, x_i + eps*c] for real input under median
// decoding. Trial seeds are split from the master seed.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <random>
#include <vector>

#include "sketchnet/decoders.hpp"
#include "sketchnet/errors.hpp"
#include "sketchnet/hash_family.hpp"
#include "sketchnet/random.hpp"
#include "sketchnet/sketch.hpp"
#include "sketchnet/sparse_vector.hpp"

namespace sketchnet {

/// Exactly k distinct ones, uniform over [d].
inline SparseVector random_binary(std::size_t d, std::size_t k, Rng& rng) {
  if (k > d) throw ParameterError("k exceeds d");
  std::vector<std::size_t> support;
  std::uniform_int_distribution<std::size_t> pick(0, d - 1);
  while (support.size() < k) {
    std::size_t v = pick(rng);
    if (std::find(support.begin(), support.end(), v) == support.end()) support.push_back(v);
  }
  return SparseVector::binary(d, std::move(support));
}

/// Near-sparse vector with k head entries of magnitude in [1, 2] and a tail of
/// `tail_nnz` entries whose magnitudes sum to c, so ||tail_k(x)||_1 = c.
/// Nonneg flavor draws positive values, real flavor random signs.
inline SparseVector random_near_sparse(std::size_t d, std::size_t k, std::size_t tail_nnz, double c,
                                       Flavor flavor, Rng& rng) {
  if (k + tail_nnz > d) throw ParameterError("k + tail_nnz exceeds d");
  SparseVector pattern = random_binary(d, k + tail_nnz, rng);
  std::vector<std::size_t> idx = pattern.support();
  std::shuffle(idx.begin(), idx.end(), rng);
  std::uniform_real_distribution<double> head_mag(1.0, 2.0);
  std::uniform_real_distribution<double> tail_share(0.5, 1.5);
  std::bernoulli_distribution coin(0.5);
  std::vector<double> shares(tail_nnz);
  double total = 0.0;
  for (double& s : shares) total += (s = tail_share(rng));
  std::vector<SparseEntry> entries;
  for (std::size_t n = 0; n < idx.size(); ++n) {
    double mag = n < k ? head_mag(rng) : c * shares[n - k] / total;
    if (mag == 0.0) continue;
    double sign = (flavor == Flavor::real && coin(rng)) ? -1.0 : 1.0;
    entries.push_back({idx[n], sign * mag});
  }
  return SparseVector::from_unsorted(d, std::move(entries), flavor == Flavor::binary ? Flavor::real : flavor);
}

struct MonteCarloConfig {
  Flavor input = Flavor::binary;
  DecodeMode mode = DecodeMode::and_;
  std::size_t d = 1000;
  std::size_t k = 20;
  std::size_t m = 55;
  std::size_t t = 1;
  std::size_t trials = 10000;
  double epsilon = 0.1;
  double c = 1.0;
  std::size_t tail_nnz = 0;  // 0 picks min(d - k, 4k)
  std::uint64_t seed = 1;
};

struct MonteCarloResult {
  MonteCarloConfig config;
  std::size_t failures = 0;
  double rate() const {
    return config.trials ? static_cast<double>(failures) / static_cast<double>(config.trials) : 0.0;
  }
  double bound() const { return std::exp(-static_cast<double>(config.t)); }
  /// bound + 3 binomial standard deviations at the bound.
  double bound_with_slack() const {
    const double b = bound();
    return b + 3.0 * std::sqrt(b * (1.0 - b) / static_cast<double>(config.trials));
  }
};

inline bool decode_fails(const SparseVector& x, const SketchMatrix& y, std::size_t i,
                         const MonteCarloConfig& cfg) {
  constexpr double kTol = 1e-9;
  const double xi = x[i];
  const double v = decode(y, i, cfg.mode);
  switch (cfg.input) {
    case Flavor::binary: return v != xi;
    case Flavor::nonneg: return v < xi - kTol || v > xi + cfg.epsilon * cfg.c + kTol;
    case Flavor::real: return std::abs(v - xi) > cfg.epsilon * cfg.c + kTol;
  }
  return true;
}

inline MonteCarloResult run_montecarlo(const MonteCarloConfig& cfg) {
  if (cfg.d == 0 || cfg.m == 0 || cfg.t == 0 || cfg.trials == 0)
    throw ParameterError("d, m, t and trials must be positive");
  if (cfg.mode == DecodeMode::and_ && cfg.input != Flavor::binary)
    throw ModeError("AND decoding needs binary input");
  const std::size_t tail = cfg.tail_nnz ? cfg.tail_nnz : std::min(cfg.d - std::min(cfg.d, cfg.k), 4 * cfg.k);
  MonteCarloResult result;
  result.config = cfg;
  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    Rng rng(derive_seed(cfg.seed, trial));
    SparseVector x = cfg.input == Flavor::binary
                         ? random_binary(cfg.d, cfg.k, rng)
                         : random_near_sparse(cfg.d, cfg.k, tail, cfg.c, cfg.input, rng);
    HashFamily fam = make_hash_family(rng(), cfg.t, cfg.d, cfg.m);
    std::uniform_int_distribution<std::size_t> coord(0, cfg.d - 1);
    const std::size_t i = coord(rng);
    SketchMatrix y = cfg.mode == DecodeMode::and_ ? bool_sketch(x, fam) : count_sketch(x, fam);
    result.failures += decode_fails(x, y, i, cfg);
  }
  return result;
}

inline void write_montecarlo_header(std::ostream& out) {
  out << "mode,t,m,trials,failures,rate,bound\n";
}

inline void write_montecarlo_row(std::ostream& out, const MonteCarloResult& r) {
  out << to_string(r.config.mode) << ',' << r.config.t << ',' << r.config.m << ',' << r.config.trials
      << ',' << r.failures << ',' << r.rate() << ',' << r.bound() << '\n';
}

}  // namespace sketchnet
