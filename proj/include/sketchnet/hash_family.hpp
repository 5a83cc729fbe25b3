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
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sketchnet/errors.hpp"
#include "sketchnet/random.hpp"

namespace sketchnet {

/// Mersenne prime 2^61 - 1; the field for the affine hash family.
inline constexpr std::uint64_t kHashPrime = (std::uint64_t{1} << 61) - 1;

namespace detail {

inline std::uint64_t mod_mersenne61(unsigned __int128 v) noexcept {
  std::uint64_t lo = static_cast<std::uint64_t>(v & kHashPrime);
  std::uint64_t hi = static_cast<std::uint64_t>(v >> 61);
  std::uint64_t r = lo + hi;
  // v < 2^122 here, so two folds and one subtraction reduce fully.
  r = (r & kHashPrime) + (r >> 61);
  if (r >= kHashPrime) r -= kHashPrime;
  return r;
}

}  // namespace detail

/// Coefficients of one affine hash h(i) = ((a*i + b) mod p) mod m.
struct AffineHash {
  std::uint64_t a = 1;
  std::uint64_t b = 0;
};

/// A set of t hash functions [d] -> [m].
///
/// Either seeded affine functions over the prime field 2^61 - 1 (pairwise
/// independent up to the mod-m range reduction) or explicit lookup tables.
/// Immutable; copies share the underlying parameters.
class HashFamily {
 public:
  HashFamily() = default;

  std::size_t t() const noexcept { return data_ ? data_->t : 0; }
  std::size_t d() const noexcept { return data_ ? data_->d : 0; }
  std::size_t m() const noexcept { return data_ ? data_->m : 0; }
  bool is_table() const noexcept { return data_ && !data_->tables.empty(); }
  /// Seed used to draw the affine coefficients; empty for table families.
  std::optional<std::uint64_t> seed() const noexcept {
    return data_ ? data_->seed : std::nullopt;
  }
  std::span<const AffineHash> affine_params() const noexcept {
    return data_ ? std::span<const AffineHash>(data_->affine) : std::span<const AffineHash>();
  }

  /// Bucket of coordinate i under function j, with bounds checks.
  std::size_t operator()(std::size_t j, std::size_t i) const {
    if (!data_) throw ParameterError("hash family is empty");
    if (j >= data_->t) throw ParameterError("hash function index out of range");
    if (i >= data_->d) throw ParameterError("coordinate out of range");
    return eval_unchecked(j, i);
  }

  /// Bucket of coordinate i under function j; caller guarantees j < t, i < d.
  std::size_t eval_unchecked(std::size_t j, std::size_t i) const noexcept {
    const Data& data = *data_;
    if (!data.tables.empty()) return data.tables[j][i];
    const AffineHash& h = data.affine[j];
    unsigned __int128 v = static_cast<unsigned __int128>(h.a) * i + h.b;
    return static_cast<std::size_t>(detail::mod_mersenne61(v) % data.m);
  }

  friend HashFamily make_hash_family(std::uint64_t seed, std::size_t t, std::size_t d,
                                     std::size_t m);
  friend HashFamily make_table_family(std::vector<std::vector<std::size_t>> tables,
                                      std::optional<std::size_t> m);

  friend bool operator==(const HashFamily& lhs, const HashFamily& rhs) {
    if (lhs.data_ == rhs.data_) return true;
    if (!lhs.data_ || !rhs.data_) return false;
    const Data& a = *lhs.data_;
    const Data& b = *rhs.data_;
    if (a.t != b.t || a.d != b.d || a.m != b.m || a.tables != b.tables) return false;
    if (a.affine.size() != b.affine.size()) return false;
    for (std::size_t j = 0; j < a.affine.size(); ++j) {
      if (a.affine[j].a != b.affine[j].a || a.affine[j].b != b.affine[j].b) return false;
    }
    return true;
  }

 private:
  struct Data {
    std::size_t t = 0;
    std::size_t d = 0;
    std::size_t m = 0;
    std::optional<std::uint64_t> seed;
    std::vector<AffineHash> affine;
    std::vector<std::vector<std::size_t>> tables;
  };
  explicit HashFamily(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

/// Draws t affine functions h_j(i) = ((a_j*i + b_j) mod p) mod m from a
/// generator seeded with `seed`, a_j in [1, p), b_j in [0, p).
inline HashFamily make_hash_family(std::uint64_t seed, std::size_t t, std::size_t d,
                                   std::size_t m) {
  if (t == 0) throw ParameterError("hash family needs t >= 1");
  if (d == 0 || m == 0) throw ParameterError("hash family needs d >= 1 and m >= 1");
  if (d > kHashPrime || m > kHashPrime) throw ParameterError("d and m must fit in the 61-bit field");
  auto data = std::make_shared<HashFamily::Data>();
  data->t = t;
  data->d = d;
  data->m = m;
  data->seed = seed;
  data->affine.reserve(t);
  Rng rng(seed);
  std::uniform_int_distribution<std::uint64_t> draw_a(1, kHashPrime - 1);
  std::uniform_int_distribution<std::uint64_t> draw_b(0, kHashPrime - 1);
  for (std::size_t j = 0; j < t; ++j) {
    AffineHash h;
    h.a = draw_a(rng);
    h.b = draw_b(rng);
    data->affine.push_back(h);
  }
  return HashFamily(std::move(data));
}

/// Family given by explicit lookup tables, h_j(i) = tables[j][i]. The range
/// m defaults to 1 + the largest entry.
inline HashFamily make_table_family(std::vector<std::vector<std::size_t>> tables,
                                    std::optional<std::size_t> m = std::nullopt) {
  if (tables.empty()) throw ParameterError("table family needs at least one table");
  const std::size_t d = tables.front().size();
  if (d == 0) throw ParameterError("tables must be non-empty");
  std::size_t max_entry = 0;
  for (const auto& table : tables) {
    if (table.size() != d) throw ParameterError("all tables must have the same length");
    for (std::size_t v : table) max_entry = std::max(max_entry, v);
  }
  const std::size_t range = m.value_or(max_entry + 1);
  if (range == 0 || max_entry >= range) throw ParameterError("table entry out of range [0, m)");
  auto data = std::make_shared<HashFamily::Data>();
  data->t = tables.size();
  data->d = d;
  data->m = range;
  data->tables = std::move(tables);
  return HashFamily(std::move(data));
}

/// Bucket of coordinate i under function j.
inline std::size_t hash_eval(const HashFamily& fam, std::size_t j, std::size_t i) {
  return fam(j, i);
}

// Seeded families serialize as (seed, t, d, m); table families as their tables.
inline void to_json(nlohmann::json& out, const HashFamily& fam) {
  if (fam.is_table()) {
    std::vector<std::vector<std::size_t>> tables(fam.t(), std::vector<std::size_t>(fam.d()));
    for (std::size_t j = 0; j < fam.t(); ++j)
      for (std::size_t i = 0; i < fam.d(); ++i) tables[j][i] = fam.eval_unchecked(j, i);
    out = nlohmann::json{{"m", fam.m()}, {"tables", tables}};
    return;
  }
  out = nlohmann::json{{"seed", fam.seed().value_or(0)}, {"t", fam.t()}, {"d", fam.d()},
                       {"m", fam.m()}};
}

inline HashFamily hash_family_from_json(const nlohmann::json& in) {
  try {
    if (in.contains("tables")) {
      return make_table_family(in.at("tables").get<std::vector<std::vector<std::size_t>>>(),
                               in.at("m").get<std::size_t>());
    }
    return make_hash_family(in.at("seed").get<std::uint64_t>(), in.at("t").get<std::size_t>(),
                            in.at("d").get<std::size_t>(), in.at("m").get<std::size_t>());
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed hash family JSON: ") + e.what());
  }
}

}  // namespace sketchnet
