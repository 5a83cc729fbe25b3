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
#include <istream>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sketchnet/errors.hpp"

namespace sketchnet {

enum class Flavor { binary, nonneg, real };

inline const char* to_string(Flavor f) {
  switch (f) {
    case Flavor::binary: return "binary";
    case Flavor::nonneg: return "nonneg";
    case Flavor::real: return "real";
  }
  return "?";
}

struct SparseEntry {
  std::size_t index = 0;
  double value = 0.0;
  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Vector over [0, d) stored as strictly increasing (index, value) pairs with
/// nonzero values. The flavor restricts values: binary => all 1, nonneg => all > 0.
class SparseVector {
 public:
  SparseVector() = default;

  /// Validating constructor. Entries must already be sorted, unique and nonzero.
  SparseVector(std::size_t d, std::vector<SparseEntry> entries, Flavor flavor = Flavor::real)
      : d_(d), entries_(std::move(entries)), flavor_(flavor) {
    validate();
  }

  /// Sorts, drops zeros; duplicate indices are an error.
  static SparseVector from_unsorted(std::size_t d, std::vector<SparseEntry> entries,
                                    Flavor flavor = Flavor::real) {
    std::sort(entries.begin(), entries.end(),
              [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
    std::erase_if(entries, [](const SparseEntry& e) { return e.value == 0.0; });
    return SparseVector(d, std::move(entries), flavor);
  }

  static SparseVector binary(std::size_t d, std::vector<std::size_t> support) {
    std::sort(support.begin(), support.end());
    std::vector<SparseEntry> entries;
    entries.reserve(support.size());
    for (std::size_t i : support) entries.push_back({i, 1.0});
    return SparseVector(d, std::move(entries), Flavor::binary);
  }

  static SparseVector from_dense(const std::vector<double>& dense, Flavor flavor = Flavor::real) {
    std::vector<SparseEntry> entries;
    for (std::size_t i = 0; i < dense.size(); ++i)
      if (dense[i] != 0.0) entries.push_back({i, dense[i]});
    return SparseVector(dense.size(), std::move(entries), flavor);
  }

  std::size_t dim() const noexcept { return d_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  Flavor flavor() const noexcept { return flavor_; }
  const std::vector<SparseEntry>& entries() const noexcept { return entries_; }

  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> s;
    s.reserve(entries_.size());
    for (const auto& e : entries_) s.push_back(e.index);
    return s;
  }

  /// Value at i (0 outside the support). O(log nnz).
  double operator[](std::size_t i) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const SparseEntry& e, std::size_t idx) { return e.index < idx; });
    return (it != entries_.end() && it->index == i) ? it->value : 0.0;
  }

  std::vector<double> to_dense() const {
    std::vector<double> out(d_, 0.0);
    for (const auto& e : entries_) out[e.index] = e.value;
    return out;
  }

  double l1_norm() const {
    double s = 0.0;
    for (const auto& e : entries_) s += std::abs(e.value);
    return s;
  }

  /// True when every stored value is 1, whatever the flavor tag says.
  bool is_binary() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const SparseEntry& e) { return e.value == 1.0; });
  }

  friend bool operator==(const SparseVector& a, const SparseVector& b) {
    return a.d_ == b.d_ && a.entries_ == b.entries_;
  }

 private:
  void validate() const {
    for (std::size_t n = 0; n < entries_.size(); ++n) {
      const SparseEntry& e = entries_[n];
      if (e.index >= d_) throw ParameterError("sparse index out of range");
      if (n > 0 && entries_[n - 1].index >= e.index)
        throw ParameterError("sparse indices must be strictly increasing");
      if (e.value == 0.0 || !std::isfinite(e.value))
        throw ParameterError("sparse values must be finite and nonzero");
      if (flavor_ == Flavor::binary && e.value != 1.0)
        throw ParameterError("binary vector has a value other than 1");
      if (flavor_ == Flavor::nonneg && e.value < 0.0)
        throw ParameterError("nonnegative vector has a negative value");
    }
  }

  std::size_t d_ = 0;
  std::vector<SparseEntry> entries_;
  Flavor flavor_ = Flavor::real;
};

/// Entrywise sum; flavor is the weakest of the two.
inline SparseVector operator+(const SparseVector& x, const SparseVector& z) {
  if (x.dim() != z.dim()) throw ParameterError("dimension mismatch");
  std::vector<SparseEntry> out;
  auto a = x.begin();
  auto b = z.begin();
  while (a != x.end() || b != z.end()) {
    if (b == z.end() || (a != x.end() && a->index < b->index)) {
      out.push_back(*a++);
    } else if (a == x.end() || b->index < a->index) {
      out.push_back(*b++);
    } else {
      double v = a->value + b->value;
      if (v != 0.0) out.push_back({a->index, v});
      ++a;
      ++b;
    }
  }
  Flavor f = (x.flavor() == Flavor::real || z.flavor() == Flavor::real) ? Flavor::real
                                                                         : Flavor::nonneg;
  return SparseVector(x.dim(), std::move(out), f);
}

inline Flavor infer_flavor(const std::vector<SparseEntry>& entries) {
  bool all_one = true;
  bool all_pos = true;
  for (const auto& e : entries) {
    all_one = all_one && e.value == 1.0;
    all_pos = all_pos && e.value > 0.0;
  }
  return all_one ? Flavor::binary : (all_pos ? Flavor::nonneg : Flavor::real);
}

struct HeadTail {
  SparseVector head;
  SparseVector tail;
};

/// Splits x into its best k-term l1 approximation and the residual. The head
/// keeps the k largest |x_i|, ties going to the lower index.
inline HeadTail head_tail(const SparseVector& x, std::size_t k) {
  std::vector<std::size_t> order(x.nnz());
  std::iota(order.begin(), order.end(), 0);
  const auto& e = x.entries();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(e[a].value) > std::abs(e[b].value);
  });
  std::vector<bool> keep(x.nnz(), false);
  for (std::size_t n = 0; n < std::min(k, order.size()); ++n) keep[order[n]] = true;
  std::vector<SparseEntry> head;
  std::vector<SparseEntry> tail;
  for (std::size_t n = 0; n < e.size(); ++n) (keep[n] ? head : tail).push_back(e[n]);
  return {SparseVector(x.dim(), std::move(head), x.flavor()),
          SparseVector(x.dim(), std::move(tail), x.flavor())};
}

// ---------------------------------------------------------------------------
// Text format: the first non-comment line holds the dimension d; each later
// non-empty line is one vector as whitespace-separated `index:value` pairs,
// optionally preceded by a bare target value (libsvm style). Lines starting
// with '#' are ignored. Indices are 0-based.

struct SparseRow {
  std::optional<double> target;
  SparseVector x;
};

struct SparseFile {
  std::size_t d = 0;
  std::vector<SparseRow> rows;
};

namespace detail {

inline double parse_double(const std::string& s, std::size_t line) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParameterError("line " + std::to_string(line) + ": bad number '" + s + "'");
  }
}

inline std::size_t parse_index(const std::string& s, std::size_t line) {
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size() || s.front() == '-') throw std::invalid_argument(s);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw ParameterError("line " + std::to_string(line) + ": bad index '" + s + "'");
  }
}

}  // namespace detail

inline SparseFile read_sparse_file(std::istream& in) {
  SparseFile file;
  bool have_dim = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream tokens(line);
    if (!have_dim) {
      std::string tok;
      tokens >> tok;
      file.d = detail::parse_index(tok, lineno);
      if (tokens >> tok) throw ParameterError("line " + std::to_string(lineno) + ": expected only d");
      have_dim = true;
      continue;
    }
    SparseRow row;
    std::vector<SparseEntry> entries;
    std::string tok;
    bool first_tok = true;
    while (tokens >> tok) {
      auto colon = tok.find(':');
      if (colon == std::string::npos) {
        if (!first_tok) throw ParameterError("line " + std::to_string(lineno) + ": expected index:value");
        row.target = detail::parse_double(tok, lineno);
      } else {
        entries.push_back({detail::parse_index(tok.substr(0, colon), lineno),
                           detail::parse_double(tok.substr(colon + 1), lineno)});
      }
      first_tok = false;
    }
    Flavor f = infer_flavor(entries);
    row.x = SparseVector::from_unsorted(file.d, std::move(entries), f);
    file.rows.push_back(std::move(row));
  }
  if (!have_dim) throw ParameterError("sparse file has no dimension header");
  return file;
}

inline void write_sparse_file(std::ostream& out, const SparseFile& file) {
  out << file.d << '\n';
  auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  for (const auto& row : file.rows) {
    bool first = true;
    if (row.target) {
      out << *row.target;
      first = false;
    }
    for (const auto& e : row.x) {
      if (!first) out << ' ';
      out << e.index << ':' << e.value;
      first = false;
    }
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace sketchnet
