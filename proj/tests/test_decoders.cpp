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


#include <gtest/gtest.h>

#include <cmath>

#include "sketchnet/decoders.hpp"
#include "sketchnet/montecarlo.hpp"
#include "test_support.hpp"

namespace sketchnet {
namespace {

const HashFamily& two_tables() {
  static const HashFamily fam = make_table_family({{0, 0, 1, 1}, {0, 1, 0, 1}});
  return fam;
}

// One coordinate, t columns, each holding the given decode.
SketchMatrix column_values(const std::vector<double>& vals) {
  std::vector<std::vector<std::size_t>> tables(vals.size(), std::vector<std::size_t>{0});
  SketchMatrix y(make_table_family(tables, 1), SketchKind::count);
  for (std::size_t j = 0; j < vals.size(); ++j) y(0, j) = vals[j];
  return y;
}

TEST(DecTest, ReadsHashedCell) {
  SketchMatrix c = count_sketch(SparseVector::from_dense({2, 0, 1, 0}), two_tables());
  EXPECT_EQ(dec(c, 0, 0), 2.0);
  SketchMatrix b = bool_sketch(SparseVector::binary(4, {0}), two_tables());
  EXPECT_EQ(dec(b, 1, 1), 0.0);
  SketchMatrix z = count_sketch(SparseVector(4, {}), two_tables());
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(dec(z, j, i), 0.0);
  EXPECT_THROW(dec(c, 2, 0), ParameterError);
  EXPECT_THROW(dec(c, 0, 4), ParameterError);
}

TEST(DecAndTest, RecoversSingletonAndShowsCollision) {
  SketchMatrix b = bool_sketch(SparseVector::binary(4, {0}), two_tables());
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(dec_and(b, i), i == 0 ? 1 : 0);
  SketchMatrix b2 = bool_sketch(SparseVector::binary(4, {0, 3}), two_tables());
  EXPECT_EQ(dec_and(b2, 1), 1);
}

TEST(DecAndTest, RejectsCountSketch) {
  SketchMatrix c = count_sketch(SparseVector::binary(4, {0}), two_tables());
  EXPECT_THROW(dec_and(c, 0), ModeError);
  EXPECT_THROW(decode(c, 0, DecodeMode::and_), ModeError);
  EXPECT_THROW(eval_linear_from_sketch(SparseVector(4, {}), c, DecodeMode::and_), ModeError);
}

TEST(DecMinTest, HandComputed) {
  SketchMatrix c = count_sketch(SparseVector::from_dense({2, 0, 1, 0}), two_tables());
  EXPECT_EQ(dec_min(c, 0), 2.0);
  EXPECT_EQ(dec_min(column_values({4, -1, 3}), 0), -1.0);
}

TEST(DecMedTest, OddAndEvenColumnCounts) {
  EXPECT_EQ(dec_med(column_values({1.0, 5.0, 1.2}), 0), 1.2);
  EXPECT_EQ(dec_med(column_values({1.0, 3.0}), 0), 2.0);
  EXPECT_EQ(dec_med(column_values({7.0, -1.0, 4.0, 2.0}), 0), 3.0);
  EXPECT_EQ(dec_med(column_values({-2.5}), 0), -2.5);
}

TEST(DecodeModeTest, ParsesNames) {
  EXPECT_EQ(parse_decode_mode("min"), DecodeMode::min);
  EXPECT_EQ(parse_decode_mode("and"), DecodeMode::and_);
  EXPECT_EQ(parse_decode_mode("median"), DecodeMode::median);
  EXPECT_THROW(parse_decode_mode("mean"), ParameterError);
  EXPECT_EQ(to_string(DecodeMode::and_), "and");
}

TEST(EvalLinearTest, HandComputed) {
  SparseVector w = SparseVector::from_dense({0.5, 0, -2, 0});
  SketchMatrix b = bool_sketch(SparseVector::binary(4, {0}), two_tables());
  EXPECT_EQ(eval_linear_from_sketch(w, b, DecodeMode::and_), 0.5);
  EXPECT_EQ(eval_linear_from_sketch(SparseVector(4, {}), b, DecodeMode::and_), 0.0);

  SketchMatrix b2 = bool_sketch(SparseVector::binary(4, {0, 3}), two_tables());
  EXPECT_EQ(eval_linear_from_sketch(SparseVector::from_dense({1, 1, 0, 0}), b2, DecodeMode::and_), 2.0);
  EXPECT_THROW(eval_linear_from_sketch(SparseVector(5, {}), b2, DecodeMode::and_), ParameterError);
}

TEST(SizingTest, RowAndHashCounts) {
  EXPECT_EQ(rows_for_binary(20), 55u);
  EXPECT_EQ(rows_for_binary(10), 28u);
  EXPECT_EQ(rows_for_nonneg(20, 0.1), 82u);
  EXPECT_EQ(rows_for_real(10, 0.1), 887u);
  EXPECT_EQ(hashes_for(30, 0.05), 7u);
  EXPECT_EQ(hashes_for(60, 0.1), 7u);
  EXPECT_EQ(hashes_for(1, 0.9), 1u);
  EXPECT_THROW(hashes_for(0, 0.1), ParameterError);
  EXPECT_THROW(hashes_for(3, 1.0), ParameterError);
  EXPECT_THROW(rows_for_real(3, 0.0), ParameterError);
}

TEST(DecMinTest, NeverUnderestimatesNonnegativeInput) {
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    HashFamily fam = make_hash_family(rng(), 3, 120, 10);
    SparseVector x = testing::random_sparse(120, 25, Flavor::nonneg, rng);
    SketchMatrix y = count_sketch(x, fam);
    for (std::size_t i = 0; i < 120; ++i) {
      const double v = dec_min(y, i);
      EXPECT_GE(v, x[i]);
      // Equality exactly when some column has no other support in i's cell.
      bool isolated = false;
      for (std::size_t j = 0; j < 3 && !isolated; ++j) {
        bool clash = false;
        for (const auto& e : x)
          clash = clash || (e.index != i && fam(j, e.index) == fam(j, i));
        isolated = !clash;
      }
      if (isolated) EXPECT_EQ(v, x[i]);
      else EXPECT_GT(v, x[i]);
    }
  }
}

// Failure rates against the e^{-t} bound with 3-sigma slack, smaller runs than
// the acceptance suite.
TEST(MonteCarloTest, BinaryDecodersMeetBound) {
  for (DecodeMode mode : {DecodeMode::and_, DecodeMode::min}) {
    for (std::size_t t = 1; t <= 5; ++t) {
      MonteCarloConfig cfg;
      cfg.mode = mode;
      cfg.d = 500;
      cfg.k = 10;
      cfg.m = rows_for_binary(10);
      cfg.t = t;
      cfg.trials = 5000;
      cfg.seed = 100 + t;
      MonteCarloResult r = run_montecarlo(cfg);
      EXPECT_LE(r.rate(), r.bound_with_slack()) << to_string(mode) << " t=" << t;
    }
  }
}

TEST(MonteCarloTest, NonnegativeIntervalBound) {
  for (std::size_t t : {1u, 3u, 5u}) {
    MonteCarloConfig cfg;
    cfg.input = Flavor::nonneg;
    cfg.mode = DecodeMode::min;
    cfg.d = 1000;
    cfg.k = 10;
    cfg.epsilon = 0.1;
    cfg.m = rows_for_nonneg(10, 0.1);
    cfg.t = t;
    cfg.trials = 5000;
    cfg.seed = 7 + t;
    MonteCarloResult r = run_montecarlo(cfg);
    EXPECT_LE(r.rate(), r.bound_with_slack()) << "t=" << t;
  }
}

TEST(MonteCarloTest, RealIntervalBound) {
  for (std::size_t t : {1u, 3u}) {
    MonteCarloConfig cfg;
    cfg.input = Flavor::real;
    cfg.mode = DecodeMode::median;
    cfg.d = 5000;
    cfg.k = 5;
    cfg.epsilon = 0.2;
    cfg.m = rows_for_real(5, 0.2);
    cfg.t = t;
    cfg.trials = 3000;
    cfg.seed = 70 + t;
    MonteCarloResult r = run_montecarlo(cfg);
    EXPECT_LE(r.rate(), r.bound_with_slack()) << "t=" << t;
  }
}

// Linear functional of s-sparse weights on k-sparse binary input: the
// sketch-side value equals w.x except with probability at most delta.
TEST(EvalLinearTest, FailureProbabilityAtMostDelta) {
  const std::size_t d = 2000, k = 10, s = 20, trials = 3000;
  const double delta = 0.1;
  const std::size_t t = hashes_for(s, delta);
  const std::size_t m = rows_for_binary(k);
  std::size_t failures = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng(derive_seed(555, trial));
    SparseVector x = random_binary(d, k, rng);
    SparseVector w = testing::random_sparse(d, s, Flavor::real, rng);
    HashFamily fam = make_hash_family(rng(), t, d, m);
    SketchMatrix y = bool_sketch(x, fam);
    double exact = 0;
    for (const auto& e : w) exact += e.value * x[e.index];
    failures += eval_linear_from_sketch(w, y, DecodeMode::and_) != exact;
  }
  const double rate = static_cast<double>(failures) / trials;
  EXPECT_LE(rate, delta + 3 * std::sqrt(delta * (1 - delta) / trials));
}

TEST(MonteCarloTest, RejectsBadConfigAndWritesCsv) {
  MonteCarloConfig cfg;
  cfg.input = Flavor::real;
  cfg.mode = DecodeMode::and_;
  EXPECT_THROW(run_montecarlo(cfg), ModeError);
  cfg = MonteCarloConfig{};
  cfg.t = 0;
  EXPECT_THROW(run_montecarlo(cfg), ParameterError);

  cfg = MonteCarloConfig{};
  cfg.trials = 200;
  cfg.t = 2;
  MonteCarloResult a = run_montecarlo(cfg);
  MonteCarloResult b = run_montecarlo(cfg);
  EXPECT_EQ(a.failures, b.failures);
  std::ostringstream out;
  write_montecarlo_header(out);
  write_montecarlo_row(out, a);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "mode,t,m,trials,failures,rate,bound");
  EXPECT_NE(out.str().find("\nand,2,55,200,"), std::string::npos);
}

TEST(RandomInputTest, GeneratorsHaveRequestedShape) {
  Rng rng(9);
  for (int n = 0; n < 50; ++n) {
    SparseVector x = random_binary(100, 7, rng);
    EXPECT_EQ(x.nnz(), 7u);
    EXPECT_EQ(x.flavor(), Flavor::binary);
    SparseVector z = random_near_sparse(100, 5, 12, 0.7, Flavor::real, rng);
    auto ht = head_tail(z, 5);
    EXPECT_NEAR(ht.tail.l1_norm(), 0.7, 1e-12);
    for (const auto& e : ht.head) EXPECT_GE(std::abs(e.value), 1.0);
  }
}

}  // namespace
}  // namespace sketchnet
