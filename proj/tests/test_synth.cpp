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

#include <algorithm>
#include <set>

#include "sketchnet/synth.hpp"

namespace sketchnet {
namespace {

SynthConfig small_config() {
  SynthConfig c;
  c.d = 300;
  c.k = 12;
  c.s = 15;
  c.n = 2000;
  c.relevant_size = 10;
  c.per_example_relevant = 4;
  c.seed = 21;
  return c;
}

TEST(SynthConfigTest, PaperScaleValues) {
  SynthConfig c = SynthConfig::paper_scale();
  EXPECT_EQ(c.d, 10000u);
  EXPECT_EQ(c.k, 50u);
  EXPECT_EQ(c.s, 300u);
  EXPECT_EQ(c.n, 200000u);
  EXPECT_EQ(c.relevant_size, 50u);
  EXPECT_EQ(c.per_example_relevant, 12u);
  EXPECT_DOUBLE_EQ(c.noise_sd, 0.05);
  EXPECT_NO_THROW(c.validate());
}

TEST(SynthConfigTest, RejectsInconsistentSizes) {
  SynthConfig c = small_config();
  c.relevant_size = 400;
  EXPECT_THROW(gen_synthetic(c), ParameterError);
  c = small_config();
  c.per_example_relevant = 13;
  EXPECT_THROW(gen_synthetic(c), ParameterError);
  c = small_config();
  c.max_term_card = 4;
  EXPECT_THROW(gen_synthetic(c), ParameterError);
  c = small_config();
  c.min_term_card = 3;
  c.max_term_card = 2;
  EXPECT_THROW(gen_synthetic(c), ParameterError);
}

TEST(GenSyntheticTest, StructureOfEveryExample) {
  for (std::size_t card : {1u, 3u}) {
    SynthConfig c = small_config();
    c.max_term_card = card;
    Dataset ds = gen_synthetic(c);
    ASSERT_EQ(ds.examples.size(), c.n);
    EXPECT_EQ(ds.relevant.size(), c.relevant_size);
    std::set<std::size_t> rel(ds.relevant.begin(), ds.relevant.end());
    EXPECT_EQ(rel.size(), c.relevant_size);
    for (const auto& t : ds.model.terms()) {
      EXPECT_LE(t.indices.size(), card);
      for (std::size_t i : t.indices) EXPECT_TRUE(rel.count(i));
    }
    EXPECT_EQ(ds.model.terms().size(), c.s);
    for (const auto& ex : ds.examples) {
      EXPECT_EQ(ex.x.nnz(), c.k);
      EXPECT_TRUE(ex.x.is_binary());
      std::size_t hits = 0;
      for (std::size_t i : ex.x.support()) hits += rel.count(i);
      EXPECT_GE(hits, c.per_example_relevant);
    }
  }
}

TEST(GenSyntheticTest, NoiselessTargetsEqualModel) {
  SynthConfig c = small_config();
  c.noise_sd = 0.0;
  c.max_term_card = 2;
  Dataset ds = gen_synthetic(c);
  for (const auto& ex : ds.examples) {
    double g = 0;
    for (const auto& t : ds.model.terms()) {
      bool on = true;
      for (std::size_t i : t.indices) on = on && ex.x[i] == 1.0;
      g += on ? t.weight : 0.0;
    }
    EXPECT_EQ(ex.target, g);
  }
}

TEST(GenSyntheticTest, NoiseHasRequestedSpread) {
  SynthConfig c = small_config();
  c.n = 20000;
  c.noise_sd = 0.3;
  Dataset ds = gen_synthetic(c);
  double sum = 0, sum_sq = 0;
  for (const auto& ex : ds.examples) {
    double r = ex.target - ds.model(ex.x);
    sum += r;
    sum_sq += r * r;
  }
  const double mean = sum / c.n;
  EXPECT_NEAR(mean, 0.0, 4 * 0.3 / std::sqrt(c.n));
  EXPECT_NEAR(std::sqrt(sum_sq / c.n - mean * mean), 0.3, 0.01);
}

TEST(GenSyntheticTest, SplitIsDisjointAndExhaustive) {
  Dataset ds = gen_synthetic(small_config());
  EXPECT_EQ(ds.train.size(), 1800u);
  EXPECT_EQ(ds.test.size(), 200u);
  std::vector<std::size_t> all = ds.train;
  all.insert(all.end(), ds.test.begin(), ds.test.end());
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i) ASSERT_EQ(all[i], i);
}

TEST(GenSyntheticTest, SeedDeterminesDataset) {
  Dataset a = gen_synthetic(small_config());
  Dataset b = gen_synthetic(small_config());
  SynthConfig other = small_config();
  other.seed = 22;
  Dataset c = gen_synthetic(other);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.model.terms(), b.model.terms());
  for (std::size_t n = 0; n < a.examples.size(); ++n) {
    ASSERT_EQ(a.examples[n].x, b.examples[n].x);
    ASSERT_EQ(a.examples[n].target, b.examples[n].target);
  }
  EXPECT_NE(a.relevant, c.relevant);
}

TEST(FeaturizeTest, FeatureDimensions) {
  SynthConfig c = small_config();
  c.n = 50;
  Dataset ds = gen_synthetic(c);
  EXPECT_EQ(featurize(ds, Scheme::sketch(200, 6), 1).features.dim(), 1200u);
  EXPECT_EQ(featurize(ds, Scheme::raw(), 1).features.dim(), 300u);
  EXPECT_EQ(featurize(ds, Scheme::gaussian(1000), 1).features.dim(), 1000u);
  EXPECT_EQ(Scheme::sketch(166, 6).feature_dim(2000), 996u);
}

TEST(FeaturizeTest, RowsMatchSketchAndProjection) {
  SynthConfig c = small_config();
  c.n = 40;
  Dataset ds = gen_synthetic(c);
  Featurized sk = featurize(ds, Scheme::sketch(30, 4), 5);
  ASSERT_TRUE(sk.family.has_value());
  Featurized gp = featurize(ds, Scheme::gaussian(25), 6);
  ASSERT_TRUE(gp.projector.has_value());
  Featurized raw = featurize(ds, Scheme::raw(), 0);
  for (std::size_t r = 0; r < ds.examples.size(); ++r) {
    const SparseVector& x = ds.examples[r].x;
    SketchMatrix y = bool_sketch(x, *sk.family);
    std::vector<double> expect(y.flat().begin(), y.flat().end());
    EXPECT_EQ(sk.features.row_dense(r), expect);
    std::vector<double> proj = gaussian_project(x, *gp.projector);
    std::vector<double> got = gp.features.row_dense(r);
    for (std::size_t j = 0; j < proj.size(); ++j) EXPECT_FLOAT_EQ(static_cast<float>(proj[j]), got[j]);
    EXPECT_EQ(raw.features.row_dense(r), x.to_dense());
    EXPECT_EQ(sk.targets[r], ds.examples[r].target);
  }
}

TEST(SynthConfigTest, JsonOverlay) {
  nlohmann::json j = {{"d", 500}, {"max_term_card", 3}, {"min_term_card", 2}};
  SynthConfig c = synth_config_from_json(j, SynthConfig::paper_scale());
  EXPECT_EQ(c.d, 500u);
  EXPECT_EQ(c.k, 50u);
  EXPECT_EQ(c.min_term_card, 2u);
  nlohmann::json back = c;
  EXPECT_EQ(back.at("max_term_card").get<std::size_t>(), 3u);
  EXPECT_THROW(synth_config_from_json(nlohmann::json{{"d", "many"}}), ParameterError);
}

}  // namespace
}  // namespace sketchnet
