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

#include <sstream>

#include "sketchnet/bench.hpp"

namespace sketchnet {
namespace {

nlohmann::json tiny_spec() {
  return nlohmann::json::parse(R"({
    "seed": 5, "replicates": 2,
    "data": {"d": 200, "k": 10, "s": 8, "n": 600, "relevant_size": 8, "per_example_relevant": 3},
    "train": {"epochs": 3},
    "tasks": [{"name": "linear"},
              {"name": "polynomial", "data": {"min_term_card": 2, "max_term_card": 3}}],
    "schemes": [{"kind": "sketch", "m": 30, "t": 3},
                {"kind": "sketch", "dim": 90, "t": 3, "model": "linear"},
                {"kind": "gaussian", "dim": 40},
                {"kind": "gaussian", "dim": 40, "model": "constructed"},
                {"kind": "raw", "train": {"epochs": 1}}]
  })");
}

std::string csv(const std::vector<BenchRow>& rows, bool runtime) {
  std::ostringstream out;
  write_bench_csv(out, rows, runtime);
  return out.str();
}

TEST(BenchSpecTest, ParsesDefaultsAndOverrides) {
  BenchSpec spec = parse_bench_spec(tiny_spec());
  EXPECT_EQ(spec.seed, 5u);
  EXPECT_EQ(spec.replicates, 2u);
  ASSERT_EQ(spec.tasks.size(), 2u);
  EXPECT_EQ(spec.tasks[1].data.max_term_card, 3u);
  EXPECT_EQ(spec.tasks[1].data.d, 200u);
  ASSERT_EQ(spec.schemes.size(), 5u);
  EXPECT_EQ(spec.schemes[1].features.m, 30u);
  EXPECT_EQ(spec.schemes[1].label(), "sketch/linear");
  EXPECT_EQ(spec.schemes[3].label(), "gaussian/constructed");
  EXPECT_TRUE(spec.hidden_from_data);
  EXPECT_EQ(spec.train.epochs, 3u);

  BenchSpec paper = parse_bench_spec(nlohmann::json::parse(R"({"schemes": [{"kind": "raw"}]})"), true);
  EXPECT_EQ(paper.tasks.at(0).data.d, 10000u);
  EXPECT_EQ(paper.tasks.at(0).name, "linear");

  EXPECT_THROW(parse_bench_spec(nlohmann::json::parse(R"({"schemes": [{"kind": "fourier"}]})")), ParameterError);
  EXPECT_THROW(parse_bench_spec(nlohmann::json::parse(R"({"schemes": [{"kind": "sketch", "m": 3}]})")), ParameterError);
  EXPECT_THROW(parse_bench_spec(nlohmann::json::parse(R"({"replicates": 0, "schemes": []})")), ParameterError);
}

TEST(BenchRunTest, DeterministicAndMarksFailedCells) {
  BenchSpec spec = parse_bench_spec(tiny_spec());
  std::size_t seen = 0;
  std::vector<BenchRow> a = run_benchmark(spec, [&](const BenchRow&) { ++seen; });
  std::vector<BenchRow> b = run_benchmark(spec);
  EXPECT_EQ(seen, 2u * 2u * 5u);
  ASSERT_EQ(a.size(), 2u * (2u * 5u + 5u));
  EXPECT_EQ(csv(a, false), csv(b, false));

  for (const auto& r : a) {
    const bool poly_gauss_construct = r.task == "polynomial" && r.scheme == "gaussian/constructed";
    EXPECT_EQ(r.ok, !poly_gauss_construct) << r.task << ' ' << r.scheme;
    if (!r.ok && r.replicate) {
      EXPECT_NE(r.error.find("linear"), std::string::npos);
    }
  }
  std::string text = csv(a, true);
  EXPECT_EQ(text.substr(0, text.find('\n')), "task,scheme,m,t,dim,replicate,train_mse,test_mse,runtime_s");
  EXPECT_NE(text.find("\npolynomial,gaussian/constructed,,,40,0,failed,failed,"), std::string::npos);
  EXPECT_NE(text.find("\npolynomial,gaussian/constructed,,,40,mean,failed,failed,"), std::string::npos);
  EXPECT_NE(text.find("\nlinear,sketch,30,3,90,1,"), std::string::npos);
  EXPECT_NE(text.find("\nlinear,raw,,,200,mean,"), std::string::npos);
}

TEST(BenchRunTest, ModelKindsShareFeatures) {
  nlohmann::json j = tiny_spec();
  j["replicates"] = 1;
  j["tasks"] = nlohmann::json::array({{{"name", "linear"}, {"data", {{"noise_sd", 0.0}}}}});
  j["schemes"] = nlohmann::json::parse(R"([
      {"kind": "sketch", "m": 60, "t": 4, "model": "constructed"},
      {"kind": "raw", "model": "constructed"}])");
  std::vector<BenchRow> rows = run_benchmark(parse_bench_spec(j));
  // Noiseless raw construction is exact; the sketch one fails only on collisions.
  EXPECT_NEAR(rows[1].test_mse, 0.0, 1e-20);
  EXPECT_LT(rows[0].test_mse, 0.05);
}

// Desk-scale linear task, matched sketch features: the explicit network bounds
// what training reaches, and nothing beats the noise floor.
TEST(BenchRunTest, ConstructionBoundsTrainingAndNoiseFloorHolds) {
  nlohmann::json j = {
      {"seed", 3},
      {"schemes", nlohmann::json::parse(R"([
          {"kind": "sketch", "m": 166, "t": 6},
          {"kind": "sketch", "m": 166, "t": 6, "model": "constructed"}])")}};
  BenchSpec spec = parse_bench_spec(j);
  std::vector<BenchRow> rows = run_benchmark(spec);
  ASSERT_TRUE(rows[0].ok && rows[1].ok);
  const double sigma2 = 0.05 * 0.05;
  EXPECT_LE(rows[1].test_mse, rows[0].test_mse + 0.01);
  EXPECT_GE(rows[0].test_mse, 0.8 * sigma2);
  EXPECT_GE(rows[1].test_mse, 0.8 * sigma2);
}

TEST(BenchRunTest, PaperScaleNoiseFloor) {
  nlohmann::json j = {
      {"seed", 9},
      {"train", {{"hidden_units", 60}, {"epochs", 3}}},
      {"schemes", nlohmann::json::parse(R"([{"kind": "raw"}, {"kind": "raw", "model": "constructed"}])")}};
  std::vector<BenchRow> rows = run_benchmark(parse_bench_spec(j, true));
  ASSERT_TRUE(rows[0].ok && rows[1].ok);
  const double sigma2 = 0.05 * 0.05;
  EXPECT_GE(rows[0].test_mse, 0.8 * sigma2);
  EXPECT_GE(rows[1].test_mse, 0.8 * sigma2);
  EXPECT_LE(rows[1].test_mse, 1.2 * sigma2);
}

}  // namespace
}  // namespace sketchnet
