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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sketchnet/sketchnet.hpp"

using nlohmann::json;
using namespace sketchnet;

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParameterError(path + ": " + e.what());
  }
}

SparseFile read_sparse_path(const std::string& path) {
  if (path == "-") return read_sparse_file(std::cin);
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open " + path);
  return read_sparse_file(in);
}

// Writes to `path`, or stdout when empty or "-".
template <typename F>
void with_output(const std::string& path, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write " + path);
  write(out);
}

Flavor parse_flavor(const std::string& s) {
  if (s == "binary") return Flavor::binary;
  if (s == "nonneg") return Flavor::nonneg;
  if (s == "real") return Flavor::real;
  throw ParameterError("unknown input class '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse-vector sketches, decoders and shallow networks over sketches"};
  app.require_subcommand(1);

  // sketch
  std::string sk_input = "-", sk_out;
  std::uint64_t sk_seed = 1;
  std::size_t sk_t = 1, sk_m = 0;
  bool sk_bool = false;
  auto* sketch = app.add_subcommand("sketch", "Sketch the vectors of a sparse text file");
  sketch->add_option("--input,-i", sk_input, "Sparse vector file ('-' for stdin)");
  sketch->add_option("--seed", sk_seed, "Hash family seed");
  sketch->add_option("--t", sk_t, "Number of hash functions")->check(CLI::PositiveNumber);
  sketch->add_option("--m", sk_m, "Buckets per hash function")->required()->check(CLI::PositiveNumber);
  sketch->add_flag("--bool", sk_bool, "Boolean (OR) sketch instead of count (sum) sketch");
  sketch->add_option("--out,-o", sk_out, "Output JSON file");

  // det-sketch
  std::string ds_input = "-", ds_out;
  std::size_t ds_k = 1;
  auto* det = app.add_subcommand("det-sketch", "Deterministic polynomial sketch of binary vectors");
  det->add_option("--input,-i", ds_input, "Sparse vector file ('-' for stdin)");
  det->add_option("--k", ds_k, "Sparsity budget")->required();
  det->add_option("--out,-o", ds_out, "Output JSON file");

  // montecarlo
  std::size_t mc_d = 1000, mc_k = 20, mc_trials = 10000;
  std::optional<std::size_t> mc_m;
  std::vector<std::size_t> mc_t{1, 2, 3, 4, 5};
  std::string mc_mode = "and", mc_input_cls, mc_out;
  double mc_eps = 0.1, mc_c = 1.0;
  std::uint64_t mc_seed = 1;
  auto* mc = app.add_subcommand("montecarlo", "Empirical per-coordinate decode failure rates");
  mc->add_option("--d", mc_d, "Dimension");
  mc->add_option("--k", mc_k, "Sparsity");
  mc->add_option("--m", mc_m, "Buckets (default from k, epsilon and the input class)");
  mc->add_option("--t", mc_t, "Hash counts, comma separated")->delimiter(',');
  mc->add_option("--trials", mc_trials, "Trials per t");
  mc->add_option("--mode", mc_mode, "Decoder: and | min | median");
  mc->add_option("--input", mc_input_cls, "Input class: binary | nonneg | real (default from mode)");
  mc->add_option("--epsilon", mc_eps, "Interval half-width factor for near-sparse input");
  mc->add_option("--c", mc_c, "Tail l1 mass for near-sparse input");
  mc->add_option("--seed", mc_seed, "Master seed");
  mc->add_option("--out,-o", mc_out, "Output CSV file");

  // build-net
  std::string bn_model, bn_kind = "bool", bn_out;
  std::uint64_t bn_seed = 1;
  std::size_t bn_t = 1, bn_m = 0, bn_k = 0;
  auto* build = app.add_subcommand("build-net", "Construct a network computing a sparse polynomial");
  build->add_option("--model", bn_model, "Model JSON {\"d\":..,\"terms\":[{\"w\":..,\"A\":[..]}]}")->required();
  build->add_option("--kind", bn_kind, "bool | min | det | raw");
  build->add_option("--seed", bn_seed, "Hash family seed (bool, min)");
  build->add_option("--t", bn_t, "Hash functions (bool, min)");
  build->add_option("--m", bn_m, "Buckets (bool, min)");
  build->add_option("--k", bn_k, "Sparsity budget (det)");
  build->add_option("--out,-o", bn_out, "Output network JSON");

  // gen
  std::string gen_config, gen_out, gen_model_out;
  bool gen_paper = false;
  std::optional<std::uint64_t> gen_seed;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic regression dataset");
  gen->add_option("--config", gen_config, "JSON with data config fields");
  gen->add_option("--seed", gen_seed, "Dataset seed");
  gen->add_flag("--paper-scale", gen_paper, "Start from the large configuration");
  gen->add_option("--out,-o", gen_out, "Output sparse text file")->required();
  gen->add_option("--model-out", gen_model_out, "Also write the generating model JSON");

  // bench
  std::string bench_spec, bench_out;
  bool bench_paper = false, bench_quiet = false;
  auto* bench = app.add_subcommand("bench", "Run a benchmark grid and write a CSV report");
  bench->add_option("--spec", bench_spec, "Benchmark spec JSON")->required();
  bench->add_option("--out,-o", bench_out, "Output CSV file");
  bench->add_flag("--paper-scale", bench_paper, "Use the large data configuration as the base");
  bench->add_flag("--quiet,-q", bench_quiet, "No per-cell progress on stderr");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sketch) {
      SparseFile file = read_sparse_path(sk_input);
      HashFamily fam = make_hash_family(sk_seed, sk_t, file.d, sk_m);
      json out = json::array();
      for (const auto& row : file.rows) out.push_back(sk_bool ? bool_sketch(row.x, fam) : count_sketch(row.x, fam));
      with_output(sk_out, [&](std::ostream& os) { os << out.dump(2) << '\n'; });
    } else if (*det) {
      SparseFile file = read_sparse_path(ds_input);
      json out = json::array();
      for (const auto& row : file.rows) out.push_back(det_sketch(row.x, ds_k));
      with_output(ds_out, [&](std::ostream& os) { os << out.dump(2) << '\n'; });
    } else if (*mc) {
      MonteCarloConfig cfg;
      cfg.mode = parse_decode_mode(mc_mode);
      if (mc_input_cls.empty()) cfg.input = cfg.mode == DecodeMode::median ? Flavor::real : Flavor::binary;
      else cfg.input = parse_flavor(mc_input_cls);
      cfg.d = mc_d;
      cfg.k = mc_k;
      cfg.trials = mc_trials;
      cfg.epsilon = mc_eps;
      cfg.c = mc_c;
      cfg.seed = mc_seed;
      if (mc_m) cfg.m = *mc_m;
      else if (cfg.input == Flavor::binary) cfg.m = rows_for_binary(cfg.k);
      else if (cfg.input == Flavor::nonneg) cfg.m = rows_for_nonneg(cfg.k, cfg.epsilon);
      else cfg.m = rows_for_real(cfg.k, cfg.epsilon);
      with_output(mc_out, [&](std::ostream& os) {
        write_montecarlo_header(os);
        for (std::size_t t : mc_t) {
          cfg.t = t;
          write_montecarlo_row(os, run_montecarlo(cfg));
        }
      });
    } else if (*build) {
      SparsePolynomialModel model = model_from_json(read_json_file(bn_model));
      Network net;
      if (bn_kind == "raw") {
        net = build_raw_bool_net(model);
      } else if (bn_kind == "det") {
        if (bn_k == 0) throw ParameterError("--k is required for det networks");
        net = build_det_net(model, bn_k);
      } else if (bn_kind == "bool" || bn_kind == "min") {
        if (bn_m == 0) throw ParameterError("--m is required for sketch networks");
        HashFamily fam = make_hash_family(bn_seed, bn_t, model.dim(), bn_m);
        net = bn_kind == "bool" ? build_bool_sketch_net(model, fam) : build_min_sketch_net(model, fam);
      } else {
        throw ParameterError("unknown network kind '" + bn_kind + "'");
      }
      json out = net;
      with_output(bn_out, [&](std::ostream& os) { os << out.dump(2) << '\n'; });
    } else if (*gen) {
      SynthConfig cfg = gen_paper ? SynthConfig::paper_scale() : SynthConfig::desk_scale();
      if (!gen_config.empty()) cfg = synth_config_from_json(read_json_file(gen_config), cfg);
      if (gen_seed) cfg.seed = *gen_seed;
      Dataset ds = gen_synthetic(cfg);
      SparseFile file;
      file.d = ds.d;
      for (const auto& ex : ds.examples) file.rows.push_back({ex.target, ex.x});
      with_output(gen_out, [&](std::ostream& os) { write_sparse_file(os, file); });
      if (!gen_model_out.empty()) {
        json model = ds.model;
        model["relevant"] = ds.relevant;
        model["train"] = ds.train;
        model["test"] = ds.test;
        with_output(gen_model_out, [&](std::ostream& os) { os << model.dump() << '\n'; });
      }
    } else if (*bench) {
      BenchSpec spec = parse_bench_spec(read_json_file(bench_spec), bench_paper);
      BenchProgress progress;
      if (!bench_quiet) {
        progress = [](const BenchRow& r) {
          std::cerr << r.task << ' ' << r.scheme << " dim=" << r.dim << " rep=" << r.replicate.value_or(0)
                    << (r.ok ? " test_mse=" + std::to_string(r.test_mse) : " FAILED: " + r.error) << " ("
                    << r.runtime_s << " s)\n";
        };
      }
      auto rows = run_benchmark(spec, progress);
      with_output(bench_out, [&](std::ostream& os) { write_bench_csv(os, rows); });
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
