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

// Benchmark grid: tasks x schemes x replicates. Every replicate draws a fresh
// dataset; all schemes of one replicate share it, and schemes with the same
// feature map (kind, m, t, dim) share the same hash family / projector, so
// model types are compared on identical features.
//
// Spec file (JSON):
//   {
//     "seed": 1, "replicates": 5,
//     "data":  { SynthConfig fields },
//     "train": { TrainConfig fields; hidden_units defaults to data.s },
//     "tasks": [ {"name": "linear", "data": {...}}, ... ],
//     "schemes": [ {"kind": "sketch", "m": 166, "t": 6},
//                  {"kind": "sketch", "dim": 1000, "t": 2},   // m = dim / t
//                  {"kind": "gaussian", "dim": 1000},
//                  {"kind": "raw"},
//                  {"kind": "sketch", "m": 200, "t": 6, "model": "linear",
//                   "train": {"learning_rate": 0.01}} ]
//   }
// "model" is one of network (default), linear, constructed. A constructed
// model is the explicit network for the true target, not a trained one.

#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "sketchnet/errors.hpp"
#include "sketchnet/gauss_proj.hpp"
#include "sketchnet/net_construct.hpp"
#include "sketchnet/random.hpp"
#include "sketchnet/synth.hpp"
#include "sketchnet/train.hpp"

namespace sketchnet {

enum class ModelKind { network, linear, constructed };

struct BenchScheme {
  Scheme features;
  ModelKind model = ModelKind::network;
  nlohmann::json train_overrides = nlohmann::json::object();

  std::string label() const {
    switch (model) {
      case ModelKind::network: return features.name();
      case ModelKind::linear: return features.name() + "/linear";
      case ModelKind::constructed: return features.name() + "/constructed";
    }
    return features.name();
  }
};

struct BenchTask {
  std::string name;
  SynthConfig data;
};

struct BenchSpec {
  std::uint64_t seed = 1;
  std::size_t replicates = 1;
  std::vector<BenchTask> tasks;
  std::vector<BenchScheme> schemes;
  TrainConfig train;
  bool hidden_from_data = true;  // hidden_units = data.s unless given
};

struct BenchRow {
  std::string task;
  std::string scheme;
  std::size_t m = 0;
  std::size_t t = 0;
  std::size_t dim = 0;
  std::optional<std::size_t> replicate;  // empty for the mean row
  bool ok = true;
  std::string error;
  double train_mse = 0.0;
  double test_mse = 0.0;
  double runtime_s = 0.0;
};

namespace detail {

inline Scheme parse_scheme(const nlohmann::json& s) {
  const std::string kind = s.at("kind").get<std::string>();
  if (kind == "raw") return Scheme::raw();
  if (kind == "gaussian") return Scheme::gaussian(s.at("dim").get<std::size_t>());
  if (kind == "sketch") {
    const std::size_t t = s.at("t").get<std::size_t>();
    if (t == 0) throw ParameterError("sketch scheme needs t >= 1");
    std::size_t m = s.contains("m") ? s.at("m").get<std::size_t>() : s.at("dim").get<std::size_t>() / t;
    return Scheme::sketch(m, t);
  }
  throw ParameterError("unknown scheme kind '" + kind + "'");
}

inline ModelKind parse_model(const std::string& name) {
  if (name == "network") return ModelKind::network;
  if (name == "linear") return ModelKind::linear;
  if (name == "constructed") return ModelKind::constructed;
  throw ParameterError("unknown model '" + name + "'");
}

inline std::uint64_t feature_seed(std::uint64_t dataset_seed, const Scheme& s) {
  std::uint64_t z = derive_seed(dataset_seed, static_cast<std::uint64_t>(s.kind) + 17);
  z = derive_seed(z, s.m);
  z = derive_seed(z, s.t);
  return derive_seed(z, s.dim);
}

inline Network construct_network(const Dataset& ds, const Featurized& f, const Scheme& s) {
  switch (s.kind) {
    case Scheme::Kind::raw: return build_raw_bool_net(ds.model);
    case Scheme::Kind::sketch: return build_bool_sketch_net(ds.model, *f.family);
    case Scheme::Kind::gaussian: {
      if (!ds.model.is_linear()) throw CapabilityError("Gaussian construction needs a linear target");
      std::vector<double> w(ds.d, 0.0);
      for (const auto& term : ds.model.terms()) w[term.indices.front()] += term.weight;
      return build_gauss_net(SparseVector::from_dense(w), *f.projector);
    }
  }
  throw ParameterError("unknown scheme");
}

}  // namespace detail

inline BenchSpec parse_bench_spec(const nlohmann::json& in, bool paper_scale = false) {
  BenchSpec spec;
  try {
    spec.seed = in.value("seed", std::uint64_t{1});
    spec.replicates = in.value("replicates", std::size_t{1});
    SynthConfig base = paper_scale ? SynthConfig::paper_scale() : SynthConfig::desk_scale();
    if (in.contains("data")) base = synth_config_from_json(in.at("data"), base);
    const nlohmann::json train = in.value("train", nlohmann::json::object());
    spec.train = train_config_from_json(train);
    spec.hidden_from_data = !train.contains("hidden_units");
    if (in.contains("tasks")) {
      for (const auto& t : in.at("tasks")) {
        BenchTask task;
        task.name = t.at("name").get<std::string>();
        task.data = t.contains("data") ? synth_config_from_json(t.at("data"), base) : base;
        spec.tasks.push_back(std::move(task));
      }
    } else {
      spec.tasks.push_back({base.max_term_card == 1 ? "linear" : "polynomial", base});
    }
    for (const auto& s : in.at("schemes")) {
      BenchScheme scheme;
      scheme.features = detail::parse_scheme(s);
      scheme.model = detail::parse_model(s.value("model", std::string("network")));
      scheme.train_overrides = s.value("train", nlohmann::json::object());
      spec.schemes.push_back(std::move(scheme));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed benchmark spec: ") + e.what());
  }
  if (spec.replicates == 0) throw ParameterError("replicates must be positive");
  for (const auto& task : spec.tasks) task.data.validate();
  return spec;
}

using BenchProgress = std::function<void(const BenchRow&)>;

/// Runs every (task, replicate, scheme) cell. A failing cell is recorded as a
/// failed row and the grid continues. Per-task/scheme mean rows follow the
/// replicate rows.
inline std::vector<BenchRow> run_benchmark(const BenchSpec& spec, const BenchProgress& progress = {}) {
  std::vector<BenchRow> rows;
  for (std::size_t ti = 0; ti < spec.tasks.size(); ++ti) {
    const BenchTask& task = spec.tasks[ti];
    std::vector<std::vector<BenchRow>> per_scheme(spec.schemes.size());
    for (std::size_t rep = 0; rep < spec.replicates; ++rep) {
      SynthConfig cfg = task.data;
      cfg.seed = derive_seed(derive_seed(spec.seed, ti), rep);
      Dataset ds = gen_synthetic(cfg);
      std::map<std::tuple<int, std::size_t, std::size_t, std::size_t>, Featurized> cache;
      for (std::size_t si = 0; si < spec.schemes.size(); ++si) {
        const BenchScheme& scheme = spec.schemes[si];
        const Scheme& fs = scheme.features;
        BenchRow row;
        row.task = task.name;
        row.scheme = scheme.label();
        row.m = fs.m;
        row.t = fs.t;
        row.dim = fs.feature_dim(cfg.d);
        row.replicate = rep;
        const auto start = std::chrono::steady_clock::now();
        try {
          auto key = std::make_tuple(static_cast<int>(fs.kind), fs.m, fs.t, fs.dim);
          auto it = cache.find(key);
          if (it == cache.end())
            it = cache.emplace(key, featurize(ds, fs, detail::feature_seed(cfg.seed, fs))).first;
          const Featurized& f = it->second;
          if (scheme.model == ModelKind::constructed) {
            Network net = detail::construct_network(ds, f, fs);
            row.train_mse = network_mse(net, f.features, f.targets, ds.train);
            row.test_mse = network_mse(net, f.features, f.targets, ds.test);
          } else {
            TrainConfig tc = spec.train;
            if (spec.hidden_from_data) tc.hidden_units = cfg.s;
            tc = train_config_from_json(scheme.train_overrides, tc);
            if (scheme.model == ModelKind::linear) tc.hidden_units = 0;
            tc.seed = derive_seed(derive_seed(cfg.seed, tc.seed), si);
            TrainResult r = train_one_layer(f.features, f.targets, ds.train, ds.test, tc);
            row.train_mse = r.train_mse;
            row.test_mse = r.test_mse;
          }
        } catch (const std::exception& e) {
          row.ok = false;
          row.error = e.what();
        }
        row.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (progress) progress(row);
        per_scheme[si].push_back(row);
        rows.push_back(std::move(row));
      }
    }
    for (std::size_t si = 0; si < spec.schemes.size(); ++si) {
      BenchRow mean = per_scheme[si].front();
      mean.replicate.reset();
      mean.train_mse = mean.test_mse = mean.runtime_s = 0.0;
      std::size_t ok = 0;
      for (const auto& r : per_scheme[si]) {
        mean.runtime_s += r.runtime_s;
        if (!r.ok) continue;
        mean.train_mse += r.train_mse;
        mean.test_mse += r.test_mse;
        ++ok;
      }
      mean.ok = ok > 0;
      mean.error.clear();
      if (ok > 0) {
        mean.train_mse /= static_cast<double>(ok);
        mean.test_mse /= static_cast<double>(ok);
      }
      mean.runtime_s /= static_cast<double>(per_scheme[si].size());
      rows.push_back(std::move(mean));
    }
  }
  return rows;
}

inline void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows,
                            bool with_runtime = true) {
  out << "task,scheme,m,t,dim,replicate,train_mse,test_mse,runtime_s\n";
  for (const auto& r : rows) {
    std::ostringstream line;
    line << std::setprecision(6);
    line << r.task << ',' << r.scheme << ',';
    if (r.t > 0) line << r.m << ',' << r.t;
    else line << ',';
    line << ',' << r.dim << ',';
    if (r.replicate) line << *r.replicate;
    else line << "mean";
    if (r.ok) line << ',' << r.train_mse << ',' << r.test_mse;
    else line << ",failed,failed";
    line << ',';
    if (with_runtime) line << std::fixed << std::setprecision(3) << r.runtime_s;
    out << line.str() << '\n';
  }
}

}  // namespace sketchnet
