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
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sketchnet/errors.hpp"

namespace sketchnet {

/// Hidden-unit nonlinearity.
///   relu:   max(0, sum w*in + bias)
///   min:    min over listed inputs of w*in (bias ignored)
///   linear: sum w*in + bias (used for plain linear models)
enum class UnitKind { relu, min, linear };

inline std::string_view to_string(UnitKind kind) {
  switch (kind) {
    case UnitKind::relu: return "relu";
    case UnitKind::min: return "min";
    case UnitKind::linear: return "linear";
  }
  return "?";
}

inline UnitKind parse_unit_kind(std::string_view name) {
  if (name == "relu") return UnitKind::relu;
  if (name == "min") return UnitKind::min;
  if (name == "linear") return UnitKind::linear;
  throw ParameterError("unknown unit kind '" + std::string(name) + "'");
}

struct InputWeight {
  std::size_t index = 0;
  double weight = 0.0;
  friend bool operator==(const InputWeight&, const InputWeight&) = default;
};

struct HiddenUnit {
  std::vector<InputWeight> weights;
  double bias = 0.0;
  UnitKind kind = UnitKind::relu;
  friend bool operator==(const HiddenUnit&, const HiddenUnit&) = default;
};

struct OutputWeight {
  std::size_t unit = 0;
  double weight = 0.0;
  friend bool operator==(const OutputWeight&, const OutputWeight&) = default;
};

/// One-hidden-layer network with sparse per-unit input weights and a linear
/// output layer.
struct Network {
  std::size_t input_dim = 0;
  std::vector<HiddenUnit> hidden;
  std::vector<OutputWeight> output;
  double output_bias = 0.0;

  std::size_t nonzero_input_weights() const {
    std::size_t n = 0;
    for (const auto& u : hidden)
      for (const auto& w : u.weights) n += (w.weight != 0.0);
    return n;
  }

  void validate() const {
    for (const auto& u : hidden) {
      if (u.kind == UnitKind::min && u.weights.empty())
        throw ParameterError("min unit needs at least one input");
      for (const auto& w : u.weights)
        if (w.index >= input_dim) throw ParameterError("unit input index out of range");
    }
    for (const auto& o : output)
      if (o.unit >= hidden.size()) throw ParameterError("output references a missing unit");
  }

  friend bool operator==(const Network&, const Network&) = default;
};

inline double eval_unit(const HiddenUnit& u, std::span<const double> input) {
  if (u.kind == UnitKind::min) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& w : u.weights) best = std::min(best, w.weight * input[w.index]);
    return u.weights.empty() ? 0.0 : best;
  }
  double z = u.bias;
  for (const auto& w : u.weights) z += w.weight * input[w.index];
  return u.kind == UnitKind::relu ? std::max(0.0, z) : z;
}

inline double eval_network(const Network& net, std::span<const double> input) {
  if (input.size() != net.input_dim) {
    throw ParameterError("network input has length " + std::to_string(input.size()) +
                         ", expected " + std::to_string(net.input_dim));
  }
  std::vector<double> act(net.hidden.size());
  for (std::size_t u = 0; u < net.hidden.size(); ++u) act[u] = eval_unit(net.hidden[u], input);
  double out = net.output_bias;
  for (const auto& o : net.output) out += o.weight * act.at(o.unit);
  return out;
}

inline void to_json(nlohmann::json& out, const Network& net) {
  nlohmann::json units = nlohmann::json::array();
  for (const auto& u : net.hidden) {
    nlohmann::json weights = nlohmann::json::array();
    for (const auto& w : u.weights) weights.push_back({w.index, w.weight});
    units.push_back({{"kind", to_string(u.kind)}, {"bias", u.bias}, {"weights", weights}});
  }
  nlohmann::json output = nlohmann::json::array();
  for (const auto& o : net.output) output.push_back({o.unit, o.weight});
  out = nlohmann::json{{"input_dim", net.input_dim},
                       {"units", units},
                       {"output", output},
                       {"output_bias", net.output_bias}};
}

inline Network network_from_json(const nlohmann::json& in) {
  Network net;
  try {
    net.input_dim = in.at("input_dim").get<std::size_t>();
    for (const auto& u : in.at("units")) {
      HiddenUnit unit;
      unit.kind = parse_unit_kind(u.at("kind").get<std::string>());
      unit.bias = u.at("bias").get<double>();
      for (const auto& w : u.at("weights"))
        unit.weights.push_back({w.at(0).get<std::size_t>(), w.at(1).get<double>()});
      net.hidden.push_back(std::move(unit));
    }
    for (const auto& o : in.at("output"))
      net.output.push_back({o.at(0).get<std::size_t>(), o.at(1).get<double>()});
    net.output_bias = in.value("output_bias", 0.0);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed network JSON: ") + e.what());
  }
  net.validate();
  return net;
}

}  // namespace sketchnet
