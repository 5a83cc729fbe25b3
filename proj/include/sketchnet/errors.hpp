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

#include <stdexcept>
#include <string>

namespace sketchnet {

/// Invalid sizes, indices or shapes passed to an operation.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// A decode mode was applied to a sketch of the wrong kind.
class ModeError : public std::invalid_argument {
 public:
  explicit ModeError(const std::string& what) : std::invalid_argument(what) {}
};

/// Input has more nonzeros than the sparsity budget allows.
class SparsityError : public std::invalid_argument {
 public:
  explicit SparsityError(const std::string& what) : std::invalid_argument(what) {}
};

/// Requested construction is not defined for the given model.
class CapabilityError : public std::invalid_argument {
 public:
  explicit CapabilityError(const std::string& what) : std::invalid_argument(what) {}
};

/// Per-coordinate estimate is undefined (e.g. an all-zero projection column).
class EstimationError : public std::runtime_error {
 public:
  explicit EstimationError(const std::string& what) : std::runtime_error(what) {}
};

/// Training produced a non-finite loss.
class TrainingError : public std::runtime_error {
 public:
  TrainingError(const std::string& what, int epoch)
      : std::runtime_error(what + " (epoch " + std::to_string(epoch) + ")"), epoch_(epoch) {}
  int epoch() const noexcept { return epoch_; }

 private:
  int epoch_;
};

}  // namespace sketchnet
