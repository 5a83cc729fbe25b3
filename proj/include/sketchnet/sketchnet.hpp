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

#include "sketchnet/bench.hpp"
#include "sketchnet/decoders.hpp"
#include "sketchnet/det_sketch.hpp"
#include "sketchnet/errors.hpp"
#include "sketchnet/gauss_proj.hpp"
#include "sketchnet/hash_family.hpp"
#include "sketchnet/montecarlo.hpp"
#include "sketchnet/net_construct.hpp"
#include "sketchnet/network.hpp"
#include "sketchnet/random.hpp"
#include "sketchnet/sketch.hpp"
#include "sketchnet/sparse_vector.hpp"
#include "sketchnet/synth.hpp"
#include "sketchnet/train.hpp"
