// Copyright 2026 The qdse Authors
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

#include "qdse/bench.hpp"
#include "qdse/circuit.hpp"
#include "qdse/decompose.hpp"
#include "qdse/device.hpp"
#include "qdse/layout.hpp"
#include "qdse/metrics.hpp"
#include "qdse/noise.hpp"
#include "qdse/passes.hpp"
#include "qdse/qasm.hpp"
#include "qdse/rng.hpp"
#include "qdse/routing.hpp"
#include "qdse/topology.hpp"
#include "qdse/transpile.hpp"
