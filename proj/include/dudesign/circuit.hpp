// Copyright 2026 The dudesign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "dudesign/biunitary.hpp"
#include "dudesign/states.hpp"

namespace dudesign {

/// Which pair layer acts first within a time step. Sites are 0-based here:
/// OddFirst starts with pairs (0,1),(2,3),... (sites 1-2, 3-4 in 1-based counting),
/// EvenFirst with (1,2),(3,4),...
enum class Layout { OddFirst, EvenFirst };

/// gates[step][layer][k] is the k-th gate (from the left) of that layer.
using GateTable = std::vector<std::vector<std::vector<Gate>>>;

struct CircuitSpec {
    size_t n_sites = 0;
    size_t q = 0;
    size_t t = 0;
    Layout layout = Layout::OddFirst;
    std::variant<Gate, GateTable> gates;
    uint64_t seed = 0;

    static CircuitSpec floquet(size_t n_sites, size_t t, Gate gate, Layout layout = Layout::OddFirst);
    /// Independent Haar-random two-site gates at every location, drawn from `seed`.
    static CircuitSpec random_haar(size_t n_sites, size_t q, size_t t, uint64_t seed, Layout layout = Layout::OddFirst);

    /// Left sites of the gates in layer 0 or 1 of a time step.
    std::vector<size_t> layer_sites(int layer) const;
    const Gate &gate_at(size_t step, int layer, size_t k) const;
    void validate() const;
};

/// Applies `gate` to sites (site, site+1), 0-based.
void apply_two_site_gate_inplace(StateVector &state, const Gate &gate, size_t site);
StateVector apply_two_site_gate(StateVector state, const Gate &gate, size_t site);

/// One full time step (two layers) with the gates of step `step`.
void apply_time_step(StateVector &state, const CircuitSpec &spec, size_t step);

StateVector brickwall_evolve(StateVector state, const CircuitSpec &spec);

}  // namespace dudesign
