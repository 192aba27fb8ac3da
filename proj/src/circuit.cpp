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

#include "dudesign/circuit.hpp"

#include <string>

#include "dudesign/error.hpp"

namespace dudesign {

CircuitSpec CircuitSpec::floquet(size_t n_sites, size_t t, Gate gate, Layout layout) {
    CircuitSpec spec;
    spec.n_sites = n_sites;
    spec.q = gate.q();
    spec.t = t;
    spec.layout = layout;
    spec.gates = std::move(gate);
    return spec;
}

CircuitSpec CircuitSpec::random_haar(size_t n_sites, size_t q, size_t t, uint64_t seed, Layout layout) {
    CircuitSpec spec;
    spec.n_sites = n_sites;
    spec.q = q;
    spec.t = t;
    spec.layout = layout;
    spec.seed = seed;
    GaussianSource rng(seed);
    GateTable table(t);
    for (size_t step = 0; step < t; step++) {
        table[step].resize(2);
        for (int layer = 0; layer < 2; layer++) {
            for (size_t k = 0; k < spec.layer_sites(layer).size(); k++) {
                table[step][layer].push_back(Gate::from_matrix(haar_unitary(q * q, rng)));
            }
        }
    }
    spec.gates = std::move(table);
    return spec;
}

std::vector<size_t> CircuitSpec::layer_sites(int layer) const {
    size_t offset = layout == Layout::OddFirst ? 0 : 1;
    if (layer == 1) {
        offset = 1 - offset;
    }
    std::vector<size_t> sites;
    for (size_t s = offset; s + 1 < n_sites; s += 2) {
        sites.push_back(s);
    }
    return sites;
}

const Gate &CircuitSpec::gate_at(size_t step, int layer, size_t k) const {
    if (const auto *g = std::get_if<Gate>(&gates)) {
        return *g;
    }
    const auto &table = std::get<GateTable>(gates);
    if (step >= table.size() || layer < 0 || layer > 1 || static_cast<size_t>(layer) >= table[step].size() ||
        k >= table[step][layer].size()) {
        fail(ErrorKind::Shape, "gate table has no entry for step " + std::to_string(step) + " layer " +
                                   std::to_string(layer) + " gate " + std::to_string(k));
    }
    return table[step][layer][k];
}

void CircuitSpec::validate() const {
    if (q == 0) {
        fail(ErrorKind::InvalidDimension, "circuit local dimension must be positive");
    }
    if (const auto *g = std::get_if<Gate>(&gates)) {
        if (g->q() != q) {
            fail(ErrorKind::DimensionMismatch, "floquet gate dimension differs from circuit q");
        }
        return;
    }
    const auto &table = std::get<GateTable>(gates);
    if (table.size() < t) {
        fail(ErrorKind::Shape, "gate table covers fewer steps than t");
    }
    for (size_t step = 0; step < t; step++) {
        for (int layer = 0; layer < 2; layer++) {
            for (size_t k = 0; k < layer_sites(layer).size(); k++) {
                if (gate_at(step, layer, k).q() != q) {
                    fail(ErrorKind::DimensionMismatch, "gate table entry has the wrong local dimension");
                }
            }
        }
    }
}

void apply_two_site_gate_inplace(StateVector &state, const Gate &gate, size_t site) {
    if (state.n_sites < 2 || site + 1 >= state.n_sites) {
        fail(ErrorKind::SiteOutOfRange,
             "gate site " + std::to_string(site) + " invalid for " + std::to_string(state.n_sites) + " sites");
    }
    if (gate.q() != state.q) {
        fail(ErrorKind::DimensionMismatch, "gate and state local dimensions differ");
    }
    const size_t q = state.q;
    const size_t qq = q * q;
    const size_t inner = ipow(q, state.n_sites - site - 2);
    const size_t outer = ipow(q, site);
    const ComplexMatrix &u = gate.matrix();
    ComplexVector in(qq);
    ComplexVector out(qq);
    cdouble *amps = state.amplitudes.data();
    for (size_t o = 0; o < outer; o++) {
        cdouble *block = amps + o * qq * inner;
        for (size_t i = 0; i < inner; i++) {
            for (size_t k = 0; k < qq; k++) {
                in(k) = block[k * inner + i];
            }
            out.noalias() = u * in;
            for (size_t k = 0; k < qq; k++) {
                block[k * inner + i] = out(k);
            }
        }
    }
}

StateVector apply_two_site_gate(StateVector state, const Gate &gate, size_t site) {
    apply_two_site_gate_inplace(state, gate, site);
    return state;
}

void apply_time_step(StateVector &state, const CircuitSpec &spec, size_t step) {
    for (int layer = 0; layer < 2; layer++) {
        std::vector<size_t> sites = spec.layer_sites(layer);
        for (size_t k = 0; k < sites.size(); k++) {
            apply_two_site_gate_inplace(state, spec.gate_at(step, layer, k), sites[k]);
        }
    }
}

StateVector brickwall_evolve(StateVector state, const CircuitSpec &spec) {
    spec.validate();
    if (spec.n_sites != state.n_sites || spec.q != state.q) {
        fail(ErrorKind::DimensionMismatch, "circuit and state dimensions differ");
    }
    for (size_t step = 0; step < spec.t; step++) {
        apply_time_step(state, spec, step);
    }
    return state;
}

}  // namespace dudesign
