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

#include <functional>
#include <string>
#include <vector>

#include "dudesign/circuit.hpp"
#include "dudesign/ensemble.hpp"
#include "dudesign/io.hpp"

namespace dudesign {

inline constexpr const char *kVersion = "0.1.0";

/// Directory holding the bundled JSON fixtures; DUDESIGN_FIXTURES overrides the built-in path.
std::string fixture_directory();
std::string fixture_path(const std::string &name);

/// Gate sources:
///   kim:J,b,h1,h2          kicked Ising gate
///   cat_map:q              cat-map gate
///   fourier_hadamard:q     hadamard_gate(K, K, K, K) with the Fourier matrix K
///   ueb_gate:q             gate assembled from four generalized Pauli bases (local dim q^2)
///   app_c                  bundled dual-unitary fixture, projected onto dual-unitary gates
///   app_c_unitary          bundled unitary fixture, polar-projected onto unitaries
///   haar_random[:seed[:q]] Haar-random two-site gate (seed defaults to the experiment seed)
///   file:<path>            gate JSON ("kind":"gate") or {"kind":"hadamard_gate","E",..,"H"}
Gate resolve_gate(const std::string &source, uint64_t default_seed = 0);

/// Initial states: computational[:<digits>] (default all zeros), bell_pairs, mps:<path>.
StateVector prepare_initial_state(const std::string &initial, size_t n_sites, size_t q);

/// Schemes: computational, ueb[:<single sites before pairs>] with the generalized Pauli basis.
MeasurementScheme resolve_scheme(const std::string &scheme, size_t q);

struct ExperimentConfig {
    std::string experiment_id = "custom";
    std::string preset = "custom";
    std::string gate = "kim:0.78539816339744828,0.78539816339744828,0.5,0.5";
    std::string initial = "computational";
    std::string scheme = "computational";
    Layout layout = Layout::OddFirst;
    size_t n_a = 4;
    size_t n_b = 12;
    size_t t_min = 1;
    size_t t_max = 6;
    size_t k_max = 4;
    uint64_t seed = 0;
    MomentRepr repr = MomentRepr::Symmetric;
    size_t full_cap = kDefaultFullCap;
    double p_floor = kDefaultProbabilityFloor;

    Json to_json() const;
    /// Keys absent from `j` keep the values of `base`.
    static ExperimentConfig from_json(const Json &j, const ExperimentConfig &base);
    static ExperimentConfig from_json(const Json &j);
};

/// The experiment pairs behind the "fig1" and "fig2" presets; `full` switches the bath from 12 to 16 sites.
std::vector<ExperimentConfig> preset_configs(const std::string &preset, bool full = false);

struct MemoryPlan {
    size_t peak_bytes = 0;
    std::vector<std::string> lines;
};
MemoryPlan estimate_memory(const ExperimentConfig &config);

struct ResultRow {
    std::string experiment_id;
    std::string preset;
    std::string gate;
    std::string scheme;
    size_t n_a = 0;
    size_t n_b = 0;
    size_t q = 0;
    size_t t = 0;
    size_t k = 0;
    double delta = 0.0;
    double dropped_mass = 0.0;
    uint64_t seed = 0;
    double wall_ms = 0.0;
};

using RowCallback = std::function<void(const ResultRow &)>;

/// One row per (t, k) with t_min <= t <= t_max (t = 0 is the initial state) and 1 <= k <= k_max.
std::vector<ResultRow> run_experiment(const ExperimentConfig &config, const RowCallback &on_row = {});

std::string csv_header();
/// With `deterministic`, wall_ms is written as 0 so reruns are byte-identical.
std::string csv_row(const ResultRow &row, bool deterministic);

}  // namespace dudesign
