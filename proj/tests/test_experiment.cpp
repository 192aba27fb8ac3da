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

#include <doctest.h>

#include <numbers>

#include "dudesign/experiment.hpp"
#include "testing.hpp"

using namespace dudesign;
using dudesign::testing::error_kind_of;

TEST_CASE("gate sources") {
    const double pi4 = std::numbers::pi / 4;
    CHECK(resolve_gate("kim:0.78539816339744828,0.78539816339744828,0.5,0.5") == kim_gate(pi4, pi4, 0.5, 0.5).gate());
    CHECK(resolve_gate("cat_map:3").q() == 3);
    CHECK(resolve_gate("ueb_gate:2").q() == 4);
    CHECK(is_dual_unitary(resolve_gate("fourier_hadamard:5")));
    CHECK(resolve_gate("haar_random", 4) == resolve_gate("haar_random:4"));
    CHECK(resolve_gate("haar_random:4:3").q() == 3);
    CHECK(error_kind_of([] { resolve_gate("kim:1,2"); }) == ErrorKind::Parse);
    CHECK(error_kind_of([] { resolve_gate("cat_map:x"); }) == ErrorKind::Parse);
    CHECK(error_kind_of([] { resolve_gate("spiral"); }) == ErrorKind::Parse);
}

TEST_CASE("bundled fixtures") {
    Gate raw = gate_from_json(read_json_file(fixture_path("app_c_dual_unitary.json")));
    CHECK(check_dual_unitary(raw, 5e-4).ok);
    CHECK_FALSE(check_dual_unitary(raw, 1e-10).ok);
    Gate projected = resolve_gate("app_c");
    CHECK(check_unitary(projected).ok);
    CHECK(check_dual_unitary(projected).ok);
    CHECK(max_abs(projected.matrix() - raw.matrix()) < 5e-4);

    Gate unitary_raw = gate_from_json(read_json_file(fixture_path("app_c_unitary.json")));
    CHECK(check_unitary(unitary_raw, 5e-4).ok);
    CHECK_FALSE(check_dual_unitary(resolve_gate("app_c_unitary")).ok);

    CHECK(is_ueb(ueb_from_json(read_json_file(fixture_path("pauli_ueb.json"))).members()));
    CHECK(is_solvable_mps(mps_from_json(read_json_file(fixture_path("bell_mps.json")))));
}

TEST_CASE("initial states and schemes") {
    StateVector zeros = prepare_initial_state("computational", 4, 2);
    CHECK(zeros.amplitudes(0) == cdouble(1.0));
    StateVector digits = prepare_initial_state("computational:0110", 4, 2);
    CHECK(digits.amplitudes(6) == cdouble(1.0));
    CHECK(error_kind_of([] { prepare_initial_state("computational:01", 4, 2); }) == ErrorKind::Shape);
    StateVector bell = prepare_initial_state("bell_pairs", 4, 2);
    CHECK(std::abs(bell.amplitudes(0b0011) - 0.5) < 1e-15);
    StateVector from_file = prepare_initial_state("mps:" + fixture_path("bell_mps.json"), 4, 2);
    CHECK(max_abs(from_file.amplitudes - bell.amplitudes) < 1e-15);
    CHECK(error_kind_of([] { prepare_initial_state("ghz", 4, 2); }) == ErrorKind::Parse);

    CHECK(resolve_scheme("computational", 2).kind == MeasurementScheme::Kind::SingleSiteComputational);
    MeasurementScheme ueb = resolve_scheme("ueb:1", 2);
    CHECK(ueb.kind == MeasurementScheme::Kind::TwoSiteUeb);
    CHECK(ueb.single_sites_before_pairs == 1);
    CHECK(error_kind_of([] { resolve_scheme("bell", 2); }) == ErrorKind::Parse);
}

TEST_CASE("config JSON round-trip and overrides") {
    ExperimentConfig c;
    c.experiment_id = "x";
    c.layout = Layout::EvenFirst;
    c.n_b = 6;
    c.repr = MomentRepr::Full;
    ExperimentConfig back = ExperimentConfig::from_json(c.to_json());
    CHECK(back.to_json() == c.to_json());
    ExperimentConfig partial = ExperimentConfig::from_json(Json{{"N_B", 3}}, c);
    CHECK(partial.n_b == 3);
    CHECK(partial.experiment_id == "x");
    CHECK(error_kind_of([] { ExperimentConfig::from_json(Json{{"repr", "dense"}}); }) == ErrorKind::Parse);
}

TEST_CASE("presets") {
    auto fig1 = preset_configs("fig1");
    REQUIRE(fig1.size() == 2);
    CHECK(fig1[0].n_a == 4);
    CHECK(fig1[0].n_b == 12);
    CHECK(fig1[1].gate == "haar_random");
    auto fig2 = preset_configs("fig2", true);
    REQUIRE(fig2.size() == 2);
    CHECK(fig2[0].n_b == 16);
    CHECK(fig2[0].scheme == "ueb:1");
    CHECK(error_kind_of([] { preset_configs("fig3"); }) == ErrorKind::Parse);
}

TEST_CASE("memory plan grows with the bath") {
    ExperimentConfig small;
    small.n_b = 6;
    ExperimentConfig large;
    large.n_b = 12;
    CHECK(estimate_memory(small).peak_bytes < estimate_memory(large).peak_bytes);
    CHECK(estimate_memory(large).lines.size() == 1 + large.k_max);
}

TEST_CASE("t_max = 0 reports the initial state") {
    ExperimentConfig c;
    c.n_a = 2;
    c.n_b = 3;
    c.t_min = 0;
    c.t_max = 0;
    c.k_max = 3;
    auto rows = run_experiment(c);
    REQUIRE(rows.size() == 3);
    // A product state gives one pure entry: Delta^(k) = 1 - 1/dim Sym^k(C^4).
    for (const auto &row : rows) {
        CHECK(row.t == 0);
        CHECK(row.delta == doctest::Approx(1.0 - 1.0 / double(symmetric_dimension(4, row.k))).epsilon(1e-12));
    }
}

TEST_CASE("run_experiment matches a direct computation") {
    ExperimentConfig c;
    c.gate = "app_c";
    c.initial = "bell_pairs";
    c.scheme = "ueb:1";
    c.layout = Layout::EvenFirst;
    c.n_a = 2;
    c.n_b = 6;
    c.t_min = 2;
    c.t_max = 3;
    c.k_max = 2;
    std::vector<ResultRow> streamed;
    auto rows = run_experiment(c, [&](const ResultRow &r) { streamed.push_back(r); });
    REQUIRE(rows.size() == 4);
    CHECK(streamed.size() == 4);

    Gate g = resolve_gate("app_c");
    StateVector s = prepare_initial_state("bell_pairs", 8, 2);
    s = brickwall_evolve(s, CircuitSpec::floquet(8, 3, g, Layout::EvenFirst));
    ProjectedEnsemble ens = project_ensemble(s, 2, MeasurementScheme::ueb(generalized_pauli_ueb(2), 1));
    CHECK(rows[2].t == 3);
    CHECK(rows[3].k == 2);
    CHECK(std::abs(rows[2].delta - delta_k(ens, 1)) < 1e-12);
    CHECK(std::abs(rows[3].delta - delta_k(ens, 2)) < 1e-12);
    CHECK(rows[0].delta < 1e-10);
    CHECK(rows[0].scheme == "ueb+1");
}

TEST_CASE("CSV rows") {
    ResultRow row{"id", "custom", "kim:1,2,3,4", "computational", 4, 12, 2, 3, 2, 0.125, 0.0, 7, 12.5};
    CHECK(csv_header() == "experiment_id,preset,gate,scheme,N_A,N_B,q,t,k,delta,dropped_mass,seed,wall_ms");
    CHECK(csv_row(row, false) ==
          "id,custom,\"kim:1,2,3,4\",computational,4,12,2,3,2,1.250000000000e-01,0.000000e+00,7,12.500");
    CHECK(csv_row(row, true).substr(csv_row(row, true).rfind(',') + 1) == "0.000");
    row.experiment_id = "say \"hi\"";
    CHECK(csv_row(row, true).rfind("\"say \"\"hi\"\"\",", 0) == 0);
}

TEST_CASE("identical configs give identical rows") {
    ExperimentConfig c;
    c.gate = "haar_random";
    c.seed = 3;
    c.n_a = 2;
    c.n_b = 5;
    c.t_max = 2;
    c.k_max = 3;
    auto a = run_experiment(c);
    auto b = run_experiment(c);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); i++) {
        CHECK(csv_row(a[i], true) == csv_row(b[i], true));
    }
}
