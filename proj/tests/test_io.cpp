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

#include <cstdio>
#include <filesystem>

#include "dudesign/io.hpp"
#include "testing.hpp"

using namespace dudesign;
using dudesign::testing::error_kind_of;

TEST_CASE("complex numbers and matrices round-trip") {
    CHECK(complex_from_json(complex_to_json({1.5, -2.0})) == cdouble(1.5, -2.0));
    CHECK(complex_from_json(Json(3.0)) == cdouble(3.0, 0.0));
    ComplexMatrix m = dudesign::testing::random_matrix(3, 2, 1);
    CHECK(matrix_from_json(matrix_to_json(m)) == m);
    CHECK(error_kind_of([] { matrix_from_json(Json::parse("[[1, 2], [3]]")); }) == ErrorKind::Parse);
    CHECK(error_kind_of([] { complex_from_json(Json::parse("[1, 2, 3]")); }) == ErrorKind::Parse);
}

TEST_CASE("gates round-trip with certificates") {
    Gate g = cat_map_gate(3).gate();
    Json j = gate_to_json(g);
    CHECK(j.at("kind") == "gate");
    CHECK(j.at("entries").size() == 81);
    CHECK(j.at("certificates").at("dual_unitary").at("ok") == true);
    CHECK(j.at("certificates").at("kim_property").at("ok") == true);
    CHECK(gate_from_json(j) == g);
    Json nested{{"matrix", matrix_to_json(g.matrix())}};
    CHECK(gate_from_json(nested) == g);
    Json bad = j;
    bad["entries"].erase(0);
    CHECK(error_kind_of([&] { gate_from_json(bad); }) == ErrorKind::Parse);
}

TEST_CASE("hadamard, UEB and MPS round-trip") {
    ComplexHadamard k = fourier_matrix(3);
    CHECK(hadamard_from_json(hadamard_to_json(k)).matrix() == k.matrix());
    UnitaryErrorBasis b = generalized_pauli_ueb(3);
    UnitaryErrorBasis back = ueb_from_json(ueb_to_json(b));
    for (size_t n = 0; n < b.size(); n++) {
        CHECK(back[n] == b[n]);
    }

    SolvableMPS mps = pair_mps(pauli_x() / std::sqrt(2.0));
    SolvableMPS mps_back = mps_from_json(mps_to_json(mps));
    CHECK(mps_back.chi == 1);
    CHECK(std::holds_alternative<TraceBoundary>(mps_back.boundary));
    for (size_t i = 0; i < 4; i++) {
        CHECK(mps_back.tensors[i] == mps.tensors[i]);
    }
    mps.boundary = VectorBoundary{ComplexVector::Ones(1), ComplexVector::Ones(1) * 2.0};
    SolvableMPS with_vectors = mps_from_json(mps_to_json(mps));
    REQUIRE(std::holds_alternative<VectorBoundary>(with_vectors.boundary));
    CHECK(std::get<VectorBoundary>(with_vectors.boundary).right(0) == cdouble(2.0));

    Json missing = mps_to_json(mps);
    missing["tensors"].erase("1,1");
    CHECK(error_kind_of([&] { mps_from_json(missing); }) == ErrorKind::MissingTensor);
}

TEST_CASE("circuit specs round-trip") {
    Gate g = kim_gate(0.7, 0.7, 0.1, 0.2).gate();
    CircuitSpec floquet = CircuitSpec::floquet(6, 3, g, Layout::EvenFirst);
    auto resolver = [&](const std::string &id) {
        CHECK(id == "kim");
        return g;
    };
    CircuitSpec by_id = circuit_spec_from_json(circuit_spec_to_json(floquet, "kim"), resolver);
    CHECK(by_id.layout == Layout::EvenFirst);
    CHECK(std::get<Gate>(by_id.gates) == g);
    CircuitSpec inline_gate = circuit_spec_from_json(circuit_spec_to_json(floquet), resolver);
    CHECK(std::get<Gate>(inline_gate.gates) == g);

    CircuitSpec random = CircuitSpec::random_haar(5, 2, 2, 9);
    CircuitSpec table = circuit_spec_from_json(circuit_spec_to_json(random), resolver);
    CHECK(table.seed == 9);
    CHECK(table.gate_at(1, 1, 1) == random.gate_at(1, 1, 1));

    Json bad = circuit_spec_to_json(floquet, "kim");
    bad["gates"] = "kim";
    CHECK(error_kind_of([&] { circuit_spec_from_json(bad, resolver); }) == ErrorKind::Parse);
}

TEST_CASE("layout names") {
    CHECK(layout_from_name(layout_name(Layout::OddFirst)) == Layout::OddFirst);
    CHECK(layout_from_name("even") == Layout::EvenFirst);
    CHECK(error_kind_of([] { layout_from_name("diagonal"); }) == ErrorKind::Parse);
}

TEST_CASE("ensemble and moment export") {
    StateVector s = computational_product_state(3, 2, {0, 1, 1});
    ProjectedEnsemble ens = project_ensemble(s, 1, MeasurementScheme::computational());
    Json j = ensemble_to_json(ens);
    CHECK(j.at("N_A") == 1);
    CHECK(j.at("outcomes") == Json::array({3}));
    CHECK(j.at("states").size() == 1);
    Json m = moment_to_json(moment_k(ens, 2));
    CHECK(m.at("repr") == "symmetric");
    CHECK(m.at("matrix").size() == 3);
}

TEST_CASE("JSON files") {
    const std::string path = (std::filesystem::temp_directory_path() / "dudesign_io_test.json").string();
    write_json_file(path, Json{{"a", 1}});
    CHECK(read_json_file(path).at("a") == 1);
    std::remove(path.c_str());
    CHECK(error_kind_of([&] { read_json_file(path); }) == ErrorKind::Parse);
}

TEST_CASE("FNV-1a reference values") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}
