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

#include "dudesign/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dudesign/error.hpp"

namespace dudesign {

namespace {

[[noreturn]] void parse_fail(const std::string &what) {
    fail(ErrorKind::Parse, what);
}

const Json &require(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        parse_fail(std::string("missing key '") + key + "'");
    }
    return j.at(key);
}

Json check_to_json(const Check &c) {
    return Json{{"ok", c.ok}, {"max_violation", c.max_violation}};
}

}  // namespace

Json complex_to_json(cdouble z) {
    return Json::array({z.real(), z.imag()});
}

cdouble complex_from_json(const Json &j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2) {
        parse_fail("complex number must be [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const ComplexMatrix &m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            row.push_back(complex_to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const Json &j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        parse_fail("matrix must be a non-empty array of rows");
    }
    const size_t rows = j.size();
    const size_t cols = j[0].size();
    ComplexMatrix m(rows, cols);
    for (size_t r = 0; r < rows; r++) {
        if (!j[r].is_array() || j[r].size() != cols) {
            parse_fail("matrix rows have different lengths");
        }
        for (size_t c = 0; c < cols; c++) {
            m(r, c) = complex_from_json(j[r][c]);
        }
    }
    return m;
}

Json gate_to_json(const Gate &gate, double tol) {
    Json entries = Json::array();
    const ComplexMatrix &m = gate.matrix();
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            entries.push_back(complex_to_json(m(r, c)));
        }
    }
    return Json{{"kind", "gate"},
                {"q", gate.q()},
                {"entries", entries},
                {"certificates",
                 {{"tolerance", tol},
                  {"unitary", check_to_json(check_unitary(gate, tol))},
                  {"dual_unitary", check_to_json(check_dual_unitary(gate, tol))},
                  {"kim_property", check_to_json(check_kim_property(gate, tol))}}}};
}

Gate gate_from_json(const Json &j) {
    if (j.contains("matrix")) {
        return Gate::from_matrix(matrix_from_json(j.at("matrix")));
    }
    const size_t q = require(j, "q").get<size_t>();
    const Json &entries = require(j, "entries");
    const size_t dim = q * q;
    if (!entries.is_array() || entries.size() != dim * dim) {
        parse_fail("gate entries must hold q^4 numbers");
    }
    ComplexMatrix m(dim, dim);
    for (size_t i = 0; i < dim * dim; i++) {
        m(i / dim, i % dim) = complex_from_json(entries[i]);
    }
    return Gate::from_matrix(m);
}

Json hadamard_to_json(const ComplexHadamard &h) {
    return Json{{"kind", "hadamard"}, {"q", h.q()}, {"matrix", matrix_to_json(h.matrix())}};
}

ComplexHadamard hadamard_from_json(const Json &j, double tol) {
    return ComplexHadamard::from_matrix(matrix_from_json(require(j, "matrix")), tol);
}

Json ueb_to_json(const UnitaryErrorBasis &basis) {
    Json members = Json::array();
    for (const auto &m : basis.members()) {
        members.push_back(matrix_to_json(m));
    }
    return Json{{"kind", "ueb"}, {"q", basis.q()}, {"members", members}};
}

UnitaryErrorBasis ueb_from_json(const Json &j, double tol) {
    std::vector<ComplexMatrix> members;
    for (const auto &m : require(j, "members")) {
        members.push_back(matrix_from_json(m));
    }
    return UnitaryErrorBasis::from_members(std::move(members), tol);
}

Json mps_to_json(const SolvableMPS &mps) {
    Json tensors = Json::object();
    for (size_t i = 0; i < mps.q; i++) {
        for (size_t k = 0; k < mps.q; k++) {
            tensors[std::to_string(i) + "," + std::to_string(k)] = matrix_to_json(mps.tensor(i, k));
        }
    }
    Json boundary;
    if (const auto *v = std::get_if<VectorBoundary>(&mps.boundary)) {
        Json left = Json::array(), right = Json::array();
        for (Eigen::Index a = 0; a < v->left.size(); a++) {
            left.push_back(complex_to_json(v->left(a)));
        }
        for (Eigen::Index a = 0; a < v->right.size(); a++) {
            right.push_back(complex_to_json(v->right(a)));
        }
        boundary = Json{{"left", left}, {"right", right}};
    } else {
        boundary = "trace";
    }
    return Json{{"kind", "mps"}, {"q", mps.q}, {"chi", mps.chi}, {"tensors", tensors}, {"boundary", boundary}};
}

SolvableMPS mps_from_json(const Json &j) {
    SolvableMPS mps;
    mps.q = require(j, "q").get<size_t>();
    mps.chi = require(j, "chi").get<size_t>();
    const Json &tensors = require(j, "tensors");
    for (size_t i = 0; i < mps.q; i++) {
        for (size_t k = 0; k < mps.q; k++) {
            std::string key = std::to_string(i) + "," + std::to_string(k);
            if (!tensors.contains(key)) {
                fail(ErrorKind::MissingTensor, "MPS tensor " + key + " missing");
            }
            ComplexMatrix n = matrix_from_json(tensors.at(key));
            if (static_cast<size_t>(n.rows()) != mps.chi || static_cast<size_t>(n.cols()) != mps.chi) {
                fail(ErrorKind::Shape, "MPS tensor " + key + " is not chi x chi");
            }
            mps.tensors.push_back(std::move(n));
        }
    }
    if (j.contains("boundary") && j.at("boundary").is_object()) {
        VectorBoundary v;
        const Json &left = require(j.at("boundary"), "left");
        const Json &right = require(j.at("boundary"), "right");
        v.left.resize(left.size());
        v.right.resize(right.size());
        for (size_t a = 0; a < left.size(); a++) {
            v.left(a) = complex_from_json(left[a]);
        }
        for (size_t a = 0; a < right.size(); a++) {
            v.right(a) = complex_from_json(right[a]);
        }
        mps.boundary = v;
    }
    return mps;
}

std::string layout_name(Layout layout) {
    return layout == Layout::OddFirst ? "odd-first" : "even-first";
}

Layout layout_from_name(const std::string &name) {
    if (name == "odd-first" || name == "odd") {
        return Layout::OddFirst;
    }
    if (name == "even-first" || name == "even") {
        return Layout::EvenFirst;
    }
    parse_fail("unknown layout '" + name + "'");
}

Json circuit_spec_to_json(const CircuitSpec &spec, const std::string &floquet_id) {
    Json j{{"N", spec.n_sites}, {"q", spec.q}, {"t", spec.t}, {"layout", layout_name(spec.layout)}, {"seed", spec.seed}};
    if (const auto *g = std::get_if<Gate>(&spec.gates)) {
        if (!floquet_id.empty()) {
            j["gates"] = "floquet:" + floquet_id;
        } else {
            j["gates"] = Json{{"floquet", gate_to_json(*g)}};
        }
    } else {
        Json table = Json::array();
        for (const auto &step : std::get<GateTable>(spec.gates)) {
            Json layers = Json::array();
            for (const auto &layer : step) {
                Json gates = Json::array();
                for (const auto &gate : layer) {
                    gates.push_back(gate_to_json(gate));
                }
                layers.push_back(std::move(gates));
            }
            table.push_back(std::move(layers));
        }
        j["gates"] = std::move(table);
    }
    return j;
}

CircuitSpec circuit_spec_from_json(const Json &j, const std::function<Gate(const std::string &)> &resolve_gate) {
    CircuitSpec spec;
    spec.n_sites = require(j, "N").get<size_t>();
    spec.q = require(j, "q").get<size_t>();
    spec.t = require(j, "t").get<size_t>();
    spec.layout = layout_from_name(j.value("layout", std::string("odd-first")));
    spec.seed = j.value("seed", uint64_t{0});
    const Json &gates = require(j, "gates");
    if (gates.is_string()) {
        const std::string text = gates.get<std::string>();
        const std::string prefix = "floquet:";
        if (text.rfind(prefix, 0) != 0) {
            parse_fail("gates string must start with 'floquet:'");
        }
        spec.gates = resolve_gate(text.substr(prefix.size()));
    } else if (gates.is_object() && gates.contains("floquet")) {
        spec.gates = gate_from_json(gates.at("floquet"));
    } else if (gates.is_array()) {
        GateTable table;
        for (const auto &step : gates) {
            std::vector<std::vector<Gate>> layers;
            for (const auto &layer : step) {
                std::vector<Gate> row;
                for (const auto &g : layer) {
                    row.push_back(gate_from_json(g));
                }
                layers.push_back(std::move(row));
            }
            table.push_back(std::move(layers));
        }
        spec.gates = std::move(table);
    } else {
        parse_fail("unrecognised gates entry");
    }
    spec.validate();
    return spec;
}

Json ensemble_to_json(const ProjectedEnsemble &ens) {
    Json states = Json::array();
    for (Eigen::Index e = 0; e < ens.states.cols(); e++) {
        Json amps = Json::array();
        for (Eigen::Index i = 0; i < ens.states.rows(); i++) {
            amps.push_back(complex_to_json(ens.states(i, e)));
        }
        states.push_back(std::move(amps));
    }
    return Json{{"kind", "ensemble"},
                {"d_A", ens.d_a},
                {"N_A", ens.n_a},
                {"N_B", ens.n_b},
                {"scheme", ens.scheme},
                {"dropped_mass", ens.dropped_mass},
                {"outcomes", ens.outcomes},
                {"probabilities", ens.probabilities},
                {"states", states}};
}

Json moment_to_json(const MomentOperator &moment) {
    return Json{{"kind", "moment"},
                {"d", moment.d},
                {"k", moment.k},
                {"repr", moment.repr == MomentRepr::Full ? "full" : "symmetric"},
                {"matrix", matrix_to_json(moment.matrix)}};
}

Json spectral_report_to_json(const SpectralReport &report) {
    Json magnitudes = Json::array();
    Json values = Json::array();
    Json converged = Json::array();
    for (const auto &e : report.deflated) {
        magnitudes.push_back(e.magnitude);
        values.push_back(complex_to_json(e.value));
        converged.push_back(e.converged);
    }
    return Json{{"spec", report.spec},
                {"leading_eigenvalue", report.leading_eigenvalue},
                {"eigen_magnitudes", magnitudes},
                {"eigenvalues", values},
                {"converged", converged},
                {"residuals", report.residuals},
                {"gap", report.gap}};
}

Json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        parse_fail("cannot open '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const Json::exception &e) {
        parse_fail("invalid JSON in '" + path + "': " + e.what());
    }
}

void write_json_file(const std::string &path, const Json &j) {
    std::ofstream out(path);
    if (!out) {
        parse_fail("cannot write '" + path + "'");
    }
    out << j.dump(2) << "\n";
}

std::string fnv1a_hex(const std::string &text) {
    uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

}  // namespace dudesign
