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

#include "dudesign/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "dudesign/error.hpp"

#ifndef DUDESIGN_FIXTURE_DIR
#define DUDESIGN_FIXTURE_DIR "fixtures"
#endif

namespace dudesign {

std::string fixture_directory() {
    if (const char *env = std::getenv("DUDESIGN_FIXTURES"); env != nullptr && *env != '\0') {
        return env;
    }
    return DUDESIGN_FIXTURE_DIR;
}

std::string fixture_path(const std::string &name) {
    return fixture_directory() + "/" + name;
}

namespace {

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> parts;
    std::string current;
    std::istringstream in(text);
    while (std::getline(in, current, sep)) {
        parts.push_back(current);
    }
    if (!text.empty() && text.back() == sep) {
        parts.emplace_back();
    }
    return parts;
}

double parse_double(const std::string &text) {
    try {
        size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument(text);
        }
        return v;
    } catch (const std::exception &) {
        fail(ErrorKind::Parse, "not a number: '" + text + "'");
    }
}

uint64_t parse_uint(const std::string &text) {
    try {
        size_t used = 0;
        unsigned long long v = std::stoull(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument(text);
        }
        return v;
    } catch (const std::exception &) {
        fail(ErrorKind::Parse, "not a non-negative integer: '" + text + "'");
    }
}

/// Splits "name:rest" into name and rest (rest empty if there is no colon).
std::pair<std::string, std::string> split_source(const std::string &source) {
    auto colon = source.find(':');
    if (colon == std::string::npos) {
        return {source, ""};
    }
    return {source.substr(0, colon), source.substr(colon + 1)};
}

Gate gate_from_file(const std::string &path) {
    Json j = read_json_file(path);
    std::string kind = j.value("kind", std::string("gate"));
    if (kind == "gate") {
        return gate_from_json(j);
    }
    if (kind == "hadamard_gate") {
        auto h = [&](const char *key) { return ComplexHadamard::from_matrix(matrix_from_json(j.at(key))); };
        std::vector<double> h1 = j.value("h1", std::vector<double>{});
        std::vector<double> h2 = j.value("h2", std::vector<double>{});
        return hadamard_gate(h("E"), h("F"), h("G"), h("H"), h1, h2).gate();
    }
    fail(ErrorKind::Parse, "unsupported gate file kind '" + kind + "'");
}

}  // namespace

Gate resolve_gate(const std::string &source, uint64_t default_seed) {
    auto [name, rest] = split_source(source);
    if (name == "kim") {
        std::vector<std::string> p = split(rest, ',');
        if (p.size() != 4) {
            fail(ErrorKind::Parse, "kim gate needs J,b,h1,h2");
        }
        return kim_gate(parse_double(p[0]), parse_double(p[1]), parse_double(p[2]), parse_double(p[3])).gate();
    }
    if (name == "cat_map") {
        return cat_map_gate(parse_uint(rest)).gate();
    }
    if (name == "fourier_hadamard") {
        ComplexHadamard k = fourier_matrix(parse_uint(rest));
        return hadamard_gate(k, k, k, k).gate();
    }
    if (name == "ueb_gate") {
        UnitaryErrorBasis b = generalized_pauli_ueb(parse_uint(rest));
        return ueb_gate(b, b, b, b).gate();
    }
    if (name == "app_c") {
        return closest_dual_unitary(gate_from_json(read_json_file(fixture_path("app_c_dual_unitary.json"))));
    }
    if (name == "app_c_unitary") {
        Gate raw = gate_from_json(read_json_file(fixture_path("app_c_unitary.json")));
        return Gate::from_matrix(closest_unitary(raw.matrix()));
    }
    if (name == "haar_random") {
        std::vector<std::string> p = rest.empty() ? std::vector<std::string>{} : split(rest, ':');
        uint64_t seed = p.empty() ? default_seed : parse_uint(p[0]);
        size_t q = p.size() > 1 ? parse_uint(p[1]) : 2;
        return Gate::from_matrix(haar_unitary(q * q, seed));
    }
    if (name == "file") {
        return gate_from_file(rest);
    }
    fail(ErrorKind::Parse, "unknown gate source '" + source + "'");
}

StateVector prepare_initial_state(const std::string &initial, size_t n_sites, size_t q) {
    auto [name, rest] = split_source(initial);
    if (name == "computational") {
        std::vector<size_t> digits(n_sites, 0);
        if (!rest.empty()) {
            if (rest.size() != n_sites) {
                fail(ErrorKind::Shape, "computational initial state needs one digit per site");
            }
            for (size_t i = 0; i < n_sites; i++) {
                digits[i] = static_cast<size_t>(rest[i] - '0');
            }
        }
        return computational_product_state(n_sites, q, digits);
    }
    if (name == "bell_pairs") {
        ComplexMatrix m = ComplexMatrix::Identity(q, q) / std::sqrt(static_cast<double>(q));
        return solvable_mps_state(pair_mps(m), n_sites).state;
    }
    if (name == "mps") {
        SolvableMPS mps = mps_from_json(read_json_file(rest));
        if (mps.q != q) {
            fail(ErrorKind::DimensionMismatch, "MPS local dimension differs from the gate's");
        }
        return solvable_mps_state(mps, n_sites).state;
    }
    fail(ErrorKind::Parse, "unknown initial state '" + initial + "'");
}

MeasurementScheme resolve_scheme(const std::string &scheme, size_t q) {
    auto [name, rest] = split_source(scheme);
    if (name == "computational") {
        return MeasurementScheme::computational();
    }
    if (name == "ueb") {
        return MeasurementScheme::ueb(generalized_pauli_ueb(q), rest.empty() ? 0 : parse_uint(rest));
    }
    fail(ErrorKind::Parse, "unknown measurement scheme '" + scheme + "'");
}

Json ExperimentConfig::to_json() const {
    return Json{{"experiment_id", experiment_id},
                {"preset", preset},
                {"gate", gate},
                {"initial", initial},
                {"scheme", scheme},
                {"layout", layout_name(layout)},
                {"N_A", n_a},
                {"N_B", n_b},
                {"t_min", t_min},
                {"t_max", t_max},
                {"k_max", k_max},
                {"seed", seed},
                {"repr", repr == MomentRepr::Full ? "full" : "symmetric"},
                {"full_cap", full_cap},
                {"p_floor", p_floor}};
}

ExperimentConfig ExperimentConfig::from_json(const Json &j) {
    return from_json(j, ExperimentConfig{});
}

ExperimentConfig ExperimentConfig::from_json(const Json &j, const ExperimentConfig &base) {
    ExperimentConfig c = base;
    c.experiment_id = j.value("experiment_id", c.experiment_id);
    c.preset = j.value("preset", c.preset);
    c.gate = j.value("gate", c.gate);
    c.initial = j.value("initial", c.initial);
    c.scheme = j.value("scheme", c.scheme);
    if (j.contains("layout")) {
        c.layout = layout_from_name(j.at("layout").get<std::string>());
    }
    c.n_a = j.value("N_A", c.n_a);
    c.n_b = j.value("N_B", c.n_b);
    c.t_min = j.value("t_min", c.t_min);
    c.t_max = j.value("t_max", c.t_max);
    c.k_max = j.value("k_max", c.k_max);
    c.seed = j.value("seed", c.seed);
    if (j.contains("repr")) {
        std::string r = j.at("repr").get<std::string>();
        if (r != "full" && r != "symmetric") {
            fail(ErrorKind::Parse, "repr must be 'full' or 'symmetric'");
        }
        c.repr = r == "full" ? MomentRepr::Full : MomentRepr::Symmetric;
    }
    c.full_cap = j.value("full_cap", c.full_cap);
    c.p_floor = j.value("p_floor", c.p_floor);
    return c;
}

std::vector<ExperimentConfig> preset_configs(const std::string &preset, bool full) {
    ExperimentConfig base;
    base.preset = preset;
    base.n_a = 4;
    base.n_b = full ? 16 : 12;
    base.k_max = 4;
    if (preset == "fig1") {
        base.t_max = 6;
        base.layout = Layout::OddFirst;
        base.initial = "computational";
        base.scheme = "computational";
        ExperimentConfig kim = base;
        kim.experiment_id = "fig1-kim";
        kim.gate = "kim:0.78539816339744828,0.78539816339744828,0.5,0.5";
        ExperimentConfig haar = base;
        haar.experiment_id = "fig1-haar";
        haar.gate = "haar_random";
        haar.seed = 7;
        return {kim, haar};
    }
    if (preset == "fig2") {
        base.t_max = 5;
        // The first gate layer must straddle the Bell pairs (0,1),(2,3),..., and the bath
        // pairs must straddle the last layer, hence one computational site before them.
        base.layout = Layout::EvenFirst;
        base.gate = "app_c";
        ExperimentConfig bell = base;
        bell.experiment_id = "fig2-bell";
        bell.initial = "bell_pairs";
        bell.scheme = "ueb:1";
        ExperimentConfig comp = base;
        comp.experiment_id = "fig2-computational";
        comp.initial = "computational";
        comp.scheme = "computational";
        return {bell, comp};
    }
    fail(ErrorKind::Parse, "unknown preset '" + preset + "' (expected fig1 or fig2)");
}

MemoryPlan estimate_memory(const ExperimentConfig &config) {
    MemoryPlan plan;
    // Every gate source used by the presets has q = 2; ueb_gate:q and cat_map:q carry it.
    size_t q = 2;
    auto [name, rest] = split_source(config.gate);
    if ((name == "cat_map" || name == "fourier_hadamard") && !rest.empty()) {
        q = parse_uint(rest);
    } else if (name == "ueb_gate" && !rest.empty()) {
        q = parse_uint(rest) * parse_uint(rest);
    } else if (name == "haar_random") {
        std::vector<std::string> p = split(rest, ':');
        if (p.size() > 1) {
            q = parse_uint(p[1]);
        }
    }
    const double bytes_c = 16.0;
    const double state = bytes_c * std::pow(static_cast<double>(q), static_cast<double>(config.n_a + config.n_b));
    const double d_a = std::pow(static_cast<double>(q), static_cast<double>(config.n_a));
    const double outcomes = std::pow(static_cast<double>(q), static_cast<double>(config.n_b));
    // State, basis-rotated copy, amplitude matrix and normalized ensemble.
    double base = 4.0 * state;
    double peak = base;
    char line[256];
    std::snprintf(line, sizeof line, "statevector %.0f MiB x4 (state, rotated, amplitudes, ensemble)", state / 1048576.0);
    plan.lines.push_back(line);
    for (size_t k = 1; k <= config.k_max; k++) {
        double need = 0.0;
        const char *route = "";
        if (config.repr == MomentRepr::Full) {
            double dim = std::pow(d_a, static_cast<double>(k));
            need = 4.0 * bytes_c * dim * dim;
            route = "full";
        } else {
            double dsym = static_cast<double>(symmetric_dimension(static_cast<size_t>(d_a), k));
            double gram_cost = 8.0 * outcomes * outcomes * d_a + 10.0 * outcomes * outcomes * outcomes;
            double moment_cost = 4.0 * outcomes * dsym * dsym + 10.0 * dsym * dsym * dsym;
            if (gram_cost <= moment_cost) {
                need = 3.0 * bytes_c * outcomes * outcomes;
                route = "gram";
            } else {
                need = 3.0 * bytes_c * dsym * dsym + bytes_c * dsym * 1024.0;
                route = "symmetric";
            }
        }
        std::snprintf(line, sizeof line, "k=%zu route=%s %.0f MiB", k, route, need / 1048576.0);
        plan.lines.push_back(line);
        peak = std::max(peak, base + need);
    }
    plan.peak_bytes = static_cast<size_t>(peak);
    return plan;
}

namespace {

constexpr double kConsistencyTol = 1e-10;

void check_delta(const ResultRow &row, double previous) {
    char where[160];
    std::snprintf(where, sizeof where, "%s at t=%zu k=%zu: delta=%.15e", row.experiment_id.c_str(), row.t, row.k,
                  row.delta);
    if (!std::isfinite(row.delta) || row.delta < -kConsistencyTol || row.delta > 1.0 + kConsistencyTol) {
        fail(ErrorKind::Inconsistent, std::string(where) + " lies outside [0, 1]");
    }
    if (row.k > 1 && row.delta < previous - kConsistencyTol) {
        char buf[64];
        std::snprintf(buf, sizeof buf, " below delta(k-1)=%.15e", previous);
        fail(ErrorKind::Inconsistent, std::string(where) + buf);
    }
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig &config, const RowCallback &on_row) {
    using Clock = std::chrono::steady_clock;
    if (config.k_max == 0) {
        fail(ErrorKind::InvalidDimension, "k_max must be >= 1");
    }
    Gate gate = resolve_gate(config.gate, config.seed);
    const size_t q = gate.q();
    const size_t n = config.n_a + config.n_b;
    StateVector state = prepare_initial_state(config.initial, n, q);
    MeasurementScheme scheme = resolve_scheme(config.scheme, q);
    CircuitSpec spec = CircuitSpec::floquet(n, config.t_max, gate, config.layout);
    spec.seed = config.seed;

    std::vector<ResultRow> rows;
    for (size_t t = 0; t <= config.t_max; t++) {
        auto start = Clock::now();
        if (t > 0) {
            apply_time_step(state, spec, t - 1);
        }
        if (t < config.t_min) {
            continue;
        }
        ProjectedEnsemble ens = project_ensemble(state, config.n_a, scheme, config.p_floor);
        double previous = 0.0;
        for (size_t k = 1; k <= config.k_max; k++) {
            ResultRow row{config.experiment_id, config.preset, config.gate, scheme.name(), config.n_a, config.n_b,
                          q,                    t,              k,           0.0,           ens.dropped_mass, config.seed,
                          0.0};
            row.delta = delta_k(ens, k, config.repr, config.full_cap);
            check_delta(row, previous);
            previous = row.delta;
            auto stop = Clock::now();
            row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
            start = stop;
            if (on_row) {
                on_row(row);
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

namespace {

std::string csv_field(const std::string &text) {
    if (text.find_first_of(",\"\n") == std::string::npos) {
        return text;
    }
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') {
            quoted += '"';
        }
        quoted += c;
    }
    return quoted + "\"";
}

}  // namespace

std::string csv_header() {
    return "experiment_id,preset,gate,scheme,N_A,N_B,q,t,k,delta,dropped_mass,seed,wall_ms";
}

std::string csv_row(const ResultRow &row, bool deterministic) {
    char numbers[256];
    std::snprintf(numbers, sizeof numbers, "%zu,%zu,%zu,%zu,%zu,%.12e,%.6e,%llu,%.3f", row.n_a, row.n_b, row.q, row.t,
                  row.k, row.delta, row.dropped_mass, static_cast<unsigned long long>(row.seed),
                  deterministic ? 0.0 : row.wall_ms);
    return csv_field(row.experiment_id) + "," + csv_field(row.preset) + "," + csv_field(row.gate) + "," +
           csv_field(row.scheme) + "," + numbers;
}

}  // namespace dudesign
