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

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "dudesign/error.hpp"
#include "dudesign/experiment.hpp"
#include "dudesign/io.hpp"
#include "dudesign/transfer.hpp"

namespace {

using namespace dudesign;

constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;

int configured_threads() {
    const char *env = std::getenv("DUDESIGN_THREADS");
    int threads = 1;
    if (env != nullptr && *env != '\0') {
        threads = std::max(1, std::atoi(env));
    }
    Eigen::setNbThreads(threads);
    return threads;
}

struct RunOptions {
    std::string preset;
    std::string config_file;
    std::string out;
    std::string sidecar;
    bool full = false;
    bool deterministic = false;
    bool plan_only = false;
    double budget_mb = 4096.0;
    // Overrides; empty / unset values leave the preset or file untouched.
    std::string gate, initial, scheme, layout, repr;
    std::optional<size_t> n_a, n_b, t_min, t_max, k_max;
    std::optional<uint64_t> seed;
};

ExperimentConfig apply_overrides(ExperimentConfig c, const RunOptions &o) {
    if (!o.gate.empty()) c.gate = o.gate;
    if (!o.initial.empty()) c.initial = o.initial;
    if (!o.scheme.empty()) c.scheme = o.scheme;
    if (!o.layout.empty()) c.layout = layout_from_name(o.layout);
    if (!o.repr.empty()) c = ExperimentConfig::from_json(Json{{"repr", o.repr}}, c);
    if (o.n_a) c.n_a = *o.n_a;
    if (o.n_b) c.n_b = *o.n_b;
    if (o.t_min) c.t_min = *o.t_min;
    if (o.t_max) c.t_max = *o.t_max;
    if (o.k_max) c.k_max = *o.k_max;
    if (o.seed) c.seed = *o.seed;
    if (c.t_max == 0) c.t_min = 0;
    return c;
}

int run_command(const RunOptions &o) {
    const int threads = configured_threads();
    std::vector<ExperimentConfig> configs;
    if (!o.preset.empty()) {
        configs = preset_configs(o.preset, o.full);
    } else {
        ExperimentConfig c;
        if (!o.config_file.empty()) {
            c = ExperimentConfig::from_json(read_json_file(o.config_file));
        }
        configs.push_back(c);
    }
    for (auto &c : configs) {
        c = apply_overrides(c, o);
    }

    bool over_budget = false;
    for (const auto &c : configs) {
        MemoryPlan plan = estimate_memory(c);
        std::cerr << "plan " << c.experiment_id << ": N_A=" << c.n_a << " N_B=" << c.n_b << " t=" << c.t_min << ".."
                  << c.t_max << " k<=" << c.k_max << "\n";
        for (const auto &line : plan.lines) {
            std::cerr << "  " << line << "\n";
        }
        const double peak_mb = static_cast<double>(plan.peak_bytes) / 1048576.0;
        std::cerr << "  estimated peak " << static_cast<long long>(peak_mb) << " MiB (budget "
                  << static_cast<long long>(o.budget_mb) << " MiB)\n";
        over_budget = over_budget || peak_mb > o.budget_mb;
    }
    if (over_budget) {
        std::cerr << "error: estimated memory exceeds the budget; lower --nb, --k-max or use --repr symmetric, "
                     "or raise --memory-budget-mb\n";
        return kExitBudget;
    }
    if (o.plan_only) {
        return 0;
    }

    std::ofstream file;
    std::ostream *out = &std::cout;
    if (!o.out.empty()) {
        file.open(o.out);
        if (!file) {
            throw Error(ErrorKind::Parse, "cannot write '" + o.out + "'");
        }
        out = &file;
    }
    *out << csv_header() << "\n";

    Json experiments = Json::array();
    Json canonical = Json::array();
    double total_ms = 0.0;
    for (const auto &c : configs) {
        auto start = std::chrono::steady_clock::now();
        run_experiment(c, [&](const ResultRow &row) {
            *out << csv_row(row, o.deterministic) << "\n";
            out->flush();
            std::cerr << row.experiment_id << " t=" << row.t << " k=" << row.k << " delta=" << row.delta << "\n";
        });
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        total_ms += ms;
        canonical.push_back(c.to_json());
        experiments.push_back(Json{{"config", c.to_json()}, {"wall_ms", o.deterministic ? 0.0 : ms}});
    }

    std::string sidecar = o.sidecar;
    if (sidecar.empty() && !o.out.empty()) {
        sidecar = o.out + ".json";
    }
    if (!sidecar.empty()) {
        write_json_file(sidecar, Json{{"version", kVersion},
                                      {"config_hash", fnv1a_hex(canonical.dump())},
                                      {"threads", threads},
                                      {"total_wall_ms", o.deterministic ? 0.0 : total_ms},
                                      {"experiments", experiments}});
    }
    return 0;
}

struct ValidateOptions {
    std::string gate, hadamard, ueb, mps;
    std::vector<std::string> require;
    std::string project = "none";
    double tol = kDefaultTol;
    uint64_t seed = 0;
};

int validate_command(const ValidateOptions &o) {
    Json report = Json::object();
    bool ok = true;
    if (!o.gate.empty()) {
        Gate g = resolve_gate(o.gate, o.seed);
        if (o.project == "unitary") {
            g = Gate::from_matrix(closest_unitary(g.matrix()));
        } else if (o.project == "dual-unitary") {
            g = closest_dual_unitary(g);
        }
        Json j = gate_to_json(g, o.tol);
        j.erase("entries");
        const Json &certs = j.at("certificates");
        std::vector<std::string> required = o.require.empty() ? std::vector<std::string>{"unitary"} : o.require;
        for (const auto &r : required) {
            std::string key = r == "dual-unitary" ? "dual_unitary" : r == "kim-property" ? "kim_property" : r;
            if (!certs.contains(key)) {
                throw Error(ErrorKind::Parse, "unknown certificate '" + r + "'");
            }
            bool pass = certs.at(key).at("ok").get<bool>();
            if (key == "dual_unitary") {
                pass = pass && certs.at("unitary").at("ok").get<bool>();
            }
            ok = ok && pass;
        }
        report["gate"] = j;
    }
    if (!o.hadamard.empty()) {
        Check c = check_complex_hadamard(matrix_from_json(read_json_file(o.hadamard).at("matrix")), o.tol);
        report["hadamard"] = Json{{"ok", c.ok}, {"max_violation", c.max_violation}};
        ok = ok && c.ok;
    }
    if (!o.ueb.empty()) {
        const Json file = read_json_file(o.ueb);
        std::vector<ComplexMatrix> members;
        for (const auto &m : file.at("members")) {
            members.push_back(matrix_from_json(m));
        }
        Check c = check_ueb(members, o.tol);
        report["ueb"] = Json{{"ok", c.ok}, {"max_violation", c.max_violation}};
        ok = ok && c.ok;
    }
    if (!o.mps.empty()) {
        Check c = check_solvable_mps(mps_from_json(read_json_file(o.mps)), o.tol);
        report["mps"] = Json{{"ok", c.ok}, {"max_violation", c.max_violation}};
        ok = ok && c.ok;
    }
    report["ok"] = ok;
    std::cout << report.dump(2) << "\n";
    return ok ? 0 : kExitValidation;
}

struct ProbeOptions {
    std::string gate = "kim:0.78539816339744828,0.78539816339744828,0.5,0.5";
    std::string scheme = "computational";
    std::string mps;
    std::string out;
    size_t t = 2;
    size_t m = 2;
    size_t count = 4;
    double tol = 1e-8;
    uint64_t seed = 1;
};

int probe_command(const ProbeOptions &o) {
    configured_threads();
    Gate g = resolve_gate(o.gate, o.seed);
    TransferScheme scheme;
    if (o.scheme == "computational") {
        scheme = TransferScheme::computational(g.q());
    } else if (o.scheme == "ueb") {
        SolvableMPS mps = o.mps.empty() ? pair_mps(ComplexMatrix::Identity(g.q(), g.q()) / std::sqrt(double(g.q())))
                                        : mps_from_json(read_json_file(o.mps));
        scheme = TransferScheme::ueb(generalized_pauli_ueb(g.q()), mps);
    } else {
        throw Error(ErrorKind::Parse, "scheme must be 'computational' or 'ueb'");
    }
    FoldedTransfer transfer(TransferSpec{g, o.t, scheme, o.m});
    LeadingEigsOptions options;
    options.count = o.count;
    options.tol = o.tol;
    options.seed = o.seed;
    Json j = spectral_report_to_json(spectral_report(transfer, options));
    double worst = 0.0;
    Json scales = Json::array();
    for (const auto &mz : transfer.single_outcome_matrices()) {
        ProportionalUnitary p = proportional_unitary(mz);
        worst = std::max(worst, p.violation);
        scales.push_back(p.scale);
    }
    j["degenerate_leading_space"] = j.at("gap").get<double>() < 1e-6;
    j["single_outcome_scales"] = scales;
    j["single_outcome_unitarity_violation"] = worst;
    if (!o.out.empty()) {
        write_json_file(o.out, j);
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int fixtures_list() {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto &entry : fs::directory_iterator(fixture_directory())) {
        if (entry.path().extension() == ".json") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    for (const auto &p : files) {
        Json j = read_json_file(p.string());
        std::cout << p.filename().string() << "\t" << j.value("kind", std::string("?")) << "\t"
                  << j.value("description", std::string("")) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Dual-unitary circuits, projected ensembles and emergent state designs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    RunOptions run;
    auto *run_cmd = app.add_subcommand("run", "Compute Delta^(k) for a preset or a custom configuration; CSV on stdout or --out");
    run_cmd->add_option("--preset", run.preset, "fig1 or fig2")->check(CLI::IsMember({"fig1", "fig2"}));
    run_cmd->add_option("--config", run.config_file, "ExperimentConfig JSON file")->check(CLI::ExistingFile);
    run_cmd->add_option("--out", run.out, "CSV output path");
    run_cmd->add_option("--sidecar", run.sidecar, "JSON sidecar path (default <out>.json)");
    run_cmd->add_flag("--full", run.full, "Use N_B = 16 for presets");
    run_cmd->add_flag("--deterministic", run.deterministic, "Write wall times as 0");
    run_cmd->add_flag("--plan", run.plan_only, "Print the memory plan and stop");
    run_cmd->add_option("--memory-budget-mb", run.budget_mb, "Abort with exit code 3 above this estimate");
    run_cmd->add_option("--gate", run.gate, "Gate source, e.g. kim:J,b,h1,h2, app_c, haar_random:7");
    run_cmd->add_option("--initial", run.initial, "computational[:digits], bell_pairs, mps:<file>");
    run_cmd->add_option("--scheme", run.scheme, "computational or ueb[:offset]");
    run_cmd->add_option("--layout", run.layout, "odd-first or even-first");
    run_cmd->add_option("--repr", run.repr, "symmetric or full");
    run_cmd->add_option("--na", run.n_a, "System sites");
    run_cmd->add_option("--nb", run.n_b, "Bath sites");
    run_cmd->add_option("--t-min", run.t_min, "First time step reported");
    run_cmd->add_option("--t-max", run.t_max, "Last time step");
    run_cmd->add_option("--k-max", run.k_max, "Highest moment");
    run_cmd->add_option("--seed", run.seed, "Seed for random gates");
    run_cmd->callback([&]() {
        if (run.preset.empty() == false && !run.config_file.empty()) {
            throw CLI::ValidationError("--preset and --config are exclusive");
        }
    });

    ValidateOptions val;
    auto *val_cmd = app.add_subcommand("validate", "Check biunitarity certificates; exit code 2 on failure");
    val_cmd->add_option("--gate", val.gate, "Gate source");
    val_cmd->add_option("--hadamard", val.hadamard, "Complex Hadamard JSON")->check(CLI::ExistingFile);
    val_cmd->add_option("--ueb", val.ueb, "Unitary error basis JSON")->check(CLI::ExistingFile);
    val_cmd->add_option("--mps", val.mps, "Two-site MPS JSON")->check(CLI::ExistingFile);
    val_cmd->add_option("--require", val.require, "unitary, dual-unitary, kim-property (default unitary)")
        ->check(CLI::IsMember({"unitary", "dual-unitary", "kim-property"}));
    val_cmd->add_option("--project", val.project, "Project the gate first: none, unitary, dual-unitary")
        ->check(CLI::IsMember({"none", "unitary", "dual-unitary"}));
    val_cmd->add_option("--tol", val.tol, "Tolerance");
    val_cmd->add_option("--seed", val.seed, "Seed for haar_random");

    ProbeOptions probe;
    auto *probe_cmd = app.add_subcommand("probe-transfer", "Folded transfer matrix eigenoperators and deflated spectrum");
    probe_cmd->add_option("--gate", probe.gate, "Gate source");
    probe_cmd->add_option("--scheme", probe.scheme, "computational or ueb")->check(CLI::IsMember({"computational", "ueb"}));
    probe_cmd->add_option("--mps", probe.mps, "MPS JSON for the ueb scheme (default Bell pairs)")->check(CLI::ExistingFile);
    probe_cmd->add_option("--t", probe.t, "Time steps");
    probe_cmd->add_option("--m", probe.m, "Replica count");
    probe_cmd->add_option("--count", probe.count, "Deflated eigenvalues to report");
    probe_cmd->add_option("--tol", probe.tol, "Arnoldi tolerance");
    probe_cmd->add_option("--seed", probe.seed, "Start vector / gate seed");
    probe_cmd->add_option("--out", probe.out, "Write the report JSON here too");

    auto *fixtures_cmd = app.add_subcommand("fixtures", "Bundled fixtures");
    fixtures_cmd->require_subcommand(1);
    auto *fixtures_list_cmd = fixtures_cmd->add_subcommand("list", "List bundled fixture files");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            return run_command(run);
        }
        if (val_cmd->parsed()) {
            return validate_command(val);
        }
        if (probe_cmd->parsed()) {
            return probe_command(probe);
        }
        if (fixtures_list_cmd->parsed()) {
            return fixtures_list();
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
