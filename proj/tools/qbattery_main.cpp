// Copyright 2026 The qbattery Authors
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


// qbattery: command-line front end for the dipolar quantum battery simulator.
//
//   qbattery eigen    [--config f] [--set k=v ...]
//   qbattery thermal  [--config f] [--set k=v ...]
//   qbattery evolve   [--config f] [--out dir] [--mode charger-only|full]
//   qbattery dephase  [--config f] [--out dir] [--rate-convention paper|lindblad]
//   qbattery sweep    --config f --out dir
//   qbattery validate
//
// Exit codes: 0 success, 1 configuration error, 2 validation failure.

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qbattery/errors.hpp"
#include "qbattery/harness.hpp"
#include "qbattery/metrics.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kValidationFailure = 2;

struct GlobalOptions {
    std::string config;
    std::string out;
    std::string mode;
    std::string rate_convention;
    std::vector<std::string> sets;
};

qb::harness::KeyValues collect(const GlobalOptions& g) {
    qb::harness::KeyValues kv;
    if (!g.config.empty()) {
        kv = qb::harness::load_key_values(g.config);
    }
    qb::harness::KeyValues overrides;
    for (const std::string& s : g.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            throw qb::ConfigError("--set: expected key=value, got '" + s + "'");
        }
        overrides.insert_or_assign(s.substr(0, eq), s.substr(eq + 1));
    }
    if (!g.mode.empty()) {
        overrides.insert_or_assign("run.mode", g.mode);
    }
    if (!g.rate_convention.empty()) {
        overrides.insert_or_assign("dephasing.rate_convention", g.rate_convention);
    }
    return qb::harness::merge(std::move(kv), overrides);
}

std::string fmt(double x) {
    return qb::harness::format_number(x);
}

std::string fmt(const qb::Complex& z) {
    std::ostringstream os;
    os << fmt(z.real()) << (z.imag() < 0 ? " - " : " + ") << fmt(std::abs(z.imag())) << "i";
    return os.str();
}

void print_matrix(std::ostream& os, const qb::ComplexMatrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        os << "  ";
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            os << std::setw(40) << fmt(m(i, j));
        }
        os << '\n';
    }
}

int cmd_eigen(const GlobalOptions& g) {
    const qb::harness::RunConfig cfg = qb::harness::resolve_run_config(collect(g));
    const qb::BatteryParams& p = cfg.battery;
    std::ostringstream os;
    os << "H_B:\n";
    print_matrix(os, qb::battery_hamiltonian(p));
    const auto closed = qb::closed_form_eigenvalues(p);
    os << "eta = " << fmt(qb::eta_of(p)) << ", chi = " << fmt(qb::chi_of(p)) << '\n';
    os << "closed form: ";
    for (double l : closed) {
        os << fmt(l) << ' ';
    }
    os << "\nnumeric:     ";
    const auto numeric = qb::hermitian_eigen(qb::battery_hamiltonian(p));
    for (Eigen::Index i = 0; i < 4; ++i) {
        os << fmt(numeric.eigenvalues(i)) << ' ';
    }
    os << '\n';
    try {
        const qb::Spectrum s = qb::closed_form_spectrum(p);
        for (int i = 0; i < 4; ++i) {
            os << "phi" << i + 1 << " (lambda = " << fmt(s.eigenvalues[i]) << "):";
            for (Eigen::Index k = 0; k < 4; ++k) {
                os << "  " << fmt(s.eigenvectors[i](k));
            }
            os << '\n';
        }
    } catch (const qb::DegenerateClosedForm& e) {
        os << "closed-form eigenvectors unavailable: " << e.what() << '\n';
    }
    std::cout << os.str();
    if (!g.out.empty()) {
        qb::harness::write_file(std::filesystem::path(g.out) / "eigen.txt", os.str());
    }
    return kOk;
}

int cmd_thermal(const GlobalOptions& g) {
    const qb::harness::RunConfig cfg = qb::harness::resolve_run_config(collect(g));
    const qb::ThermalSpec spec = cfg.thermal();
    const qb::ThermalState closed = qb::gibbs_closed_form(cfg.battery, spec);
    const qb::ThermalState numeric = qb::gibbs_numeric(cfg.battery, spec);
    std::ostringstream os;
    os << "T = " << fmt(cfg.temperature) << ", beta = " << fmt(spec.beta()) << ", Z = " << fmt(closed.partition_function)
       << '\n';
    os << "rho(T), closed form:\n";
    print_matrix(os, closed.rho.matrix());
    os << "max |closed - exp(-beta H_B)/Z| = " << fmt(qb::max_abs(closed.rho.matrix() - numeric.rho.matrix())) << '\n';
    os << "C_l1 = " << fmt(qb::l1_coherence(closed.rho)) << '\n';
    std::cout << os.str();
    if (!g.out.empty()) {
        qb::harness::write_file(std::filesystem::path(g.out) / "thermal.txt", os.str());
    }
    return kOk;
}

int cmd_evolve(const GlobalOptions& g) {
    const qb::harness::RunConfig cfg = qb::harness::resolve_run_config(collect(g));
    const qb::harness::MetricTable table = qb::harness::run(cfg);
    if (g.out.empty()) {
        std::cout << qb::harness::to_csv(table);
        return kOk;
    }
    const std::filesystem::path dir(g.out);
    qb::harness::write_file(dir / "run.csv", qb::harness::to_csv(table));
    qb::harness::write_file(dir / "run.json", qb::harness::sidecar_json(qb::harness::to_key_values(cfg), "evolve"));
    std::cout << "wrote " << (dir / "run.csv").string() << '\n';
    return kOk;
}

int cmd_dephase(const GlobalOptions& g) {
    qb::harness::KeyValues kv = collect(g);
    const qb::harness::RunConfig cfg = qb::harness::resolve_run_config(kv);
    const qb::harness::MetricTable table = qb::harness::run_dephasing(cfg);
    if (g.out.empty()) {
        std::cout << qb::harness::to_csv(table);
        return kOk;
    }
    const std::filesystem::path dir(g.out);
    qb::harness::write_file(dir / "dephase.csv", qb::harness::to_csv(table));
    qb::harness::write_file(dir / "dephase.json", qb::harness::sidecar_json(qb::harness::to_key_values(cfg), "dephase"));
    std::cout << "wrote " << (dir / "dephase.csv").string() << '\n';
    return kOk;
}

int cmd_sweep(const GlobalOptions& g) {
    const qb::harness::SweepConfig cfg = qb::harness::resolve_sweep_config(collect(g));
    if (g.out.empty()) {
        throw qb::ConfigError("--out: sweep needs an output directory");
    }
    const auto result = qb::harness::sweep(cfg, g.out, qb::harness::sweep_threads(cfg.values.size()));
    std::cout << "wrote " << result.entries.size() << " tables and " << result.summary.string() << '\n';
    return kOk;
}

int cmd_validate(bool inject_fault) {
    qb::harness::ValidateOptions options;
    options.inject_gibbs_fault = inject_fault;
    const qb::harness::ValidationReport report = qb::harness::validate(options);
    std::cout << qb::harness::format_report(report);
    return report.all_passed() ? kOk : kValidationFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-qubit dipolar quantum battery simulator"};
    app.set_version_flag("--version", std::string(qb::harness::tool_version()));
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--config", g.config, "Key-value configuration file")->check(CLI::ExistingFile);
    app.add_option("--out", g.out, "Output directory");
    app.add_option("--mode", g.mode, "Evolution mode")->check(CLI::IsMember({"charger-only", "full"}));
    app.add_option("--rate-convention", g.rate_convention, "Dephasing rate convention")
        ->check(CLI::IsMember({"paper", "lindblad"}));
    app.add_option("--set", g.sets, "Override a configuration key (key=value), repeatable");

    bool inject_fault = false;
    auto* eigen = app.add_subcommand("eigen", "Closed-form and numeric spectrum of H_B");
    auto* thermal = app.add_subcommand("thermal", "Gibbs state, closed form vs matrix exponential");
    auto* evolve = app.add_subcommand("evolve", "Charging run: t,W,P,K,C table");
    auto* dephase = app.add_subcommand("dephase", "Open-system run under pure dephasing");
    auto* sweep = app.add_subcommand("sweep", "Parameter sweep, one table per axis value");
    auto* validate = app.add_subcommand("validate", "Run every oracle cross-check");
    validate->add_flag("--inject-gibbs-fault", inject_fault, "Debug: perturb a closed-form Gibbs element by 1e-3")
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (eigen->parsed()) {
            return cmd_eigen(g);
        }
        if (thermal->parsed()) {
            return cmd_thermal(g);
        }
        if (evolve->parsed()) {
            return cmd_evolve(g);
        }
        if (dephase->parsed()) {
            return cmd_dephase(g);
        }
        if (sweep->parsed()) {
            return cmd_sweep(g);
        }
        if (validate->parsed()) {
            return cmd_validate(inject_fault);
        }
    } catch (const qb::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const qb::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
    return kOk;
}
