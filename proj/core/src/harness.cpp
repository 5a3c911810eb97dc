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


#include "qbattery/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "qbattery/errors.hpp"
#include "qbattery/metrics.hpp"

#ifndef QBATTERY_VERSION
#define QBATTERY_VERSION "0.0.0"
#endif

namespace qb::harness {
namespace {

double peak(const std::vector<double>& xs) {
    return xs.empty() ? 0.0 : *std::max_element(xs.begin(), xs.end());
}

// Grid refinement factor so that the integrator step stays below max_step.
int refinement(const GridSpec& grid, double max_step) {
    const double dt = grid.t_max / static_cast<double>(grid.n_steps - 1);
    return std::max(1, static_cast<int>(std::ceil(dt / max_step - 1e-9)));
}

nlohmann::json to_json_value(const std::string& text) {
    if (text == "true" || text == "false") {
        return text == "true";
    }
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (!text.empty() && end == text.c_str() + text.size() && std::isfinite(value)) {
        if (value == std::floor(value) && std::abs(value) < 1e15 && text.find_first_of(".eE") == std::string::npos) {
            return static_cast<long long>(value);
        }
        return value;
    }
    return text;
}

}  // namespace

std::string_view tool_version() {
    return QBATTERY_VERSION;
}

std::vector<double> MetricTable::column(std::string_view name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) {
        throw std::out_of_range("no column named " + std::string(name));
    }
    const auto idx = static_cast<std::size_t>(it - columns.begin());
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        out.push_back(row[idx]);
    }
    return out;
}

bool MetricTable::has_column(std::string_view name) const {
    return std::find(columns.begin(), columns.end(), name) != columns.end();
}

MetricTable run(const RunConfig& config) {
    validate_config(config);
    const ComplexMatrix h_b = battery_hamiltonian(config.battery);
    const ComplexMatrix g = generator(config.battery, config.charger, config.mode);
    const DensityMatrix rho_T = gibbs_numeric(config.battery, config.thermal()).rho;
    const double k = capacity(h_b);

    std::optional<DephasingDerived> deph;
    if (config.wants(Metric::DephasingWork)) {
        deph = effective_coupling(config.battery, *config.dephasing);
    }

    MetricTable table;
    table.columns = {"t", "W", "P", "K", "C"};
    if (config.wants(Metric::PassiveErgotropy)) {
        table.columns.emplace_back("W_passive");
    }
    if (deph) {
        table.columns.emplace_back("W_dephase");
    }

    for (double t : uniform_grid(config.grid.t_max, config.grid.n_steps)) {
        const DensityMatrix rho = evolve(rho_T, config.battery, config.charger, config.mode, t);
        std::vector<double> row{t, stored_work(rho, rho_T, h_b), instantaneous_power(rho, g, h_b), k,
                                l1_coherence(rho)};
        if (config.wants(Metric::PassiveErgotropy)) {
            row.push_back(passive_ergotropy(rho, h_b).extractable);
        }
        if (deph) {
            row.push_back(closed_form_ergotropy(t, *deph));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

MetricTable run_dephasing(const RunConfig& config) {
    validate_config(config);
    if (!config.dephasing) {
        throw ConfigError("dephasing.gamma_phi: the dephase command needs a dephasing.* section");
    }
    const DephasingParams& dp = *config.dephasing;
    const DephasingDerived d = effective_coupling(config.battery, dp);
    const std::vector<double> times = uniform_grid(config.grid.t_max, config.grid.n_steps);
    const int n_out = config.grid.n_steps;

    const int sub_k = refinement(config.grid, max_subspace_step(d, dp));
    const SubspaceTrajectory sub =
        integrate_subspace(SubspaceState{1.0, {0.0, 0.0}}, d, dp, config.grid.t_max, sub_k * (n_out - 1) + 1);

    const int lin_k = refinement(config.grid, max_lindblad_step(config.battery, dp));
    const DensityMatrix rho0 = DensityMatrix::basis_state(2);
    const Trajectory open = integrate_lindblad(rho0, config.battery, dp, config.grid.t_max, lin_k * (n_out - 1) + 1);
    const ComplexMatrix h_bc = battery_charger_hamiltonian(config.battery, dp);
    const double e0 = energy(rho0.matrix(), h_bc);

    MetricTable table;
    table.columns = {"t", "z", "W", "P", "u", "v_re", "v_im", "W_subspace", "W_stored"};
    for (int i = 0; i < n_out; ++i) {
        const double t = times[static_cast<std::size_t>(i)];
        const SubspaceState& s = sub.states[static_cast<std::size_t>(i * sub_k)];
        const DensityMatrix& rho = open.states[static_cast<std::size_t>(i * lin_k)];
        table.rows.push_back({t, closed_form_z(t, d), closed_form_ergotropy(t, d), closed_form_power(t, d), s.u,
                              s.v.real(), s.v.imag(), subspace_ergotropy(s, d), energy(rho.matrix(), h_bc) - e0});
    }
    return table;
}

std::string to_csv(const MetricTable& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out += (i ? "," : "") + table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            // Collapse -0 so reruns and platforms agree byte for byte.
            const double value = row[i] == 0.0 ? 0.0 : row[i];
            out += (i ? "," : "") + format_number(value);
        }
        out += '\n';
    }
    return out;
}

std::string sidecar_json(const KeyValues& resolved, std::string_view command) {
    nlohmann::json config = nlohmann::json::object();
    for (const auto& [key, value] : resolved) {
        config[key] = to_json_value(value);
    }
    nlohmann::json doc;
    doc["tool"] = "qbattery";
    doc["version"] = std::string(tool_version());
    doc["command"] = std::string(command);
    doc["config"] = std::move(config);
    return doc.dump(2) + "\n";
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

int sweep_threads(std::size_t n_values) {
    const int fallback = static_cast<int>(std::max<std::size_t>(1, n_values));
    const char* env = std::getenv("QB_THREADS");
    if (env == nullptr || *env == '\0') {
        return fallback;
    }
    char* end = nullptr;
    errno = 0;
    const long value = std::strtol(env, &end, 10);
    if (*end != '\0' || errno == ERANGE || value <= 0) {
        throw ConfigError("QB_THREADS: expected a positive integer, got '" + std::string(env) + "'");
    }
    return static_cast<int>(std::min<long>(value, 1024));
}

SweepResult sweep(const SweepConfig& config, const std::filesystem::path& out_dir, int threads) {
    validate_config(config);
    std::filesystem::create_directories(out_dir);

    const std::size_t n = config.values.size();
    const std::string axis(to_string(config.axis));
    std::vector<SweepEntry> entries(n);
    std::vector<std::exception_ptr> failures(n);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                const double value = config.values[i];
                const RunConfig job = apply_axis(config, value);
                const std::string stem = axis + "=" + format_number(value);
                const MetricTable table = run(job);

                SweepEntry& e = entries[i];
                e.value = value;
                e.csv = out_dir / (stem + ".csv");
                e.peak_work = peak(table.column("W"));
                e.peak_coherence = peak(table.column("C"));
                e.capacity = table.rows.front()[3];
                write_file(e.csv, to_csv(table));
                if (job.dephasing) {
                    const MetricTable open = run_dephasing(job);
                    e.peak_dephasing_work = peak(open.column("W"));
                    write_file(out_dir / (stem + ".dephase.csv"), to_csv(open));
                }
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };

    const int workers = std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(n, 1)));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }
    for (const auto& f : failures) {
        if (f) {
            std::rethrow_exception(f);
        }
    }

    const bool with_dephasing = config.base.dephasing.has_value();
    std::string summary = axis + ",peak_W,peak_C,K" + (with_dephasing ? ",peak_W_dephase" : "") + "\n";
    for (const SweepEntry& e : entries) {
        summary += format_number(e.value) + "," + format_number(e.peak_work) + "," + format_number(e.peak_coherence) +
                   "," + format_number(e.capacity == 0.0 ? 0.0 : e.capacity);
        if (with_dephasing) {
            summary += "," + format_number(e.peak_dephasing_work.value_or(0.0));
        }
        summary += "\n";
    }
    SweepResult result{std::move(entries), out_dir / "summary.csv"};
    write_file(result.summary, summary);
    write_file(out_dir / "sweep.json", sidecar_json(to_key_values(config), "sweep"));
    return result;
}

}  // namespace qb::harness
