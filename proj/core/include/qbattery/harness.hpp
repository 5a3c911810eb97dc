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


#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qbattery/config.hpp"

namespace qb::harness {

std::string_view tool_version();

struct MetricTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    /// Throws std::out_of_range for unknown columns.
    std::vector<double> column(std::string_view name) const;
    bool has_column(std::string_view name) const;
};

/// Thermal init, evolution and metrics at every grid time. Columns are
/// t,W,P,K,C followed by W_passive and W_dephase when requested.
MetricTable run(const RunConfig& config);

/// Open-system run: closed forms, RK4 subspace trajectory and the 4x4
/// Lindblad trajectory on the config grid. Requires config.dephasing.
/// Columns: t,z,W,P,u,v_re,v_im,W_subspace,W_stored.
MetricTable run_dephasing(const RunConfig& config);

/// 15 significant digits, LF line endings.
std::string to_csv(const MetricTable& table);

std::string sidecar_json(const KeyValues& resolved, std::string_view command);

/// Writes bytes verbatim (binary mode).
void write_file(const std::filesystem::path& path, std::string_view contents);

struct SweepEntry {
    double value = 0.0;
    std::filesystem::path csv;
    double peak_work = 0.0;
    double peak_coherence = 0.0;
    double capacity = 0.0;
    std::optional<double> peak_dephasing_work;
};

struct SweepResult {
    std::vector<SweepEntry> entries;
    std::filesystem::path summary;
};

/// Number of sweep workers: QB_THREADS if set to a positive integer, else n_values.
int sweep_threads(std::size_t n_values);

/// Runs every axis value as an independent job writing `<axis>=<value>.csv`,
/// then writes summary.csv (one row per value, axis order) and sweep.json.
SweepResult sweep(const SweepConfig& config, const std::filesystem::path& out_dir, int threads);

struct CheckResult {
    std::string name;
    bool passed = false;
    double residual = 0.0;
    double tolerance = 0.0;
    std::string note;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
};

struct ValidateOptions {
    std::uint64_t seed = 20260301;
    int draws = 1000;
    // Debug hook: perturb the closed-form rho_11 by 1e-3 before the Gibbs check.
    bool inject_gibbs_fault = false;
};

ValidationReport validate(const ValidateOptions& options = {});
std::string format_report(const ValidationReport& report);

}  // namespace qb::harness
