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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qbattery/charging.hpp"
#include "qbattery/dephasing.hpp"
#include "qbattery/model.hpp"
#include "qbattery/thermal.hpp"

namespace qb::harness {

// Flat "dotted.key = value" pairs. '#' starts a comment; blank lines are ignored.
using KeyValues = std::map<std::string, std::string, std::less<>>;

/// Throws ConfigError with "<source>:<line>: ..." on malformed lines or duplicate keys.
KeyValues parse_key_values(std::string_view text, std::string_view source = "<config>");
KeyValues load_key_values(const std::filesystem::path& path);

/// `overrides` wins on conflicts.
KeyValues merge(KeyValues base, const KeyValues& overrides);

enum class Metric { Work, Power, Capacity, Coherence, PassiveErgotropy, DephasingWork };

std::string_view to_string(Metric metric);
Metric parse_metric(std::string_view text);

struct GridSpec {
    double t_max = 3.141592653589793;
    int n_steps = 1001;
};

struct RunConfig {
    BatteryParams battery{2.0, 2.0, 1.0, 1.0};
    ChargerParams charger{1.0};
    double temperature = 0.5;
    EvolutionMode mode = EvolutionMode::ChargerOnly;
    std::optional<DephasingParams> dephasing;
    GridSpec grid;
    std::vector<Metric> outputs{Metric::Work, Metric::Power, Metric::Capacity, Metric::Coherence};

    ThermalSpec thermal() const { return ThermalSpec::from_temperature(temperature); }
    bool wants(Metric m) const;
};

enum class SweepAxis { Temperature, DM, Field, Delta, Epsilon, GammaPhi, Omega };

/// Axis names as written in config files and output file names: T, D, B,
/// delta, epsilon, gamma_phi, omega.
std::string_view to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(std::string_view text);

struct SweepConfig {
    RunConfig base;
    SweepAxis axis = SweepAxis::Temperature;
    std::vector<double> values;
    bool pair_epsilon = false;  // sweeping delta also sets epsilon
};

/// Field-level validation. Throws ConfigError naming the offending key.
void validate_config(const RunConfig& config);
void validate_config(const SweepConfig& config);

RunConfig resolve_run_config(const KeyValues& kv);
/// Requires sweep.axis and sweep.values.
SweepConfig resolve_sweep_config(const KeyValues& kv);

/// Canonical key/value form of a resolved configuration.
KeyValues to_key_values(const RunConfig& config);
KeyValues to_key_values(const SweepConfig& config);

/// Base config with `axis` set to `value`.
RunConfig apply_axis(const SweepConfig& sweep, double value);

/// "%.15g"
std::string format_number(double value);

}  // namespace qb::harness
