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


#include "qbattery/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "qbattery/errors.hpp"

namespace qb::harness {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = s.find(',');
        const std::string_view item = trim(s.substr(0, comma));
        if (!item.empty()) {
            out.push_back(item);
        }
        if (comma == std::string_view::npos) {
            break;
        }
        s.remove_prefix(comma + 1);
    }
    return out;
}

double parse_real(std::string_view key, std::string_view text) {
    const std::string buffer(text);
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(buffer.c_str(), &end);
    if (buffer.empty() || end != buffer.c_str() + buffer.size() || errno == ERANGE || !std::isfinite(value)) {
        throw ConfigError(std::string(key) + ": expected a finite number, got '" + buffer + "'");
    }
    return value;
}

int parse_int(std::string_view key, std::string_view text) {
    const double value = parse_real(key, text);
    if (value != std::floor(value) || std::abs(value) > 1e9) {
        throw ConfigError(std::string(key) + ": expected an integer, got '" + std::string(text) + "'");
    }
    return static_cast<int>(value);
}

bool parse_bool(std::string_view key, std::string_view text) {
    if (text == "true" || text == "1" || text == "yes") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no") {
        return false;
    }
    throw ConfigError(std::string(key) + ": expected true/false, got '" + std::string(text) + "'");
}

const std::set<std::string, std::less<>>& known_keys() {
    static const std::set<std::string, std::less<>> keys{
        "description",       "battery.delta",     "battery.epsilon",         "battery.dm",
        "battery.field",     "charger.omega",     "thermal.temperature",     "run.mode",
        "run.outputs",       "grid.t_max",        "grid.n_steps",            "dephasing.gamma_b",
        "dephasing.gamma_c", "dephasing.gamma_phi", "dephasing.omega0",      "dephasing.rate_convention",
        "sweep.axis",        "sweep.values",      "sweep.pair_epsilon",
    };
    return keys;
}

template <typename Fn>
void with(const KeyValues& kv, std::string_view key, Fn&& fn) {
    if (const auto it = kv.find(key); it != kv.end()) {
        fn(it->second);
    }
}

void check_known(const KeyValues& kv) {
    for (const auto& [key, value] : kv) {
        if (!known_keys().contains(key)) {
            throw ConfigError(key + ": unknown configuration key");
        }
    }
}

}  // namespace

KeyValues parse_key_values(std::string_view text, std::string_view source) {
    KeyValues kv;
    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        auto where = [&] { return std::string(source) + ":" + std::to_string(line_no) + ": "; };
        if (eq == std::string_view::npos) {
            throw ConfigError(where() + "expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) {
            throw ConfigError(where() + "empty key");
        }
        if (!kv.emplace(key, value).second) {
            throw ConfigError(where() + key + ": duplicate key");
        }
    }
    return kv;
}

KeyValues load_key_values(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError(path.string() + ": cannot open configuration file");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_key_values(buffer.str(), path.string());
}

KeyValues merge(KeyValues base, const KeyValues& overrides) {
    for (const auto& [key, value] : overrides) {
        base.insert_or_assign(key, value);
    }
    return base;
}

std::string_view to_string(Metric metric) {
    switch (metric) {
        case Metric::Work:
            return "work";
        case Metric::Power:
            return "power";
        case Metric::Capacity:
            return "capacity";
        case Metric::Coherence:
            return "coherence";
        case Metric::PassiveErgotropy:
            return "passive_ergotropy";
        case Metric::DephasingWork:
            return "dephasing_work";
    }
    return "work";
}

Metric parse_metric(std::string_view text) {
    for (Metric m : {Metric::Work, Metric::Power, Metric::Capacity, Metric::Coherence, Metric::PassiveErgotropy,
                     Metric::DephasingWork}) {
        if (to_string(m) == text) {
            return m;
        }
    }
    throw ConfigError("run.outputs: unknown metric '" + std::string(text) + "'");
}

bool RunConfig::wants(Metric m) const {
    return std::find(outputs.begin(), outputs.end(), m) != outputs.end();
}

std::string_view to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::Temperature:
            return "T";
        case SweepAxis::DM:
            return "D";
        case SweepAxis::Field:
            return "B";
        case SweepAxis::Delta:
            return "delta";
        case SweepAxis::Epsilon:
            return "epsilon";
        case SweepAxis::GammaPhi:
            return "gamma_phi";
        case SweepAxis::Omega:
            return "omega";
    }
    return "T";
}

SweepAxis parse_sweep_axis(std::string_view text) {
    for (SweepAxis a : {SweepAxis::Temperature, SweepAxis::DM, SweepAxis::Field, SweepAxis::Delta,
                        SweepAxis::Epsilon, SweepAxis::GammaPhi, SweepAxis::Omega}) {
        if (to_string(a) == text) {
            return a;
        }
    }
    throw ConfigError("sweep.axis: expected one of T, D, B, delta, epsilon, gamma_phi, omega; got '" +
                      std::string(text) + "'");
}

void validate_config(const RunConfig& c) {
    auto finite = [](double x, const char* key) {
        if (!std::isfinite(x)) {
            throw ConfigError(std::string(key) + ": must be finite");
        }
    };
    finite(c.battery.delta, "battery.delta");
    finite(c.battery.epsilon, "battery.epsilon");
    finite(c.battery.dm, "battery.dm");
    finite(c.battery.field, "battery.field");
    if (!std::isfinite(c.charger.omega) || !(c.charger.omega > 0.0)) {
        throw ConfigError("charger.omega: must be finite and > 0");
    }
    if (!std::isfinite(c.temperature) || !(c.temperature > 0.0)) {
        throw ConfigError("thermal.temperature: must be finite and > 0");
    }
    if (!std::isfinite(c.grid.t_max) || !(c.grid.t_max > 0.0)) {
        throw ConfigError("grid.t_max: must be finite and > 0");
    }
    if (c.grid.n_steps < 2) {
        throw ConfigError("grid.n_steps: must be >= 2");
    }
    if (c.dephasing) {
        const DephasingParams& d = *c.dephasing;
        if (!(d.gamma_b >= 0.0) || !std::isfinite(d.gamma_b)) {
            throw ConfigError("dephasing.gamma_b: must be finite and >= 0");
        }
        if (!(d.gamma_c >= 0.0) || !std::isfinite(d.gamma_c)) {
            throw ConfigError("dephasing.gamma_c: must be finite and >= 0");
        }
        finite(d.omega0, "dephasing.omega0");
    }
    if (c.wants(Metric::DephasingWork) && !c.dephasing) {
        throw ConfigError("run.outputs: dephasing_work needs a dephasing.* section");
    }
}

void validate_config(const SweepConfig& c) {
    validate_config(c.base);
    if (c.values.empty()) {
        throw ConfigError("sweep.values: must not be empty");
    }
    for (double v : c.values) {
        validate_config(apply_axis(c, v));
    }
    if (c.axis == SweepAxis::GammaPhi && !c.base.dephasing) {
        throw ConfigError("sweep.axis: gamma_phi needs a dephasing.* section");
    }
}

RunConfig resolve_run_config(const KeyValues& kv) {
    check_known(kv);
    RunConfig c;
    with(kv, "battery.delta", [&](const auto& v) { c.battery.delta = parse_real("battery.delta", v); });
    with(kv, "battery.epsilon", [&](const auto& v) { c.battery.epsilon = parse_real("battery.epsilon", v); });
    with(kv, "battery.dm", [&](const auto& v) { c.battery.dm = parse_real("battery.dm", v); });
    with(kv, "battery.field", [&](const auto& v) { c.battery.field = parse_real("battery.field", v); });
    with(kv, "charger.omega", [&](const auto& v) { c.charger.omega = parse_real("charger.omega", v); });
    with(kv, "thermal.temperature", [&](const auto& v) { c.temperature = parse_real("thermal.temperature", v); });
    with(kv, "run.mode", [&](const auto& v) { c.mode = parse_evolution_mode(v); });
    with(kv, "grid.t_max", [&](const auto& v) { c.grid.t_max = parse_real("grid.t_max", v); });
    with(kv, "grid.n_steps", [&](const auto& v) { c.grid.n_steps = parse_int("grid.n_steps", v); });
    with(kv, "run.outputs", [&](const auto& v) {
        c.outputs.clear();
        for (std::string_view item : split_list(v)) {
            const Metric m = parse_metric(item);
            if (!c.wants(m)) {
                c.outputs.push_back(m);
            }
        }
    });

    const bool any_dephasing = std::any_of(kv.begin(), kv.end(), [](const auto& entry) {
        return entry.first.rfind("dephasing.", 0) == 0;
    });
    if (any_dephasing) {
        if (kv.contains("dephasing.gamma_phi") && (kv.contains("dephasing.gamma_b") || kv.contains("dephasing.gamma_c"))) {
            throw ConfigError("dephasing.gamma_phi: give either gamma_phi or gamma_b/gamma_c, not both");
        }
        DephasingParams d;
        with(kv, "dephasing.gamma_phi", [&](const auto& v) {
            const double g = parse_real("dephasing.gamma_phi", v);
            d.gamma_b = 0.5 * g;
            d.gamma_c = 0.5 * g;
        });
        with(kv, "dephasing.gamma_b", [&](const auto& v) { d.gamma_b = parse_real("dephasing.gamma_b", v); });
        with(kv, "dephasing.gamma_c", [&](const auto& v) { d.gamma_c = parse_real("dephasing.gamma_c", v); });
        with(kv, "dephasing.omega0", [&](const auto& v) { d.omega0 = parse_real("dephasing.omega0", v); });
        with(kv, "dephasing.rate_convention", [&](const auto& v) { d.convention = parse_rate_convention(v); });
        c.dephasing = d;
    }
    validate_config(c);
    return c;
}

SweepConfig resolve_sweep_config(const KeyValues& kv) {
    SweepConfig s;
    s.base = resolve_run_config(kv);
    const auto axis = kv.find("sweep.axis");
    if (axis == kv.end()) {
        throw ConfigError("sweep.axis: required for a sweep");
    }
    s.axis = parse_sweep_axis(axis->second);
    const auto values = kv.find("sweep.values");
    if (values == kv.end()) {
        throw ConfigError("sweep.values: required for a sweep");
    }
    for (std::string_view item : split_list(values->second)) {
        s.values.push_back(parse_real("sweep.values", item));
    }
    with(kv, "sweep.pair_epsilon", [&](const auto& v) { s.pair_epsilon = parse_bool("sweep.pair_epsilon", v); });
    validate_config(s);
    return s;
}

std::string format_number(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.15g", value);
    return buffer;
}

KeyValues to_key_values(const RunConfig& c) {
    KeyValues kv;
    kv["battery.delta"] = format_number(c.battery.delta);
    kv["battery.epsilon"] = format_number(c.battery.epsilon);
    kv["battery.dm"] = format_number(c.battery.dm);
    kv["battery.field"] = format_number(c.battery.field);
    kv["charger.omega"] = format_number(c.charger.omega);
    kv["thermal.temperature"] = format_number(c.temperature);
    kv["run.mode"] = std::string(to_string(c.mode));
    kv["grid.t_max"] = format_number(c.grid.t_max);
    kv["grid.n_steps"] = std::to_string(c.grid.n_steps);
    std::string outputs;
    for (Metric m : c.outputs) {
        outputs += (outputs.empty() ? "" : ",") + std::string(to_string(m));
    }
    kv["run.outputs"] = outputs;
    if (c.dephasing) {
        kv["dephasing.gamma_b"] = format_number(c.dephasing->gamma_b);
        kv["dephasing.gamma_c"] = format_number(c.dephasing->gamma_c);
        kv["dephasing.omega0"] = format_number(c.dephasing->omega0);
        kv["dephasing.rate_convention"] = std::string(to_string(c.dephasing->convention));
    }
    return kv;
}

KeyValues to_key_values(const SweepConfig& c) {
    KeyValues kv = to_key_values(c.base);
    kv["sweep.axis"] = std::string(to_string(c.axis));
    std::string values;
    for (double v : c.values) {
        values += (values.empty() ? "" : ",") + format_number(v);
    }
    kv["sweep.values"] = values;
    kv["sweep.pair_epsilon"] = c.pair_epsilon ? "true" : "false";
    return kv;
}

RunConfig apply_axis(const SweepConfig& sweep, double value) {
    RunConfig c = sweep.base;
    switch (sweep.axis) {
        case SweepAxis::Temperature:
            c.temperature = value;
            break;
        case SweepAxis::DM:
            c.battery.dm = value;
            break;
        case SweepAxis::Field:
            c.battery.field = value;
            break;
        case SweepAxis::Delta:
            c.battery.delta = value;
            if (sweep.pair_epsilon) {
                c.battery.epsilon = value;
            }
            break;
        case SweepAxis::Epsilon:
            c.battery.epsilon = value;
            break;
        case SweepAxis::GammaPhi:
            if (c.dephasing) {
                c.dephasing->gamma_b = 0.5 * value;
                c.dephasing->gamma_c = 0.5 * value;
            }
            break;
        case SweepAxis::Omega:
            c.charger.omega = value;
            break;
    }
    return c;
}

}  // namespace qb::harness
