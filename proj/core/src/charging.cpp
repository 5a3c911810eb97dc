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


#include "qbattery/charging.hpp"

#include <cmath>
#include <string>

#include "qbattery/errors.hpp"

namespace qb {

UnitaryEntries unitary_entries(const ChargerParams& c, double t) {
    const double phase = c.omega * t;
    const double cs = std::cos(phase);
    const double sn = std::sin(phase);
    return {cs * cs, -sn * sn, -std::sin(2.0 * phase) / 2.0};
}

ComplexMatrix charging_unitary(const ChargerParams& c, double t) {
    const UnitaryEntries e = unitary_entries(c, t);
    const Complex r = e.r;
    const Complex q = e.q;
    const Complex s(0.0, e.s);
    ComplexMatrix u(4, 4);
    // clang-format off
    u << r, s, s, q,
         s, r, q, s,
         s, q, r, s,
         q, s, s, r;
    // clang-format on
    return u;
}

std::string_view to_string(EvolutionMode mode) {
    switch (mode) {
        case EvolutionMode::ChargerOnly:
            return "charger-only";
        case EvolutionMode::Full:
            return "full";
    }
    return "charger-only";
}

EvolutionMode parse_evolution_mode(std::string_view text) {
    if (text == "charger-only") {
        return EvolutionMode::ChargerOnly;
    }
    if (text == "full") {
        return EvolutionMode::Full;
    }
    throw ConfigError("run.mode: expected 'charger-only' or 'full', got '" + std::string(text) + "'");
}

ComplexMatrix generator(const BatteryParams& p, const ChargerParams& c, EvolutionMode mode) {
    if (mode == EvolutionMode::ChargerOnly) {
        return charging_hamiltonian(c);
    }
    return battery_hamiltonian(p) + charging_hamiltonian(c);
}

ComplexMatrix propagator(const BatteryParams& p, const ChargerParams& c, EvolutionMode mode, double t) {
    if (mode == EvolutionMode::ChargerOnly) {
        return charging_unitary(c, t);
    }
    return unitary_propagator(generator(p, c, mode), t);
}

DensityMatrix evolve(const DensityMatrix& rho0, const BatteryParams& p, const ChargerParams& c,
                     EvolutionMode mode, double t) {
    if (t == 0.0) {
        return rho0;
    }
    const ComplexMatrix rho = conjugate(propagator(p, c, mode, t), rho0.matrix());
    return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

std::vector<double> uniform_grid(double t_max, int n_steps) {
    if (!(t_max > 0.0) || !std::isfinite(t_max)) {
        throw BadGrid("t_max must be finite and positive");
    }
    if (n_steps < 2) {
        throw BadGrid("n_steps must be at least 2");
    }
    std::vector<double> times(static_cast<std::size_t>(n_steps));
    const double dt = t_max / static_cast<double>(n_steps - 1);
    for (int i = 0; i < n_steps; ++i) {
        times[static_cast<std::size_t>(i)] = dt * i;
    }
    times.back() = t_max;
    return times;
}

Trajectory trajectory(const DensityMatrix& rho0, const BatteryParams& p, const ChargerParams& c,
                      EvolutionMode mode, double t_max, int n_steps) {
    Trajectory out;
    out.times = uniform_grid(t_max, n_steps);
    out.states.reserve(out.times.size());
    for (double t : out.times) {
        out.states.push_back(evolve(rho0, p, c, mode, t));
    }
    return out;
}

}  // namespace qb
