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

#include <string_view>
#include <vector>

#include "qbattery/density_matrix.hpp"
#include "qbattery/model.hpp"

namespace qb {

/// r = cos^2(Omega t), q = -sin^2(Omega t), s = -sin(2 Omega t) / 2.
struct UnitaryEntries {
    double r;
    double q;
    double s;
};

UnitaryEntries unitary_entries(const ChargerParams& c, double t);

/// Charger-only propagator exp(-i H_c t):
///
///     | r   is  is  q  |
///     | is  r   q   is |
///     | is  q   r   is |
///     | q   is  is  r  |
ComplexMatrix charging_unitary(const ChargerParams& c, double t);

enum class EvolutionMode {
    ChargerOnly,  // rho(t) = U_c(t) rho U_c(t)^dagger
    Full,         // generator H_B + H_c
};

std::string_view to_string(EvolutionMode mode);
/// Accepts "charger-only" / "full". Throws ConfigError otherwise.
EvolutionMode parse_evolution_mode(std::string_view text);

/// Hamiltonian that generates the evolution in `mode`.
ComplexMatrix generator(const BatteryParams& p, const ChargerParams& c, EvolutionMode mode);

ComplexMatrix propagator(const BatteryParams& p, const ChargerParams& c, EvolutionMode mode, double t);

DensityMatrix evolve(const DensityMatrix& rho0, const BatteryParams& p, const ChargerParams& c,
                     EvolutionMode mode, double t);

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
};

/// Uniform grid 0, t_max/(n-1), ..., t_max. Throws BadGrid unless t_max > 0 and n_steps >= 2.
std::vector<double> uniform_grid(double t_max, int n_steps);

Trajectory trajectory(const DensityMatrix& rho0, const BatteryParams& p, const ChargerParams& c,
                      EvolutionMode mode, double t_max, int n_steps);

}  // namespace qb
