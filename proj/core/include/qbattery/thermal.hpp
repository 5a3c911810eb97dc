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

#include <array>

#include "qbattery/density_matrix.hpp"
#include "qbattery/model.hpp"

namespace qb {

/// Canonical ensemble at temperature T (k_B = 1). beta = 0 is the
/// infinite-temperature state; temperature() then returns +inf.
class ThermalSpec {
public:
    /// Throws ConfigError unless temperature > 0 and finite.
    static ThermalSpec from_temperature(double temperature);
    /// Throws ConfigError unless beta >= 0 and finite.
    static ThermalSpec from_beta(double beta);

    double beta() const noexcept { return beta_; }
    double temperature() const noexcept;

private:
    explicit ThermalSpec(double beta) : beta_(beta) {}
    double beta_;
};

struct ThermalState {
    DensityMatrix rho;
    double partition_function;
    // Unnormalized Gibbs weights exp(-beta lambda_i). Closed form: in the
    // (lambda1..lambda4) labelling; numeric: in ascending eigenvalue order.
    std::array<double, 4> populations;
};

/// exp(-beta H_B) / Z through the eigendecomposition, shifted by the lowest
/// level before exponentiation.
ThermalState gibbs_numeric(const BatteryParams& p, const ThermalSpec& spec);

/// Unnormalized matrix elements of exp(-beta H_B) in the closed form.
struct GibbsElements {
    double rho11;
    double rho22;  // == rho33
    double rho44;
    double rho14;
    Complex rho23;
    double partition_function;
};

GibbsElements gibbs_elements(const BatteryParams& p, const ThermalSpec& spec);

/// Assembles rho(T) from gibbs_elements with structural zeros elsewhere.
ThermalState gibbs_closed_form(const BatteryParams& p, const ThermalSpec& spec);

}  // namespace qb
