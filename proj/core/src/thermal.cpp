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


#include "qbattery/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qbattery/errors.hpp"

namespace qb {
namespace {

// sinh(x a) / x, continuous at x = 0.
double sinh_over(double x, double a) {
    if (x == 0.0) {
        return a;
    }
    return std::sinh(x * a) / x;
}

}  // namespace

ThermalSpec ThermalSpec::from_temperature(double temperature) {
    if (!std::isfinite(temperature) || temperature <= 0.0) {
        throw ConfigError("thermal.temperature must be a finite positive number");
    }
    return ThermalSpec(1.0 / temperature);
}

ThermalSpec ThermalSpec::from_beta(double beta) {
    if (!std::isfinite(beta) || beta < 0.0) {
        throw ConfigError("beta must be finite and non-negative");
    }
    return ThermalSpec(beta);
}

double ThermalSpec::temperature() const noexcept {
    return beta_ == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / beta_;
}

ThermalState gibbs_numeric(const BatteryParams& p, const ThermalSpec& spec) {
    const HermitianEigen eig = hermitian_eigen(battery_hamiltonian(p));
    const double beta = spec.beta();
    const double lowest = eig.eigenvalues(0);

    Eigen::VectorXd shifted(4);
    for (int i = 0; i < 4; ++i) {
        shifted(i) = std::exp(-beta * (eig.eigenvalues(i) - lowest));
    }
    const double z_shifted = shifted.sum();
    const ComplexMatrix rho =
        eig.eigenvectors * (shifted / z_shifted).cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();

    const double scale = std::exp(-beta * lowest);
    std::array<double, 4> weights{};
    for (int i = 0; i < 4; ++i) {
        weights[i] = shifted(i) * scale;
    }
    return ThermalState{DensityMatrix(0.5 * (rho + rho.adjoint())), z_shifted * scale, weights};
}

GibbsElements gibbs_elements(const BatteryParams& p, const ThermalSpec& spec) {
    const double beta = spec.beta();
    const double eta = eta_of(p);
    const double chi = chi_of(p);
    const double outer = std::exp(-beta * p.delta / 6.0);
    const double inner = std::exp(beta * p.delta / 6.0);
    const double ch_eta = std::cosh(eta * beta / 2.0);
    const double sh_eta = sinh_over(eta, beta / 2.0);  // sinh(eta beta/2) / eta
    const double ch_chi = std::cosh(chi * beta / 6.0);
    const double sh_chi = sinh_over(chi, beta / 6.0);  // sinh(chi beta/6) / chi

    GibbsElements e{};
    e.rho11 = outer * (ch_eta - p.field * sh_eta);
    e.rho22 = inner * ch_chi;
    e.rho44 = outer * (ch_eta + p.field * sh_eta);
    e.rho14 = -p.epsilon * outer * sh_eta;
    e.rho23 = Complex(p.delta, -3.0 * p.dm) * inner * sh_chi;
    e.partition_function = 2.0 * outer * ch_eta + 2.0 * inner * ch_chi;
    return e;
}

ThermalState gibbs_closed_form(const BatteryParams& p, const ThermalSpec& spec) {
    const GibbsElements e = gibbs_elements(p, spec);
    const double z = e.partition_function;

    ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
    rho(0, 0) = e.rho11 / z;
    rho(1, 1) = e.rho22 / z;
    rho(2, 2) = e.rho22 / z;
    rho(3, 3) = e.rho44 / z;
    rho(0, 3) = e.rho14 / z;
    rho(3, 0) = e.rho14 / z;
    rho(1, 2) = e.rho23 / z;
    rho(2, 1) = std::conj(e.rho23) / z;

    const auto levels = closed_form_eigenvalues(p);
    std::array<double, 4> weights{};
    std::transform(levels.begin(), levels.end(), weights.begin(),
                   [beta = spec.beta()](double lambda) { return std::exp(-beta * lambda); });
    return ThermalState{DensityMatrix(std::move(rho)), z, weights};
}

}  // namespace qb
