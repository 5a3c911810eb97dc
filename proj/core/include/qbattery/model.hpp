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

#include "qbattery/operator.hpp"

namespace qb {

/// Couplings of the dipolar battery Hamiltonian, in energy units (hbar = k_B = 1).
/// The dipolar tensor is diag(delta - 3 epsilon, delta + 3 epsilon, -2 delta);
/// the DM vector and the field both point along z.
struct BatteryParams {
    double delta = 0.0;
    double epsilon = 0.0;
    double dm = 0.0;
    double field = 0.0;
};

struct ChargerParams {
    double omega = 1.0;
};

/// Closed-form spectrum of the battery Hamiltonian.
///
/// Levels are labelled as in the closed form, not sorted:
///   lambda1 = (delta + 3 eta) / 6,  lambda2 = (-delta + chi) / 6,
///   lambda3 = (-delta - chi) / 6,   lambda4 = (delta - 3 eta) / 6.
/// phi1/phi4 live in span{|00>, |11>}; phi2/phi3 in span{|01>, |10>}.
struct Spectrum {
    double eta = 0.0;  // sqrt(B^2 + epsilon^2)
    double chi = 0.0;  // sqrt(delta^2 + 9 D^2)
    std::array<double, 4> eigenvalues{};
    std::array<ComplexVector, 4> eigenvectors;
    double gamma_plus = 0.0;
    double gamma_minus = 0.0;
    // |chi / (-delta - 3iD)| = 1, so both flip-flop vectors normalize to 1/sqrt(2).
    double lambda_norm_plus = 0.0;
    double lambda_norm_minus = 0.0;
};

double eta_of(const BatteryParams& p);
double chi_of(const BatteryParams& p);

ComplexMatrix battery_hamiltonian(const BatteryParams& p);

/// Omega (sigma_x (x) 1 + 1 (x) sigma_x)
ComplexMatrix charging_hamiltonian(const ChargerParams& c);

/// (lambda1, lambda2, lambda3, lambda4); defined for every parameter set.
std::array<double, 4> closed_form_eigenvalues(const BatteryParams& p);

/// Full closed-form spectrum. Throws DegenerateClosedForm if epsilon == 0 or chi == 0.
Spectrum closed_form_spectrum(const BatteryParams& p);

/// Amplitude ratio <01|phi>/<10|phi> for phi2 (sign = +1) and phi3 (sign = -1).
Complex flip_flop_ratio(const BatteryParams& p, int sign);

}  // namespace qb
