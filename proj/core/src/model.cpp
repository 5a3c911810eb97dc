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


#include "qbattery/model.hpp"

#include <cmath>

#include "qbattery/errors.hpp"

namespace qb {
namespace {

constexpr int k00 = 0;
constexpr int k01 = 1;
constexpr int k10 = 2;
constexpr int k11 = 3;

ComplexVector normalized(ComplexVector v) {
    return v / v.norm();
}

}  // namespace

double eta_of(const BatteryParams& p) {
    return std::hypot(p.field, p.epsilon);
}

double chi_of(const BatteryParams& p) {
    return std::hypot(p.delta, 3.0 * p.dm);
}

ComplexMatrix battery_hamiltonian(const BatteryParams& p) {
    const double d6 = p.delta / 6.0;
    const Complex flip(-d6, 0.5 * p.dm);  // <01|H|10>
    ComplexMatrix h = ComplexMatrix::Zero(4, 4);
    h(k00, k00) = (p.delta + 3.0 * p.field) / 6.0;
    h(k01, k01) = -d6;
    h(k10, k10) = -d6;
    h(k11, k11) = (p.delta - 3.0 * p.field) / 6.0;
    h(k00, k11) = 0.5 * p.epsilon;
    h(k11, k00) = 0.5 * p.epsilon;
    h(k01, k10) = flip;
    h(k10, k01) = std::conj(flip);
    return h;
}

ComplexMatrix charging_hamiltonian(const ChargerParams& c) {
    const ComplexMatrix one = pauli::identity();
    return c.omega * (kron(pauli::x(), one) + kron(one, pauli::x()));
}

std::array<double, 4> closed_form_eigenvalues(const BatteryParams& p) {
    const double eta = eta_of(p);
    const double chi = chi_of(p);
    return {(p.delta + 3.0 * eta) / 6.0, (-p.delta + chi) / 6.0, (-p.delta - chi) / 6.0,
            (p.delta - 3.0 * eta) / 6.0};
}

Complex flip_flop_ratio(const BatteryParams& p, int sign) {
    const double chi = chi_of(p);
    return static_cast<double>(sign) * chi / Complex(-p.delta, -3.0 * p.dm);
}

Spectrum closed_form_spectrum(const BatteryParams& p) {
    Spectrum s;
    s.eta = eta_of(p);
    s.chi = chi_of(p);
    s.eigenvalues = closed_form_eigenvalues(p);
    if (p.epsilon == 0.0) {
        throw DegenerateClosedForm("closed-form eigenvectors need epsilon != 0");
    }
    if (s.chi == 0.0) {
        throw DegenerateClosedForm("closed-form eigenvectors need chi = sqrt(delta^2 + 9 D^2) != 0");
    }

    const double ratio_plus = (p.field + s.eta) / p.epsilon;
    const double ratio_minus = (p.field - s.eta) / p.epsilon;
    s.gamma_plus = 1.0 / std::sqrt(1.0 + ratio_plus * ratio_plus);
    s.gamma_minus = 1.0 / std::sqrt(1.0 + ratio_minus * ratio_minus);

    auto outer = [](double ratio) {
        ComplexVector v = ComplexVector::Zero(4);
        v(k00) = ratio;
        v(k11) = 1.0;
        return v;
    };
    auto inner = [](Complex ratio) {
        ComplexVector v = ComplexVector::Zero(4);
        v(k01) = ratio;
        v(k10) = 1.0;
        return v;
    };

    const ComplexVector phi2 = inner(flip_flop_ratio(p, +1));
    const ComplexVector phi3 = inner(flip_flop_ratio(p, -1));
    s.lambda_norm_plus = 1.0 / phi2.norm();
    s.lambda_norm_minus = 1.0 / phi3.norm();

    s.eigenvectors[0] = s.gamma_plus * outer(ratio_plus);
    s.eigenvectors[1] = normalized(phi2);
    s.eigenvectors[2] = normalized(phi3);
    s.eigenvectors[3] = s.gamma_minus * outer(ratio_minus);
    return s;
}

}  // namespace qb
