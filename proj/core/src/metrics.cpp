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


#include "qbattery/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qbattery/errors.hpp"

namespace qb {
namespace {

double real_trace(const Complex& value, const char* what) {
    if (std::abs(value.imag()) > tol::imaginary_residue) {
        std::ostringstream os;
        os << what << " has imaginary part " << value.imag();
        throw NonRealTrace(os.str());
    }
    return value.real();
}

}  // namespace

double energy(const ComplexMatrix& rho, const ComplexMatrix& h) {
    return real_trace((rho * h).trace(), "Tr[rho H]");
}

double stored_work(const DensityMatrix& rho_t, const DensityMatrix& rho_T, const ComplexMatrix& h_b) {
    return energy(rho_t.matrix(), h_b) - energy(rho_T.matrix(), h_b);
}

double instantaneous_power(const DensityMatrix& rho_t, const ComplexMatrix& generator, const ComplexMatrix& h_b) {
    const Complex value = Complex(0.0, -1.0) * (commutator(generator, rho_t.matrix()) * h_b).trace();
    return real_trace(value, "power");
}

double capacity(const ComplexMatrix& h_b) {
    return h_b(3, 3).real() - h_b(0, 0).real();
}

double l1_coherence(const DensityMatrix& rho, const CoherenceSpec& spec) {
    const ComplexMatrix& m = rho.matrix();
    double sum = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (i != j) {
                sum += std::abs(m(i, j));
            }
        }
    }
    return sum / spec.c_max;
}

PassiveState passive_ergotropy(const DensityMatrix& rho, const ComplexMatrix& h_b) {
    const HermitianEigen levels = hermitian_eigen(h_b);  // ascending energies
    Eigen::VectorXd populations = rho.spectrum();       // ascending
    std::sort(populations.begin(), populations.end(), std::greater<>());
    populations = populations.cwiseMax(0.0);
    populations /= populations.sum();

    const ComplexMatrix sigma =
        levels.eigenvectors * populations.cast<Complex>().asDiagonal() * levels.eigenvectors.adjoint();
    const double passive_energy = populations.dot(levels.eigenvalues);
    const double extractable = std::max(0.0, energy(rho.matrix(), h_b) - passive_energy);
    return PassiveState{DensityMatrix(0.5 * (sigma + sigma.adjoint())), extractable};
}

}  // namespace qb
