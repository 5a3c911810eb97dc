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


#include "qbattery/density_matrix.hpp"

#include <cmath>
#include <sstream>

#include "qbattery/errors.hpp"

namespace qb {

DensityMatrix::DensityMatrix(ComplexMatrix m, StateTolerance tolerance) : m_(std::move(m)) {
    if (m_.rows() != 4 || m_.cols() != 4) {
        throw InvalidState("density matrix must be 4x4");
    }
    if (!m_.allFinite()) {
        throw InvalidState("density matrix has non-finite entries");
    }
    const double herm = hermiticity_error(m_);
    if (herm > tolerance.hermiticity) {
        std::ostringstream os;
        os << "density matrix is not Hermitian (" << herm << ")";
        throw InvalidState(os.str());
    }
    const Complex tr = m_.trace();
    if (std::abs(tr - 1.0) > tolerance.trace) {
        std::ostringstream os;
        os << "density matrix trace " << tr << " != 1";
        throw InvalidState(os.str());
    }
    const double lowest = spectrum()(0);
    if (lowest < -tolerance.psd) {
        std::ostringstream os;
        os << "density matrix has negative eigenvalue " << lowest;
        throw InvalidState(os.str());
    }
}

DensityMatrix DensityMatrix::maximally_mixed() {
    return DensityMatrix(ComplexMatrix::Identity(4, 4) / 4.0);
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
    if (psi.size() != 4) {
        throw InvalidState("pure state must have 4 amplitudes");
    }
    const double norm = psi.norm();
    if (norm == 0.0) {
        throw InvalidState("pure state has zero norm");
    }
    const ComplexVector unit = psi / norm;
    return DensityMatrix(unit * unit.adjoint());
}

DensityMatrix DensityMatrix::basis_state(int index) {
    if (index < 0 || index > 3) {
        throw InvalidState("basis index out of range");
    }
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(index, index) = 1.0;
    return DensityMatrix(std::move(m));
}

Eigen::VectorXd DensityMatrix::spectrum() const {
    const ComplexMatrix sym = 0.5 * (m_ + m_.adjoint());
    return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(sym, Eigen::EigenvaluesOnly).eigenvalues();
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    const ComplexMatrix diff = a - b;
    const ComplexMatrix sym = 0.5 * (diff + diff.adjoint());
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(sym, Eigen::EigenvaluesOnly).eigenvalues();
    return 0.5 * ev.cwiseAbs().sum();
}

}  // namespace qb
