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

#include "qbattery/operator.hpp"
#include "qbattery/tolerances.hpp"

namespace qb {

struct StateTolerance {
    double hermiticity = tol::algebraic;
    double trace = tol::algebraic;
    double psd = tol::psd_slack;
};

/// Two-qubit density matrix: 4x4, Hermitian, unit trace, positive
/// semidefinite. Instances are validated on construction and immutable.
class DensityMatrix {
public:
    /// Throws InvalidState if m violates any invariant under `tolerance`.
    explicit DensityMatrix(ComplexMatrix m, StateTolerance tolerance = {});

    static DensityMatrix maximally_mixed();
    static DensityMatrix pure(const ComplexVector& psi);
    /// |index><index| in the computational basis.
    static DensityMatrix basis_state(int index);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    Complex operator()(int row, int col) const { return m_(row, col); }

    /// Real eigenvalues, ascending.
    Eigen::VectorXd spectrum() const;

private:
    ComplexMatrix m_;
};

/// Half the trace norm of a - b.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qb
