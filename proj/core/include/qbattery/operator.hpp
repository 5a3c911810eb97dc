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

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace qb {

using Complex = std::complex<double>;

// Dense complex matrix of dimension 2 or 4. Entries are row-major in the
// computational basis (|00>, |01>, |10>, |11>) for dim 4.
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Spectral decomposition of a Hermitian matrix.
///
/// Eigenvalues ascend. Eigenvectors are orthonormal columns with a fixed
/// phase: the largest-magnitude component (lowest index on ties) is real and
/// positive. Inside a cluster of degenerate eigenvalues the basis is obtained
/// by Gram-Schmidt over the projected unit vectors e_0, e_1, ... in index
/// order, so the output is a deterministic function of the input matrix.
struct HermitianEigen {
    Eigen::VectorXd eigenvalues;
    ComplexMatrix eigenvectors;
};

/// Throws DimMismatch unless m is square with dim 2 or 4.
void require_supported_dim(const ComplexMatrix& m);

/// max_ij |m - m^dagger|
double hermiticity_error(const ComplexMatrix& m);

double max_abs(const ComplexMatrix& m);

HermitianEigen hermitian_eigen(const ComplexMatrix& m);

/// V f(Lambda) V^dagger. Result is Hermitian for real-valued f and unitary
/// when f(x) = exp(i theta x).
ComplexMatrix hermitian_function(const ComplexMatrix& m, const std::function<Complex(double)>& f);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// exp(-i h t) for Hermitian h.
ComplexMatrix unitary_propagator(const ComplexMatrix& h, double t);

/// U rho U^dagger
ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& rho);

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qb
