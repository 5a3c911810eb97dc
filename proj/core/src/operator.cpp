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


#include "qbattery/operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qbattery/errors.hpp"
#include "qbattery/tolerances.hpp"

namespace qb {
namespace {

void require_hermitian(const ComplexMatrix& m) {
    require_supported_dim(m);
    const double err = hermiticity_error(m);
    if (err > tol::structural) {
        throw NonHermitianInput("matrix is not Hermitian (max |M - M^dagger| = " + std::to_string(err) + ")");
    }
}

// Largest-magnitude component made real positive; first index wins ties.
void fix_phase(Eigen::Ref<ComplexVector> v) {
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double mag = std::abs(v(i));
        if (mag > best + tol::algebraic) {
            best = mag;
            pivot = i;
        }
    }
    if (best > 0.0) {
        v *= std::conj(v(pivot)) / best;
    }
}

// Replace a degenerate block's basis by Gram-Schmidt over e_0, e_1, ... projected
// onto the block's span.
void canonicalize_block(ComplexMatrix& vectors, Eigen::Index first, Eigen::Index count) {
    const Eigen::Index n = vectors.rows();
    const ComplexMatrix block = vectors.middleCols(first, count);
    const ComplexMatrix projector = block * block.adjoint();
    ComplexMatrix basis(n, count);
    Eigen::Index accepted = 0;
    for (Eigen::Index j = 0; j < n && accepted < count; ++j) {
        ComplexVector w = projector.col(j);
        for (Eigen::Index k = 0; k < accepted; ++k) {
            w -= basis.col(k) * basis.col(k).dot(w);
        }
        const double norm = w.norm();
        if (norm > 1e-6) {
            basis.col(accepted++) = w / norm;
        }
    }
    vectors.middleCols(first, count) = basis;
}

}  // namespace

void require_supported_dim(const ComplexMatrix& m) {
    if (m.rows() != m.cols() || (m.rows() != 2 && m.rows() != 4)) {
        throw DimMismatch("expected a 2x2 or 4x4 matrix, got " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()));
    }
}

double hermiticity_error(const ComplexMatrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
    require_hermitian(m);
    const ComplexMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw NonHermitianInput("eigensolver failed to converge");
    }

    HermitianEigen out{solver.eigenvalues(), solver.eigenvectors()};
    const Eigen::Index n = out.eigenvalues.size();
    const double scale = std::max(1.0, out.eigenvalues.cwiseAbs().maxCoeff());

    for (Eigen::Index first = 0; first < n;) {
        Eigen::Index last = first + 1;
        while (last < n && out.eigenvalues(last) - out.eigenvalues(last - 1) <= tol::degeneracy * scale) {
            ++last;
        }
        if (last - first > 1) {
            canonicalize_block(out.eigenvectors, first, last - first);
        }
        first = last;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        fix_phase(out.eigenvectors.col(i));
    }
    return out;
}

ComplexMatrix hermitian_function(const ComplexMatrix& m, const std::function<Complex(double)>& f) {
    const HermitianEigen eig = hermitian_eigen(m);
    ComplexVector values(eig.eigenvalues.size());
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        values(i) = f(eig.eigenvalues(i));
    }
    return eig.eigenvectors * values.asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
        throw DimMismatch("commutator operands differ in shape");
    }
    return a * b - b * a;
}

ComplexMatrix unitary_propagator(const ComplexMatrix& h, double t) {
    return hermitian_function(h, [t](double lambda) { return std::exp(Complex(0.0, -lambda * t)); });
}

ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& rho) {
    return u * rho * u.adjoint();
}

namespace pauli {

ComplexMatrix identity() {
    return ComplexMatrix::Identity(2, 2);
}

ComplexMatrix x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

ComplexMatrix y() {
    ComplexMatrix m(2, 2);
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return m;
}

ComplexMatrix z() {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

}  // namespace pauli

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace qb
