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


#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qbattery/errors.hpp"
#include "qbattery/model.hpp"

namespace {

using qb::BatteryParams;
using qb::Complex;
using qb::ComplexMatrix;

TEST(BatteryHamiltonian, ZeroParametersGiveZeroMatrix) {
    EXPECT_EQ(qb::max_abs(qb::battery_hamiltonian({})), 0.0);
}

TEST(BatteryHamiltonian, ExplicitEntries) {
    const ComplexMatrix h = qb::battery_hamiltonian({6.0, 4.0, 2.0, 1.0});
    EXPECT_DOUBLE_EQ(h(0, 0).real(), 1.5);
    EXPECT_DOUBLE_EQ(h(1, 1).real(), -1.0);
    EXPECT_DOUBLE_EQ(h(2, 2).real(), -1.0);
    EXPECT_DOUBLE_EQ(h(3, 3).real(), 0.5);
    EXPECT_EQ(h(0, 3), Complex(2.0, 0.0));
    EXPECT_EQ(h(1, 2), Complex(-1.0, 1.0));
    EXPECT_EQ(h(2, 1), Complex(-1.0, -1.0));
    EXPECT_EQ(h(0, 1), Complex(0.0, 0.0));
    EXPECT_EQ(qb::hermiticity_error(h), 0.0);
}

TEST(BatteryHamiltonian, IsTracelessAndBlockDiagonal) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-4.0, 4.0);
    for (int draw = 0; draw < 100; ++draw) {
        const ComplexMatrix h = qb::battery_hamiltonian({dist(rng), dist(rng), dist(rng), dist(rng)});
        EXPECT_NEAR(std::abs(h.trace()), 0.0, 1e-14);
        for (int a : {0, 3}) {
            for (int b : {1, 2}) {
                EXPECT_EQ(h(a, b), Complex(0.0, 0.0));
                EXPECT_EQ(h(b, a), Complex(0.0, 0.0));
            }
        }
    }
}

TEST(ChargingHamiltonian, UnitOmegaPattern) {
    const ComplexMatrix hc = qb::charging_hamiltonian({1.0});
    ComplexMatrix expected(4, 4);
    expected << 0, 1, 1, 0,
                1, 0, 0, 1,
                1, 0, 0, 1,
                0, 1, 1, 0;
    EXPECT_EQ(qb::max_abs(hc - expected), 0.0);
    const auto eig = qb::hermitian_eigen(hc);
    EXPECT_NEAR(eig.eigenvalues(0), -2.0, 1e-14);
    EXPECT_NEAR(eig.eigenvalues(1), 0.0, 1e-14);
    EXPECT_NEAR(eig.eigenvalues(2), 0.0, 1e-14);
    EXPECT_NEAR(eig.eigenvalues(3), 2.0, 1e-14);
}

TEST(ClosedFormEigenvalues, ReferencePoint) {
    const BatteryParams p{2.0, 2.0, 1.0, 1.0};
    const double eta = std::sqrt(5.0);
    const double chi = std::sqrt(13.0);
    const auto ev = qb::closed_form_eigenvalues(p);
    EXPECT_DOUBLE_EQ(ev[0], (2.0 + 3.0 * eta) / 6.0);
    EXPECT_DOUBLE_EQ(ev[1], (-2.0 + chi) / 6.0);
    EXPECT_DOUBLE_EQ(ev[2], (-2.0 - chi) / 6.0);
    EXPECT_DOUBLE_EQ(ev[3], (2.0 - 3.0 * eta) / 6.0);
}

TEST(ClosedFormEigenvalues, MatchCharacteristicPolynomialOfBlocks) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (int draw = 0; draw < 1000; ++draw) {
        const BatteryParams p{dist(rng), dist(rng), dist(rng), dist(rng)};
        const ComplexMatrix h = qb::battery_hamiltonian(p);
        const auto outer = qb::oracle::eigenvalues_2x2(h(0, 0), h(0, 3), h(3, 3));
        const auto inner = qb::oracle::eigenvalues_2x2(h(1, 1), h(1, 2), h(2, 2));
        const auto ev = qb::closed_form_eigenvalues(p);
        ASSERT_NEAR(ev[0], outer[1], 1e-12);
        ASSERT_NEAR(ev[3], outer[0], 1e-12);
        ASSERT_NEAR(ev[1], inner[1], 1e-12);
        ASSERT_NEAR(ev[2], inner[0], 1e-12);
        ASSERT_GE(ev[0], ev[3]);
        ASSERT_GE(ev[1], ev[2]);
        ASSERT_GE(qb::eta_of(p), std::abs(p.field));
    }
}

TEST(ClosedFormSpectrum, EigenvectorsSatisfyEigenEquation) {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (int draw = 0; draw < 1000; ++draw) {
        BatteryParams p{dist(rng), dist(rng), dist(rng), dist(rng)};
        if (std::abs(p.epsilon) < 1e-3 || qb::chi_of(p) < 1e-3) {
            continue;
        }
        const ComplexMatrix h = qb::battery_hamiltonian(p);
        const auto s = qb::closed_form_spectrum(p);
        for (int k = 0; k < 4; ++k) {
            const auto& v = s.eigenvectors[static_cast<std::size_t>(k)];
            ASSERT_NEAR(v.norm(), 1.0, 1e-12);
            const double residual = (h * v - s.eigenvalues[static_cast<std::size_t>(k)] * v).norm();
            ASSERT_LT(residual, 1e-10) << "draw " << draw << " level " << k;
        }
    }
}

TEST(ClosedFormSpectrum, InnerNormalizationIsInverseRootTwo) {
    const auto s = qb::closed_form_spectrum({2.0, 2.0, 1.0, 1.0});
    EXPECT_NEAR(s.lambda_norm_plus, 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(s.lambda_norm_minus, 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(ClosedFormSpectrum, GroundLevelMatchesNumericGroundState) {
    // At the reference point the lowest level is lambda_3, inside the {|01>, |10>} block.
    const BatteryParams p{2.0, 2.0, 1.0, 1.0};
    const auto s = qb::closed_form_spectrum(p);
    const auto& phi3 = s.eigenvectors[2];
    EXPECT_NEAR(std::abs(phi3(0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(phi3(3)), 0.0, 1e-15);
    const auto numeric = qb::hermitian_eigen(qb::battery_hamiltonian(p));
    EXPECT_NEAR(numeric.eigenvalues(0), s.eigenvalues[2], 1e-12);
    EXPECT_NEAR(numeric.eigenvalues(1), s.eigenvalues[3], 1e-12);
    const Complex overlap = numeric.eigenvectors.col(0).dot(phi3);
    EXPECT_NEAR(std::abs(overlap), 1.0, 1e-12);
}

TEST(ClosedFormSpectrum, OuterBlockGroundWithoutCoupling) {
    // With Delta = D = 0 the outer level lambda_4 = -eta/2 is the lowest.
    const BatteryParams p{0.0, 2.0, 0.0, 1.0};
    const auto numeric = qb::hermitian_eigen(qb::battery_hamiltonian(p));
    EXPECT_NEAR(numeric.eigenvalues(0), -0.5 * std::sqrt(5.0), 1e-12);
    EXPECT_NEAR(std::abs(numeric.eigenvectors(1, 0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(numeric.eigenvectors(2, 0)), 0.0, 1e-14);
}

TEST(FlipFlopRatio, AlternativeSignConventionFailsResidual) {
    // A ratio of chi / (6 i D - Delta) is not an eigenvector coefficient when D != 0.
    const BatteryParams p{2.0, 2.0, 1.0, 1.0};
    const ComplexMatrix h = qb::battery_hamiltonian(p);
    const double chi = qb::chi_of(p);
    const double lambda2 = (-p.delta + chi) / 6.0;

    auto residual = [&](Complex ratio) {
        qb::ComplexVector v = qb::ComplexVector::Zero(4);
        v(1) = ratio;
        v(2) = 1.0;
        v.normalize();
        return (h * v - lambda2 * v).norm();
    };
    EXPECT_LT(residual(qb::flip_flop_ratio(p, +1)), 1e-12);
    EXPECT_GT(residual(Complex(chi, 0.0) / Complex(-p.delta, 6.0 * p.dm)), 1e-2);
}

TEST(ClosedFormSpectrum, DegenerateInputsThrow) {
    EXPECT_THROW(qb::closed_form_spectrum({2.0, 0.0, 1.0, 1.0}), qb::DegenerateClosedForm);
    EXPECT_THROW(qb::closed_form_spectrum({0.0, 2.0, 0.0, 1.0}), qb::DegenerateClosedForm);
    EXPECT_NO_THROW(qb::closed_form_eigenvalues({0.0, 0.0, 0.0, 0.0}));
}

TEST(ClosedFormEigenvalues, FullyDegeneratePoint) {
    const auto ev = qb::closed_form_eigenvalues({0.0, 0.0, 0.0, 0.0});
    for (double e : ev) {
        EXPECT_EQ(e, 0.0);
    }
}

}  // namespace
