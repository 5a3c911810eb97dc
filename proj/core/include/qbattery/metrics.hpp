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

#include "qbattery/density_matrix.hpp"

namespace qb {

struct MetricsSample {
    double t = 0.0;
    double work = 0.0;
    double power = 0.0;
    double capacity = 0.0;
    double coherence = 0.0;
};

struct CoherenceSpec {
    double c_max = 3.0;  // two qubits
};

struct PassiveState {
    DensityMatrix sigma;
    double extractable;  // Tr[rho H] - Tr[sigma H]
};

/// Tr[rho H]; throws NonRealTrace if the imaginary part exceeds tol::imaginary_residue.
double energy(const ComplexMatrix& rho, const ComplexMatrix& h);

/// Energy stored relative to the thermal state: Tr[rho_t H_B] - Tr[rho_T H_B].
double stored_work(const DensityMatrix& rho_t, const DensityMatrix& rho_T, const ComplexMatrix& h_b);

/// dW/dt = -i Tr([G, rho(t)] H_B) for the active generator G.
double instantaneous_power(const DensityMatrix& rho_t, const ComplexMatrix& generator,
                           const ComplexMatrix& h_b);

/// <11|H_B|11> - <00|H_B|00>
double capacity(const ComplexMatrix& h_b);

/// Sum of |rho_ij| over i != j, divided by c_max.
double l1_coherence(const DensityMatrix& rho, const CoherenceSpec& spec = {});

/// Passive state of rho with respect to h_b: populations sorted descending
/// are placed on levels sorted ascending.
PassiveState passive_ergotropy(const DensityMatrix& rho, const ComplexMatrix& h_b);

}  // namespace qb
