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

#include <string_view>
#include <vector>

#include "qbattery/charging.hpp"
#include "qbattery/density_matrix.hpp"
#include "qbattery/model.hpp"

namespace qb {

/// Damping of the single-excitation coherence.
///   PaperSubspace: v' = ... - Gamma_phi v
///   FullLindblad:  v' = ... - 2 Gamma_phi v  (what sigma_z dephasing produces)
enum class RateConvention { PaperSubspace, FullLindblad };

std::string_view to_string(RateConvention convention);
/// Accepts "paper" / "lindblad". Throws ConfigError otherwise.
RateConvention parse_rate_convention(std::string_view text);

struct DephasingParams {
    double gamma_b = 0.0;  // battery
    double gamma_c = 0.0;  // charger
    double omega0 = 1.0;   // level spacing of both qubits
    RateConvention convention = RateConvention::PaperSubspace;

    double gamma_phi() const noexcept { return gamma_b + gamma_c; }
    /// Coherence damping rate under `convention`.
    double coherence_damping() const noexcept;

    /// Splits gamma_phi evenly between battery and charger.
    static DephasingParams symmetric(double gamma_phi, double omega0 = 1.0,
                                     RateConvention convention = RateConvention::PaperSubspace);
};

enum class DampingRegime { Underdamped, Critical, Overdamped };

struct DephasingDerived {
    double kappa = 0.0;  // sqrt(delta^2 + 9 D^2) / 6
    Complex omega;       // sqrt((2 kappa)^2 - (gamma/2)^2); imaginary when overdamped
    double damping = 0.0;  // coherence damping rate gamma the closed forms use
    DampingRegime regime = DampingRegime::Underdamped;
};

DephasingDerived effective_coupling(const BatteryParams& p, const DephasingParams& dp);

/// Single-excitation block in the {|10>, |01>} sector. u is the population of
/// |10> (charger excited, battery empty); v is the coherence in the gauge
/// where the flip-flop coupling is real and equal to kappa.
struct SubspaceState {
    double u = 1.0;
    Complex v{0.0, 0.0};

    /// Population imbalance 2u - 1; +1 with the charger fully excited.
    double z() const noexcept { return 2.0 * u - 1.0; }
};

struct SubspaceDerivative {
    double du;
    Complex dv;
};

/// u' = -2 kappa Im v,  v' = -i kappa (1 - 2u) - gamma v.
SubspaceDerivative subspace_rhs(const SubspaceState& s, const DephasingDerived& d);

struct SubspaceTrajectory {
    std::vector<double> times;
    std::vector<SubspaceState> states;
};

/// Largest RK4 step accepted by integrate_subspace.
double max_subspace_step(const DephasingDerived& d, const DephasingParams& dp);

/// Smallest grid size (n_steps) over [0, t_max] that satisfies max_step.
int required_steps(double t_max, double max_step);

/// Fixed-step RK4 on the uniform grid. Throws BadGrid / StepTooLarge.
SubspaceTrajectory integrate_subspace(const SubspaceState& s0, const DephasingDerived& d,
                                      const DephasingParams& dp, double t_max, int n_steps);

/// Closed-form z(t) with z(0) = 1, z'(0) = 0 for z'' + gamma z' + (2 kappa)^2 z = 0.
/// Underdamped: e^{-gamma t/2}[cos wt + (gamma/2w) sin wt]; the overdamped and
/// critical branches are the analytic continuation.
double closed_form_z(double t, const DephasingDerived& d);

/// Closed-form Im v(t) for the same initial condition: kappa e^{-gamma t/2} sin(wt)/w.
double closed_form_coherence(double t, const DephasingDerived& d);

/// kappa e^{-gamma t/2} sqrt((cos wt + (gamma/2w) sin wt)^2 + (2 kappa/w)^2 sin^2 wt)
double closed_form_ergotropy(double t, const DephasingDerived& d);

/// dW/dt of closed_form_ergotropy: -4 kappa gamma (Im v)^2 / R, with R the Bloch norm.
double closed_form_power(double t, const DephasingDerived& d);

/// kappa sqrt(z^2 + (2 Im v)^2): the quantity closed_form_ergotropy describes.
double subspace_ergotropy(const SubspaceState& s, const DephasingDerived& d);

/// Upper envelope kappa e^{-gamma t/2} sqrt(1 + (gamma/2w)^2 + (2 kappa/w)^2) (underdamped only).
double ergotropy_envelope(double t, const DephasingDerived& d);

/// H_BC: battery_hamiltonian with the Zeeman term replaced by omega0.
ComplexMatrix battery_charger_hamiltonian(const BatteryParams& p, const DephasingParams& dp);

/// -i[H, rho] + sum_q gamma_q (sigma_z^(q) rho sigma_z^(q) - rho). Qubit 1 is the
/// battery, qubit 2 the charger.
ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const ComplexMatrix& h, const DephasingParams& dp);

double max_lindblad_step(const BatteryParams& p, const DephasingParams& dp);

/// RK4 integration of the 4x4 master equation. States are validated with
/// tol::integrator slack. Throws BadGrid / StepTooLarge / InvalidState.
Trajectory integrate_lindblad(const DensityMatrix& rho0, const BatteryParams& p, const DephasingParams& dp,
                              double t_max, int n_steps);

/// Reads (u, v) out of a 4x4 state using the gauge of SubspaceState.
SubspaceState single_excitation_block(const ComplexMatrix& rho, const ComplexMatrix& h_bc);

/// Decay rate a of a damped oscillation A e^{-a t} cos(...) from the
/// least-squares slope of ln|x| at successive local maxima of |x|.
/// Returns NaN if fewer than two maxima are found.
double fit_envelope_rate(const std::vector<double>& times, const std::vector<double>& series);

struct CoherenceDecayReport {
    double fitted_envelope_rate;       // from the 4x4 Lindblad run
    double fitted_damping;             // 2 * fitted_envelope_rate
    double subspace_damping;           // Gamma_phi
    double ratio;                      // fitted_damping / subspace_damping
};

/// Integrates the 4x4 master equation from |10><10| and fits the decay of the
/// flip-flop coherence. Requires kappa > 0 and Gamma_phi > 0.
CoherenceDecayReport measure_coherence_decay(const BatteryParams& p, double gamma_phi, double t_max);

}  // namespace qb
