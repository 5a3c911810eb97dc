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


#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "qbattery/charging.hpp"
#include "qbattery/dephasing.hpp"
#include "qbattery/harness.hpp"
#include "qbattery/metrics.hpp"
#include "qbattery/thermal.hpp"

namespace qb::harness {
namespace {

BatteryParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    BatteryParams p;
    do {
        p = {dist(rng), dist(rng), dist(rng), dist(rng)};
    } while (p.epsilon == 0.0 || chi_of(p) == 0.0);
    return p;
}

CheckResult spectrum_check(const ValidateOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    double worst_value = 0.0;
    double worst_vector = 0.0;
    for (int k = 0; k < opt.draws; ++k) {
        const BatteryParams p = random_params(rng);
        const ComplexMatrix h = battery_hamiltonian(p);
        const Spectrum s = closed_form_spectrum(p);
        auto closed = s.eigenvalues;
        std::sort(closed.begin(), closed.end());
        const Eigen::VectorXd numeric = hermitian_eigen(h).eigenvalues;
        for (int i = 0; i < 4; ++i) {
            worst_value = std::max(worst_value, std::abs(closed[i] - numeric(i)));
            const ComplexVector residual = h * s.eigenvectors[i] - s.eigenvalues[i] * s.eigenvectors[i];
            worst_vector = std::max(worst_vector, residual.norm());
        }
    }
    const double residual = std::max(worst_value, worst_vector);
    std::ostringstream note;
    note << "eigenvalues " << worst_value << ", eigenvector residual " << worst_vector;
    return {"spectrum: closed form vs eigensolver", residual <= tol::structural, residual, tol::structural,
            note.str()};
}

CheckResult gibbs_check(const ValidateOptions& opt) {
    std::mt19937_64 rng(opt.seed + 1);
    std::uniform_real_distribution<double> temp(0.1, 10.0);
    double worst = 0.0;
    int minus_sign_agrees = 0;
    int nonzero_corner = 0;
    for (int k = 0; k < opt.draws; ++k) {
        const BatteryParams p = random_params(rng);
        const ThermalSpec spec = ThermalSpec::from_temperature(temp(rng));
        ComplexMatrix closed = gibbs_closed_form(p, spec).rho.matrix();
        if (opt.inject_gibbs_fault) {
            closed(0, 0) += 1e-3;
        }
        const ComplexMatrix numeric = gibbs_numeric(p, spec).rho.matrix();
        worst = std::max(worst, max_abs(closed - numeric));

        // Closed form rho_14 = -(eps/eta) e^{-beta delta/6} sinh(eta beta/2) has sign -sign(eps).
        const double corner = numeric(0, 3).real();
        if (std::abs(corner) > 1e-12) {
            ++nonzero_corner;
            if ((corner < 0.0) == (p.epsilon > 0.0)) {
                ++minus_sign_agrees;
            }
        }
    }
    std::ostringstream note;
    note << "rho_14 sign: leading minus confirmed in " << minus_sign_agrees << "/" << nonzero_corner
         << " draws";
    return {"gibbs: closed form vs exp(-beta H_B)/Z", worst <= tol::structural && minus_sign_agrees == nonzero_corner,
            worst, tol::structural, note.str()};
}

CheckResult unitary_check() {
    double worst = 0.0;
    for (double omega : {0.5, 1.0, 2.0}) {
        const ChargerParams c{omega};
        const ComplexMatrix h = charging_hamiltonian(c);
        for (int i = 0; i < 200; ++i) {
            const double t = 2.0 * std::numbers::pi / omega * i / 199.0;
            worst = std::max(worst, max_abs(charging_unitary(c, t) - unitary_propagator(h, t)));
        }
    }
    return {"unitary: closed-form X-gate propagator vs exp(-i H_c t)", worst <= tol::algebraic, worst, tol::algebraic,
            "200-point grid over [0, 2 pi/Omega], Omega in {0.5, 1, 2}"};
}

CheckResult power_check() {
    const BatteryParams p{2.0, 2.0, 1.0, 1.0};
    const ChargerParams c{1.0};
    const ComplexMatrix h = battery_hamiltonian(p);
    const DensityMatrix rho_T = gibbs_numeric(p, ThermalSpec::from_temperature(0.5)).rho;
    const double step = 1e-4;
    double worst = 0.0;
    for (EvolutionMode mode : {EvolutionMode::ChargerOnly, EvolutionMode::Full}) {
        const ComplexMatrix g = generator(p, c, mode);
        for (int i = 0; i < 1000; ++i) {
            const double t = 10.0 * (i + 0.5) / 1000.0;
            const double analytic = instantaneous_power(evolve(rho_T, p, c, mode, t), g, h);
            const double fd = (stored_work(evolve(rho_T, p, c, mode, t + step), rho_T, h) -
                               stored_work(evolve(rho_T, p, c, mode, t - step), rho_T, h)) /
                              (2.0 * step);
            worst = std::max(worst, std::abs(analytic - fd));
        }
    }
    return {"power: -i Tr([G, rho] H_B) vs central difference of W", worst <= 1e-6, worst, 1e-6,
            "1000 times per mode, h = 1e-4"};
}

CheckResult closed_form_check() {
    double worst = 0.0;
    for (double gamma : {0.25, 0.5, 0.75, 1.0}) {
        for (double dm : {0.0, 1.0, 2.0, 3.0, 4.0}) {
            const BatteryParams p{2.0, 2.0, dm, 1.0};
            const DephasingParams dp = DephasingParams::symmetric(gamma);
            const DephasingDerived d = effective_coupling(p, dp);
            const int n = required_steps(20.0, max_subspace_step(d, dp));
            const SubspaceTrajectory run = integrate_subspace(SubspaceState{}, d, dp, 20.0, n);
            for (std::size_t i = 0; i < run.times.size(); ++i) {
                const double t = run.times[i];
                worst = std::max(worst, std::abs(closed_form_z(t, d) - run.states[i].z()));
                worst = std::max(worst, std::abs(closed_form_ergotropy(t, d) - subspace_ergotropy(run.states[i], d)));
            }
        }
    }
    return {"dephasing: closed-form z(t), W(t) vs RK4 subspace ODE", worst <= 1e-6, worst, 1e-6,
            "delta = 2, D in 0..4, Gamma_phi in {0.25, 0.5, 0.75, 1}, t in [0, 20]"};
}

CheckResult lindblad_check() {
    double worst = 0.0;
    for (double dm : {1.0, 3.0}) {
        for (double omega0 : {0.5, 2.0}) {
            const BatteryParams p{2.0, 2.0, dm, 1.0};
            const DephasingParams dp{0.1, 0.4, omega0, RateConvention::FullLindblad};
            const DephasingDerived d = effective_coupling(p, dp);
            const double t_max = 10.0;
            const int n = required_steps(t_max, std::min(max_subspace_step(d, dp), max_lindblad_step(p, dp)));
            const Trajectory open = integrate_lindblad(DensityMatrix::basis_state(2), p, dp, t_max, n);
            const SubspaceTrajectory sub = integrate_subspace(SubspaceState{}, d, dp, t_max, n);
            const ComplexMatrix h = battery_charger_hamiltonian(p, dp);
            for (std::size_t i = 0; i < open.times.size(); ++i) {
                const SubspaceState block = single_excitation_block(open.states[i].matrix(), h);
                worst = std::max(worst, std::abs(block.u - sub.states[i].u));
                worst = std::max(worst, std::abs(block.v - sub.states[i].v));
            }
        }
    }
    return {"dephasing: 4x4 Lindblad block vs subspace ODE (lindblad convention)", worst <= 1e-6, worst, 1e-6,
            "D in {1, 3}, omega0 in {0.5, 2}"};
}

CheckResult rate_factor_check() {
    const CoherenceDecayReport r = measure_coherence_decay(BatteryParams{2.0, 2.0, 1.0, 1.0}, 0.5, 20.0);
    std::ostringstream note;
    note << "fitted coherence damping " << r.fitted_damping << " vs subspace convention " << r.subspace_damping
         << " (factor " << r.ratio << ")";
    const double residual = std::abs(r.ratio - 2.0);
    return {"dephasing: Lindblad/subspace coherence-rate factor", residual <= 1e-2, residual, 1e-2, note.str()};
}

CheckResult capacity_check(const ValidateOptions& opt) {
    std::mt19937_64 rng(opt.seed + 2);
    double worst = 0.0;
    for (int k = 0; k < opt.draws; ++k) {
        const BatteryParams p = random_params(rng);
        worst = std::max(worst, std::abs(capacity(battery_hamiltonian(p)) + p.field));
    }
    return {"capacity: K = -B", worst <= tol::algebraic, worst, tol::algebraic, ""};
}

}  // namespace

bool ValidationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

ValidationReport validate(const ValidateOptions& options) {
    ValidationReport report;
    report.checks.push_back(spectrum_check(options));
    report.checks.push_back(gibbs_check(options));
    report.checks.push_back(unitary_check());
    report.checks.push_back(power_check());
    report.checks.push_back(capacity_check(options));
    report.checks.push_back(closed_form_check());
    report.checks.push_back(lindblad_check());
    report.checks.push_back(rate_factor_check());
    return report;
}

std::string format_report(const ValidationReport& report) {
    std::ostringstream os;
    os.precision(3);
    for (const CheckResult& c : report.checks) {
        os << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "  max residual " << std::scientific << c.residual
           << " (tol " << c.tolerance << ")" << std::defaultfloat;
        if (!c.note.empty()) {
            os << "  [" << c.note << "]";
        }
        os << '\n';
    }
    os << (report.all_passed() ? "all checks passed" : "validation FAILED") << '\n';
    return os.str();
}

}  // namespace qb::harness
