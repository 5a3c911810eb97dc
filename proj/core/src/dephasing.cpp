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


#include "qbattery/dephasing.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <boost/numeric/odeint/stepper/runge_kutta4.hpp>

#include "qbattery/errors.hpp"

namespace qb {
namespace {

using SubspaceVector = std::array<double, 3>;  // u, Re v, Im v
using LindbladVector = std::array<double, 32>;  // row-major (Re, Im) pairs

// z-eigenvalues of sigma_z (x) 1 and 1 (x) sigma_z on |00>, |01>, |10>, |11>.
constexpr std::array<double, 4> kBatteryZ{1.0, 1.0, -1.0, -1.0};
constexpr std::array<double, 4> kChargerZ{1.0, -1.0, 1.0, -1.0};

// Oscillator basis functions: c(t) ~ cos(wt), s(t) ~ sin(wt)/w, continued into
// the critical and overdamped regimes.
struct Oscillator {
    double c;
    double s;
};

Oscillator oscillator(double t, const DephasingDerived& d) {
    switch (d.regime) {
        case DampingRegime::Underdamped: {
            const double w = d.omega.real();
            return {std::cos(w * t), std::sin(w * t) / w};
        }
        case DampingRegime::Overdamped: {
            const double w = d.omega.imag();
            return {std::cosh(w * t), std::sinh(w * t) / w};
        }
        case DampingRegime::Critical:
            break;
    }
    return {1.0, t};
}

void check_step(double dt, double max_step) {
    if (dt > max_step * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "RK4 step " << dt << " exceeds the allowed " << max_step;
        throw StepTooLarge(os.str());
    }
}

LindbladVector pack(const ComplexMatrix& rho) {
    LindbladVector x{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            x[static_cast<std::size_t>(2 * (4 * i + j))] = rho(i, j).real();
            x[static_cast<std::size_t>(2 * (4 * i + j) + 1)] = rho(i, j).imag();
        }
    }
    return x;
}

ComplexMatrix unpack(const LindbladVector& x) {
    ComplexMatrix rho(4, 4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            rho(i, j) = Complex(x[static_cast<std::size_t>(2 * (4 * i + j))],
                                x[static_cast<std::size_t>(2 * (4 * i + j) + 1)]);
        }
    }
    return rho;
}

}  // namespace

std::string_view to_string(RateConvention convention) {
    return convention == RateConvention::PaperSubspace ? "paper" : "lindblad";
}

RateConvention parse_rate_convention(std::string_view text) {
    if (text == "paper") {
        return RateConvention::PaperSubspace;
    }
    if (text == "lindblad") {
        return RateConvention::FullLindblad;
    }
    throw ConfigError("dephasing.rate_convention: expected 'paper' or 'lindblad', got '" + std::string(text) +
                      "'");
}

double DephasingParams::coherence_damping() const noexcept {
    return convention == RateConvention::PaperSubspace ? gamma_phi() : 2.0 * gamma_phi();
}

DephasingParams DephasingParams::symmetric(double gamma_phi, double omega0, RateConvention convention) {
    return DephasingParams{0.5 * gamma_phi, 0.5 * gamma_phi, omega0, convention};
}

DephasingDerived effective_coupling(const BatteryParams& p, const DephasingParams& dp) {
    DephasingDerived d;
    d.kappa = chi_of(p) / 6.0;
    d.damping = dp.coherence_damping();
    const double drive = 4.0 * d.kappa * d.kappa;
    const double loss = 0.25 * d.damping * d.damping;
    const double w2 = drive - loss;
    if (std::abs(w2) <= 1e-14 * std::max(drive, loss)) {
        d.regime = DampingRegime::Critical;
        d.omega = Complex(0.0, 0.0);
    } else if (w2 > 0.0) {
        d.regime = DampingRegime::Underdamped;
        d.omega = Complex(std::sqrt(w2), 0.0);
    } else {
        d.regime = DampingRegime::Overdamped;
        d.omega = Complex(0.0, std::sqrt(-w2));
    }
    return d;
}

SubspaceDerivative subspace_rhs(const SubspaceState& s, const DephasingDerived& d) {
    return {-2.0 * d.kappa * s.v.imag(), Complex(0.0, -d.kappa * (1.0 - 2.0 * s.u)) - d.damping * s.v};
}

double max_subspace_step(const DephasingDerived& d, const DephasingParams& dp) {
    return tol::max_step_scale / std::max({d.kappa, dp.gamma_phi(), d.damping, 1.0});
}

int required_steps(double t_max, double max_step) {
    return static_cast<int>(std::ceil(t_max / max_step - 1e-9)) + 1;
}

SubspaceTrajectory integrate_subspace(const SubspaceState& s0, const DephasingDerived& d,
                                      const DephasingParams& dp, double t_max, int n_steps) {
    SubspaceTrajectory out;
    out.times = uniform_grid(t_max, n_steps);
    const double dt = t_max / static_cast<double>(n_steps - 1);
    check_step(dt, max_subspace_step(d, dp));

    auto system = [&d](const SubspaceVector& x, SubspaceVector& dxdt, double /*t*/) {
        const SubspaceDerivative rate = subspace_rhs(SubspaceState{x[0], Complex(x[1], x[2])}, d);
        dxdt = {rate.du, rate.dv.real(), rate.dv.imag()};
    };

    boost::numeric::odeint::runge_kutta4<SubspaceVector> stepper;
    SubspaceVector x{s0.u, s0.v.real(), s0.v.imag()};
    out.states.reserve(out.times.size());
    out.states.push_back(s0);
    for (std::size_t i = 1; i < out.times.size(); ++i) {
        stepper.do_step(system, x, out.times[i - 1], dt);
        out.states.push_back(SubspaceState{x[0], Complex(x[1], x[2])});
    }
    return out;
}

double closed_form_z(double t, const DephasingDerived& d) {
    const Oscillator o = oscillator(t, d);
    return std::exp(-0.5 * d.damping * t) * (o.c + 0.5 * d.damping * o.s);
}

double closed_form_coherence(double t, const DephasingDerived& d) {
    return d.kappa * std::exp(-0.5 * d.damping * t) * oscillator(t, d).s;
}

double closed_form_ergotropy(double t, const DephasingDerived& d) {
    const Oscillator o = oscillator(t, d);
    const double a = o.c + 0.5 * d.damping * o.s;
    const double b = 2.0 * d.kappa * o.s;
    return d.kappa * std::exp(-0.5 * d.damping * t) * std::sqrt(a * a + b * b);
}

double closed_form_power(double t, const DephasingDerived& d) {
    const double w = closed_form_ergotropy(t, d);
    if (w == 0.0) {
        return 0.0;
    }
    const double y = closed_form_coherence(t, d);
    return -4.0 * d.kappa * d.kappa * d.damping * y * y / w;
}

double subspace_ergotropy(const SubspaceState& s, const DephasingDerived& d) {
    return d.kappa * std::hypot(s.z(), 2.0 * s.v.imag());
}

double ergotropy_envelope(double t, const DephasingDerived& d) {
    if (d.regime != DampingRegime::Underdamped) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const double w = d.omega.real();
    const double a = 0.5 * d.damping / w;
    const double b = 2.0 * d.kappa / w;
    return d.kappa * std::exp(-0.5 * d.damping * t) * std::sqrt(1.0 + a * a + b * b);
}

ComplexMatrix battery_charger_hamiltonian(const BatteryParams& p, const DephasingParams& dp) {
    BatteryParams bc = p;
    bc.field = dp.omega0;
    return battery_hamiltonian(bc);
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const ComplexMatrix& h, const DephasingParams& dp) {
    ComplexMatrix out = Complex(0.0, -1.0) * (h * rho - rho * h);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double rate = dp.gamma_b * (kBatteryZ[i] * kBatteryZ[j] - 1.0) +
                                dp.gamma_c * (kChargerZ[i] * kChargerZ[j] - 1.0);
            out(i, j) += rate * rho(i, j);
        }
    }
    return out;
}

double max_lindblad_step(const BatteryParams& p, const DephasingParams& dp) {
    const ComplexMatrix h = battery_charger_hamiltonian(p, dp);
    const Eigen::VectorXd levels = hermitian_eigen(h).eigenvalues;
    const double spread = levels(levels.size() - 1) - levels(0);
    const double kappa = chi_of(p) / 6.0;
    return tol::max_step_scale / std::max({kappa, dp.gamma_phi(), spread, 1.0});
}

Trajectory integrate_lindblad(const DensityMatrix& rho0, const BatteryParams& p, const DephasingParams& dp,
                              double t_max, int n_steps) {
    Trajectory out;
    out.times = uniform_grid(t_max, n_steps);
    const double dt = t_max / static_cast<double>(n_steps - 1);
    check_step(dt, max_lindblad_step(p, dp));

    const ComplexMatrix h = battery_charger_hamiltonian(p, dp);
    auto system = [&](const LindbladVector& x, LindbladVector& dxdt, double /*t*/) {
        dxdt = pack(lindblad_rhs(unpack(x), h, dp));
    };

    const StateTolerance slack{tol::integrator, tol::integrator, tol::integrator};
    boost::numeric::odeint::runge_kutta4<LindbladVector> stepper;
    LindbladVector x = pack(rho0.matrix());
    out.states.reserve(out.times.size());
    out.states.push_back(rho0);
    for (std::size_t i = 1; i < out.times.size(); ++i) {
        stepper.do_step(system, x, out.times[i - 1], dt);
        out.states.emplace_back(unpack(x), slack);
    }
    return out;
}

SubspaceState single_excitation_block(const ComplexMatrix& rho, const ComplexMatrix& h_bc) {
    const Complex g = h_bc(2, 1);  // <10|H|01>
    const double kappa = std::abs(g);
    const Complex coherence = rho(2, 1);  // <10|rho|01>
    SubspaceState s;
    s.u = rho(2, 2).real();
    s.v = kappa > 0.0 ? coherence * std::conj(g) / kappa : coherence;
    return s;
}

double fit_envelope_rate(const std::vector<double>& times, const std::vector<double>& series) {
    std::vector<double> peak_t;
    std::vector<double> peak_log;
    for (std::size_t i = 1; i + 1 < series.size(); ++i) {
        const double prev = std::abs(series[i - 1]);
        const double here = std::abs(series[i]);
        const double next = std::abs(series[i + 1]);
        if (!(here >= prev && here > next) || here <= 0.0) {
            continue;
        }
        // Parabola through the three samples.
        const double h = times[i + 1] - times[i];
        const double curvature = prev - 2.0 * here + next;
        double offset = 0.0;
        double value = here;
        if (curvature < 0.0) {
            offset = 0.5 * (prev - next) / curvature;
            value = here - 0.25 * (prev - next) * offset;
        }
        peak_t.push_back(times[i] + offset * h);
        peak_log.push_back(std::log(value));
    }
    if (peak_t.size() < 2) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const double n = static_cast<double>(peak_t.size());
    double mean_t = 0.0;
    double mean_y = 0.0;
    for (std::size_t k = 0; k < peak_t.size(); ++k) {
        mean_t += peak_t[k] / n;
        mean_y += peak_log[k] / n;
    }
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t k = 0; k < peak_t.size(); ++k) {
        sxy += (peak_t[k] - mean_t) * (peak_log[k] - mean_y);
        sxx += (peak_t[k] - mean_t) * (peak_t[k] - mean_t);
    }
    return -sxy / sxx;
}

CoherenceDecayReport measure_coherence_decay(const BatteryParams& p, double gamma_phi, double t_max) {
    if (chi_of(p) == 0.0 || !(gamma_phi > 0.0)) {
        throw ConfigError("coherence decay fit needs kappa > 0 and gamma_phi > 0");
    }
    const DephasingParams dp = DephasingParams::symmetric(gamma_phi);
    const int n = required_steps(t_max, max_lindblad_step(p, dp));
    const Trajectory run = integrate_lindblad(DensityMatrix::basis_state(2), p, dp, t_max, n);
    const ComplexMatrix h = battery_charger_hamiltonian(p, dp);

    std::vector<double> coherence;
    coherence.reserve(run.states.size());
    for (const DensityMatrix& rho : run.states) {
        coherence.push_back(single_excitation_block(rho.matrix(), h).v.imag());
    }
    CoherenceDecayReport report{};
    report.fitted_envelope_rate = fit_envelope_rate(run.times, coherence);
    report.fitted_damping = 2.0 * report.fitted_envelope_rate;
    report.subspace_damping = gamma_phi;
    report.ratio = report.fitted_damping / report.subspace_damping;
    return report;
}

}  // namespace qb
