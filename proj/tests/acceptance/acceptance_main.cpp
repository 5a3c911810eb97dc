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


// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qbattery/charging.hpp"
#include "qbattery/dephasing.hpp"
#include "qbattery/harness.hpp"
#include "qbattery/metrics.hpp"
#include "qbattery/thermal.hpp"

namespace {

namespace fs = std::filesystem;
using namespace qb;

struct Outcome {
    bool passed = true;
    std::string detail;
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

harness::SweepConfig load_preset(const std::string& name) {
    return harness::resolve_sweep_config(harness::load_key_values(fs::path(QBATTERY_PRESET_DIR) / (name + ".cfg")));
}

BatteryParams draw_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (;;) {
        BatteryParams p{dist(rng), dist(rng), dist(rng), dist(rng)};
        if (p.epsilon != 0.0 && chi_of(p) != 0.0) {
            return p;
        }
    }
}

Outcome spectrum_oracle() {
    std::mt19937_64 rng(1001);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const BatteryParams p = draw_params(rng);
        std::array<double, 4> cf = closed_form_eigenvalues(p);
        std::sort(cf.begin(), cf.end());
        const auto numeric = hermitian_eigen(battery_hamiltonian(p)).eigenvalues;
        for (int i = 0; i < 4; ++i) {
            worst = std::max(worst, std::abs(cf[static_cast<std::size_t>(i)] - numeric(i)));
        }
    }
    return {worst <= 1e-10, "1000 draws, max |dlambda| " + sci(worst) + " (tol 1e-10)"};
}

Outcome gibbs_oracle() {
    std::mt19937_64 rng(1002);
    std::uniform_real_distribution<double> temp(0.1, 10.0);
    double worst = 0.0;
    int negative = 0;
    int positive = 0;
    for (int k = 0; k < 1000; ++k) {
        const BatteryParams p = draw_params(rng);
        const double beta = 1.0 / temp(rng);
        const ComplexMatrix h = battery_hamiltonian(p);
        // exp(-beta H) by Pade, independent of the eigensolver.
        ComplexMatrix oracle = oracle::expm(-beta * h);
        oracle /= oracle.trace();
        const ComplexMatrix closed = gibbs_closed_form(p, ThermalSpec::from_beta(beta)).rho.matrix();
        worst = std::max(worst, max_abs(closed - oracle));
        const double corner_times_eps = oracle(0, 3).real() * p.epsilon;
        (corner_times_eps < 0.0 ? negative : positive) += 1;
    }
    std::string sign = negative == 1000 ? "sign(rho_14) = -sign(epsilon) in all draws"
                                        : "sign(rho_14) = -sign(epsilon) in " + std::to_string(negative) + "/1000";
    return {worst <= 1e-10, "1000 draws, max elementwise " + sci(worst) + " (tol 1e-10); " + sign};
}

Outcome unitary_oracle() {
    double worst = 0.0;
    for (double omega : {0.5, 1.0, 2.0}) {
        const ComplexMatrix hc = charging_hamiltonian({omega});
        for (int k = 0; k < 200; ++k) {
            const double t = 2.0 * std::numbers::pi / omega * k / 199.0;
            const ComplexMatrix u = oracle::expm(Complex(0.0, -t) * hc);
            worst = std::max(worst, max_abs(charging_unitary({omega}, t) - u));
        }
    }
    return {worst <= 1e-12, "200-point grid over [0, 2pi/Omega], Omega in {0.5,1,2}, max " + sci(worst) +
                                " (tol 1e-12)"};
}

Outcome metric_identities() {
    Outcome out;
    std::ostringstream detail;
    const harness::RunConfig base = load_preset("fig1").base;
    const ComplexMatrix h = battery_hamiltonian(base.battery);
    const DensityMatrix rho_t = gibbs_numeric(base.battery, base.thermal()).rho;
    const double period = std::numbers::pi / base.charger.omega;

    // W(0) exactly zero, through the harness path.
    harness::RunConfig c = base;
    c.grid = {period, 101};
    const double w0 = harness::run(c).rows.front()[1];
    out.passed &= (w0 == 0.0);
    detail << "W(0)=" << w0;

    double periodic = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const double t = 3.0 * period * k / 1000.0;
        const auto a = evolve(rho_t, base.battery, base.charger, EvolutionMode::ChargerOnly, t);
        const auto b = evolve(rho_t, base.battery, base.charger, EvolutionMode::ChargerOnly, t + period);
        periodic = std::max(periodic, std::abs(stored_work(a, rho_t, h) - stored_work(b, rho_t, h)));
        periodic = std::max(periodic, std::abs(l1_coherence(a) - l1_coherence(b)));
    }
    out.passed &= periodic <= 1e-10;
    detail << "; periodicity " << sci(periodic);

    // C in [0,1] and K = -B over every shipped sweep.
    double c_min = 1.0;
    double c_max = 0.0;
    double k_err = 0.0;
    for (int n = 1; n <= 8; ++n) {
        const harness::SweepConfig s = load_preset("fig" + std::to_string(n));
        for (double v : s.values) {
            harness::RunConfig job = harness::apply_axis(s, v);
            job.grid = {2.0 * period, 401};
            const harness::MetricTable t = harness::run(job);
            for (const auto& row : t.rows) {
                c_min = std::min(c_min, row[4]);
                c_max = std::max(c_max, row[4]);
                k_err = std::max(k_err, std::abs(row[3] + job.battery.field));
            }
        }
    }
    out.passed &= c_min >= 0.0 && c_max <= 1.0 && k_err <= 1e-12;
    detail << "; C in [" << sci(c_min) << ", " << sci(c_max) << "]; |K+B| " << sci(k_err);

    // Analytic power vs central difference, h = 1e-4, both evolution modes.
    double p_err = 0.0;
    const double step = 1e-4;
    for (auto mode : {EvolutionMode::ChargerOnly, EvolutionMode::Full}) {
        const ComplexMatrix g = generator(base.battery, base.charger, mode);
        for (int k = 1; k <= 1000; ++k) {
            const double t = base.grid.t_max * k / 1001.0;
            auto w = [&](double s) { return stored_work(evolve(rho_t, base.battery, base.charger, mode, s), rho_t, h); };
            const double fd = (w(t + step) - w(t - step)) / (2.0 * step);
            const double p = instantaneous_power(evolve(rho_t, base.battery, base.charger, mode, t), g, h);
            p_err = std::max(p_err, std::abs(p - fd));
        }
    }
    out.passed &= p_err <= 1e-6;
    detail << "; |P - dW/dt| " << sci(p_err) << " at 1000 times";
    out.detail = detail.str();
    return out;
}

std::vector<double> peaks_over_period(const harness::SweepConfig& s, const std::string& column) {
    std::vector<double> peaks;
    for (double v : s.values) {
        harness::RunConfig job = harness::apply_axis(s, v);
        job.grid = {std::numbers::pi / job.charger.omega, 20001};
        const auto col = harness::run(job).column(column);
        peaks.push_back(*std::max_element(col.begin(), col.end()));
    }
    return peaks;
}

bool strictly(const std::vector<double>& xs, bool increasing) {
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (increasing ? !(xs[i] > xs[i - 1]) : !(xs[i] < xs[i - 1])) {
            return false;
        }
    }
    return true;
}

std::string list(const std::vector<double>& xs) {
    std::ostringstream os;
    os.precision(6);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        os << (i ? ", " : "") << xs[i];
    }
    return "{" + os.str() + "}";
}

Outcome figure_trends() {
    const auto t_peaks = peaks_over_period(load_preset("fig1"), "W");
    const auto d_peaks = peaks_over_period(load_preset("fig2"), "W");
    const auto delta_peaks = peaks_over_period(load_preset("fig3"), "W");
    const auto c_peaks = peaks_over_period(load_preset("fig2"), "C");
    const bool ok = strictly(t_peaks, false) && strictly(d_peaks, true) && strictly(delta_peaks, true) &&
                    strictly(c_peaks, true);
    return {ok, "peak W vs T " + list(t_peaks) + "; vs D " + list(d_peaks) + "; vs delta=epsilon " +
                    list(delta_peaks) + "; peak C vs D " + list(c_peaks)};
}

Outcome dephasing_closed_forms() {
    double worst = 0.0;
    double late_ratio = 0.0;
    for (double gamma : {0.25, 0.5, 0.75, 1.0}) {
        for (double dm : {0.0, 1.0, 2.0, 3.0, 4.0}) {
            const BatteryParams p{2.0, 2.0, dm, 1.0};
            const DephasingParams dp = DephasingParams::symmetric(gamma);
            const DephasingDerived d = effective_coupling(p, dp);
            const double t_max = 20.0;
            const auto traj =
                integrate_subspace(SubspaceState{}, d, dp, t_max, required_steps(t_max, max_subspace_step(d, dp)));
            for (std::size_t i = 0; i < traj.times.size(); ++i) {
                const double t = traj.times[i];
                worst = std::max(worst, std::abs(traj.states[i].z() - closed_form_z(t, d)));
                worst = std::max(worst, std::abs(subspace_ergotropy(traj.states[i], d) - closed_form_ergotropy(t, d)));
            }
            for (double t = 12.0 / gamma; t <= 12.0 / gamma + 60.0; t += 0.01) {
                if (t > 12.0 / gamma) {
                    late_ratio = std::max(late_ratio, closed_form_ergotropy(t, d) / d.kappa);
                }
            }
        }
    }
    // Gamma = 0: the closed form directly, and RK4 at a fifth of the default step.
    double flat = 0.0;
    double flat_rk4 = 0.0;
    for (double dm : {0.0, 1.0, 2.0, 3.0, 4.0}) {
        const BatteryParams p{2.0, 2.0, dm, 1.0};
        const DephasingParams dp = DephasingParams::symmetric(0.0);
        const DephasingDerived d = effective_coupling(p, dp);
        for (double t = 0.0; t <= 100.0; t += 0.01) {
            flat = std::max(flat, std::abs(closed_form_ergotropy(t, d) - d.kappa));
        }
        const int n = 5 * (required_steps(20.0, max_subspace_step(d, dp)) - 1) + 1;
        const auto traj = integrate_subspace(SubspaceState{}, d, dp, 20.0, n);
        for (const auto& s : traj.states) {
            flat_rk4 = std::max(flat_rk4, std::abs(subspace_ergotropy(s, d) - d.kappa));
        }
    }
    const bool ok = worst <= 1e-6 && late_ratio < 0.01 && flat <= 1e-9 && flat_rk4 <= 1e-9;
    return {ok, "closed form vs RK4 " + sci(worst) + " (tol 1e-6); max W/kappa after 12/Gamma " + sci(late_ratio) +
                    " (< 1e-2); |W - kappa| at Gamma=0: closed form " + sci(flat) + ", RK4 " + sci(flat_rk4) +
                    " (tol 1e-9)"};
}

Outcome lindblad_consistency() {
    double worst = 0.0;
    for (double dm : {0.0, 1.0, 3.0}) {
        for (double gamma : {0.25, 1.0}) {
            const BatteryParams p{2.0, 2.0, dm, 1.0};
            const DephasingParams dp = DephasingParams::symmetric(gamma, 1.0, RateConvention::FullLindblad);
            const DephasingDerived d = effective_coupling(p, dp);
            const double t_max = 20.0;
            const int n = required_steps(t_max, std::min(max_lindblad_step(p, dp), max_subspace_step(d, dp)));
            const auto full = integrate_lindblad(DensityMatrix::basis_state(2), p, dp, t_max, n);
            const auto sub = integrate_subspace(SubspaceState{}, d, dp, t_max, n);
            const ComplexMatrix h = battery_charger_hamiltonian(p, dp);
            for (std::size_t i = 0; i < full.times.size(); ++i) {
                const SubspaceState block = single_excitation_block(full.states[i].matrix(), h);
                worst = std::max(worst, std::abs(block.u - sub.states[i].u));
                worst = std::max(worst, std::abs(block.v - sub.states[i].v));
            }
        }
    }
    const CoherenceDecayReport r = measure_coherence_decay({2.0, 2.0, 1.0, 1.0}, 0.5, 30.0);
    std::ostringstream detail;
    detail.precision(6);
    detail << "block vs subspace " << sci(worst) << " (tol 1e-6); fitted coherence damping " << r.fitted_damping
           << " vs subspace-convention " << r.subspace_damping << " (factor " << r.ratio << ")";
    return {worst <= 1e-6, detail.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism() {
    const fs::path root = fs::temp_directory_path() / "qbattery_acceptance_determinism";
    fs::remove_all(root);
    int files = 0;
    std::string mismatch;
    for (int n = 1; n <= 8; ++n) {
        const std::string name = "fig" + std::to_string(n);
        const harness::SweepConfig s = load_preset(name);
        harness::sweep(s, root / (name + "_a"), 1);
        harness::sweep(s, root / (name + "_b"), 4);
        for (const auto& entry : fs::directory_iterator(root / (name + "_a"))) {
            ++files;
            if (slurp(entry.path()) != slurp(root / (name + "_b") / entry.path().filename())) {
                mismatch = name + "/" + entry.path().filename().string();
            }
        }
    }
    fs::remove_all(root);
    return {mismatch.empty(), mismatch.empty() ? std::to_string(files) + " files across fig1..fig8 identical"
                                               : "first mismatch " + mismatch};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 spectrum oracle", spectrum_oracle},
        {"2 gibbs oracle", gibbs_oracle},
        {"3 charging unitary oracle", unitary_oracle},
        {"4 metric identities", metric_identities},
        {"5 figure trends", figure_trends},
        {"6 dephasing closed forms", dephasing_closed_forms},
        {"7 lindblad consistency", lindblad_consistency},
        {"8 determinism", determinism},
    };
    bool all = true;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all &= o.passed;
        std::cout << (o.passed ? "PASS" : "FAIL") << "  " << name << ": " << o.detail << std::endl;
    }
    return all ? 0 : 1;
}
