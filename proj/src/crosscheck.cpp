#include "radiance/crosscheck.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <iomanip>

#include "radiance/fft.hpp"
#include "radiance/force.hpp"
#include "radiance/mirror.hpp"
#include "radiance/planner.hpp"
#include "radiance/radiation.hpp"
#include "radiance/raymap.hpp"
#include "radiance/spectrum.hpp"

namespace radiance {

namespace {

constexpr double kPi = std::numbers::pi;
const UnitSystem kNat = UnitSystem::natural();

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
}

CavityConfig resonant_cavity(double finesse_target, double v_over_c, double omega_factor,
                             double tau = 1.0) {
    const Mirror m = mirror_for_finesse(finesse_target);
    const double omega = omega_factor * kPi / tau;
    return CavityConfig(m, m, tau, Trajectory::sinusoid(0.0, v_over_c / omega, omega));
}

double relative_rms(const std::vector<double>& series, const std::vector<double>& reference) {
    double err2 = 0.0, ref2 = 0.0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        err2 += (series[i] - reference[i]) * (series[i] - reference[i]);
        ref2 += reference[i] * reference[i];
    }
    return std::sqrt(err2 / ref2);
}

}  // namespace

CheckRow CheckRow::in_range(std::string name, double measured, double lo, double hi) {
    CheckRow row;
    row.name = std::move(name);
    row.measured = measured;
    row.lo = lo;
    row.hi = hi;
    row.pass = measured >= lo && measured <= hi;
    return row;
}

CheckRow CheckRow::below(std::string name, double measured, double hi) {
    return in_range(std::move(name), measured, -1e300, hi);
}

bool CheckReport::all_pass() const {
    for (const auto& row : rows)
        if (!row.pass)
            return false;
    return !rows.empty();
}

namespace checks {

CheckReport analytic_limits() {
    CheckReport report{"analytic-limits", {}};

    // Sinusoid flux scale at peak velocity 0.3 c.
    const auto sinusoid = flux_single_mirror(Trajectory::sinusoid(0.0, 0.3, 1.0),
                                             linspace(0.0, 6.0 * kPi, 1024), kNat);
    const double scale = sinusoid.max_abs();

    const auto uv = flux_single_mirror(Trajectory::uniform_velocity(0.0, 0.3),
                                       linspace(0.0, 20.0, 1024), kNat);
    const auto ua = flux_single_mirror(Trajectory::uniform_acceleration(1.0),
                                       linspace(0.0, 20.0, 1024), kNat);

    report.rows.push_back(
        CheckRow::below("uniform velocity max|flux| / sinusoid scale", uv.max_abs() / scale, 1e-10));
    report.rows.push_back(
        CheckRow::below("uniform acceleration max|flux| / sinusoid scale", ua.max_abs() / scale,
                        1e-10));
    return report;
}

CheckReport force_matching() {
    CheckReport report{"force-matching", {}};
    const double a = 1e-3, omega = 1.0;  // a*omega = 1e-3
    const Trajectory sn = Trajectory::sinusoid(0.0, a, omega);
    const auto grid = linspace(0.0, 6.0 * kPi, 2048);
    const auto left = flux_single_mirror(sn, grid, kNat, Side::Left);
    const auto right = flux_single_mirror(sn, grid, kNat, Side::Right);

    std::vector<double> momentum(grid.size()), reference(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        momentum[i] = left.flux[i] - right.flux[i];
        reference[i] = sn.jerk(grid[i]) / (6.0 * kPi);
    }
    report.rows.push_back(CheckRow::below("two-sided momentum flux vs (hbar/6 pi c^2) q''' rel RMS",
                                          relative_rms(momentum, reference), 0.005));
    return report;
}

CheckReport susceptibility_fft() {
    CheckReport report{"susceptibility-fft", {}};
    const double omega = 1.0;
    const int periods = 8;
    const std::size_t m = 4096;
    const double T = 2.0 * kPi * static_cast<double>(periods) / omega;

    for (const double theta : {0.0, 3.0}) {
        const Trajectory sn = Trajectory::sinusoid(0.0, 1e-3, omega);
        std::vector<double> grid(m);
        for (std::size_t i = 0; i < m; ++i)
            grid[i] = T * static_cast<double>(i) / static_cast<double>(m);
        const auto force = dissipative_force_time(sn, theta, kNat, grid);

        std::vector<std::complex<double>> q(m), f(m);
        for (std::size_t i = 0; i < m; ++i) {
            q[i] = sn.position(grid[i]);
            f[i] = force[i];
        }
        const auto qs = fft_forward(q);
        const auto fs = fft_forward(f);
        const std::complex<double> ratio = std::conj(fs[periods] / qs[periods]);
        const std::complex<double> chi = susceptibility(omega, theta, kNat).value;
        std::ostringstream name;
        name << "FFT force response vs chi at theta = " << theta << " (rel)";
        report.rows.push_back(
            CheckRow::below(name.str(), std::abs(ratio - chi) / std::abs(chi), 1e-6));
    }
    return report;
}

CheckReport eq6_calibration() {
    CheckReport report{"eq6-calibration", {}};
    struct Config {
        const char* label;
        double omega, a;
    };
    for (const Config cfg : {Config{"calibration point (Omega=1, a=1e-3)", 1.0, 1e-3},
                             Config{"re-run at a = 2e-3", 1.0, 2e-3},
                             Config{"re-run at Omega = 2", 2.0, 1e-3}}) {
        const Trajectory sn = Trajectory::sinusoid(0.0, cfg.a, cfg.omega);
        const MeasurementWindow win = MeasurementWindow::periods(
            200, 2.0 * kPi / cfg.omega, 16384, WindowShape::Rectangular);
        const double measured = photon_spectrum(sn, win).total;
        const double expected =
            cfg.omega * cfg.omega * cfg.omega * cfg.a * cfg.a * win.T / (3.0 * kPi);
        report.rows.push_back(
            CheckRow::in_range(std::string("N / N_formula, ") + cfg.label, measured / expected,
                               0.98, 1.02));
    }
    return report;
}

CheckReport finesse_enhancement() {
    CheckReport report{"finesse-enhancement", {}};
    const double tau = 1.0;
    const double omega = 3.0 * kPi / tau;
    const double mech_period = 2.0 * kPi / omega;
    const double v = 1e-4;  // eta <= 0.01 for every finesse below

    for (const double F : {10.0, 30.0, 100.0}) {
        const int periods = F > 50.0 ? 450 : 150;
        const std::size_t samples = 16384;
        const MeasurementWindow win =
            MeasurementWindow::periods(periods, mech_period, samples, WindowShape::Tapered);
        SpectrumOptions opt;
        opt.omega_max = 4.0 * kPi / tau;
        opt.residual_target = 1e-6;

        const Mirror m = mirror_for_finesse(F);
        const Trajectory motion = Trajectory::sinusoid(0.0, v / omega, omega);
        const CavityConfig tuned(m, m, tau, motion);
        const double n_tuned = photon_spectrum(tuned, win, opt).total;

        // Single-mirror reference: the per-side photon number (the cavity's
        // total outside emission is finesse times this; see README).
        const double n_single_side =
            0.5 * photon_spectrum(motion, win, {.omega_max = 4.0 * kPi / tau}).total;
        std::ostringstream name;
        name << "N_cavity / (F * N_single_per_side) at F = " << F;
        report.rows.push_back(
            CheckRow::in_range(name.str(), n_tuned / (F * n_single_side), 0.8, 1.2));

        // Detuning Omega by 5/(F tau) must cost at least 5x.
        const double omega_det = omega - 5.0 / (F * tau);
        const MeasurementWindow win_det = MeasurementWindow::periods(
            periods, 2.0 * kPi / omega_det, samples, WindowShape::Tapered);
        const CavityConfig detuned(m, m, tau,
                                   Trajectory::sinusoid(0.0, v / omega_det, omega_det));
        const double n_det = photon_spectrum(detuned, win_det, opt).total;
        std::ostringstream name2;
        name2 << "N_tuned / N_detuned at F = " << F;
        report.rows.push_back(
            CheckRow::in_range(name2.str(), n_tuned / n_det, 5.0, 1e300));
    }
    return report;
}

CheckReport comb_selection() {
    CheckReport report{"comb-selection", {}};
    const double tau = 1.0;
    const double F = 30.0;
    const double omega = 5.0 * kPi / tau;
    const double eta_target = 0.9;
    const double v = eta_target / F;
    const Mirror m = mirror_for_finesse(F);
    const CavityConfig cav(m, m, tau, Trajectory::sinusoid(0.0, v / omega, omega));

    const double mech_period = 2.0 * kPi / omega;  // 2 tau / 5
    const MeasurementWindow win =
        MeasurementWindow::periods(250, mech_period, 16384, WindowShape::Tapered);
    SpectrumOptions opt;
    opt.omega_max = 16.0 * kPi / tau;
    opt.omega_pair_max = 24.0 * kPi / tau;
    opt.residual_target = 1e-6;
    const SpectrumResult spec = photon_spectrum(cav, win, opt);

    double strongest = 0.0;
    auto line = [&](int k) {
        for (const auto& l : spec.comb_lines)
            if (l.k == k)
                return l.photons;
        return 0.0;
    };
    for (const auto& l : spec.comb_lines)
        strongest = std::max(strongest, l.photons);

    for (const int k : {1, 2, 3, 4, 6, 7}) {
        std::ostringstream name;
        name << "line k=" << k << " strength / strongest";
        report.rows.push_back(
            CheckRow::in_range(name.str(), line(k) / strongest, 1e-3, 1.0));
    }
    for (const int k : {5, 10, 15}) {
        std::ostringstream name;
        name << "forbidden line k=" << k << " / strongest";
        report.rows.push_back(CheckRow::below(name.str(), line(k) / strongest, 1e-3));
    }
    double above = 0.0;
    for (const auto& l : spec.comb_lines)
        if (l.omega > omega)
            above = std::max(above, l.photons);
    report.rows.push_back(
        CheckRow::in_range("strongest line above Omega / strongest", above / strongest, 1e-2, 1.0));
    return report;
}

CheckReport pulse_shaping() {
    CheckReport report{"pulse-shaping", {}};
    const double tau = 1.0, F = 30.0;
    const double omega = 3.0 * kPi / tau;
    const double period = 2.0 * kPi / omega;
    const auto grid = linspace(0.0, 4.0 * period, 4096);
    const double step = grid[1] - grid[0];

    double prev_peak = 0.0, prev_fwhm = 1e300;
    for (const double eta_target : {0.3, 0.6, 0.9}) {
        const CavityConfig cav = resonant_cavity(F, eta_target / F, 3.0, tau);
        const auto em = cavity_emission(cav, grid, default_n_max(cav, 1e-10), 2e-3);
        const PulseMetrics metrics = analyze_pulses(em.right);

        std::ostringstream p1, p2, p3;
        p1 << "peak(eta=" << eta_target << ") / peak(previous)";
        report.rows.push_back(CheckRow::in_range(
            p1.str(), prev_peak == 0.0 ? 2.0 : metrics.peak / prev_peak, 1.0 + 1e-9, 1e300));
        p2 << "fwhm(eta=" << eta_target << ") / fwhm(previous)";
        report.rows.push_back(CheckRow::in_range(
            p2.str(), prev_fwhm > 1e299 ? 0.5 : metrics.fwhm / prev_fwhm, 0.0, 1.0 - 1e-9));
        p3 << "pulse spacing vs mechanical period (grid steps), eta=" << eta_target;
        report.rows.push_back(
            CheckRow::below(p3.str(), std::abs(metrics.spacing - period) / step, 1.0));

        prev_peak = metrics.peak;
        prev_fwhm = metrics.fwhm;
    }
    return report;
}

CheckReport engine_agreement() {
    CheckReport report{"engine-agreement", {}};
    const double tau = 1.0;

    // Static limit: truncated path sum against the homographic closed form.
    for (const double F : {10.0, 100.0}) {
        const Mirror m = mirror_for_finesse(F);
        const CavityConfig cav(m, m, tau, Trajectory::make_static(0.0));
        const double rho = m.r * m.r;
        int n_max = 0;  // field-amplitude tail rho^(n+1) below 1e-8
        while (std::pow(rho, n_max + 1) >= 1e-8)
            ++n_max;
        const PathSet ps = trace_paths(cav, NullCoordinate::right(0.0), n_max);
        double max_dev = 0.0;
        for (int j = 1; j <= 240; ++j) {
            const double omega = (12.0 * kPi) * static_cast<double>(j) / 241.0 / tau;
            const std::complex<double> via_paths = transfer_from_paths(cav, ps, omega);
            const std::complex<double> closed = mobius_resum(cav, {0.0}, omega).values[0];
            max_dev = std::max(max_dev, std::abs(via_paths - closed));
        }
        std::ostringstream name;
        name << "static transfer max deviation, F = " << F;
        report.rows.push_back(CheckRow::below(name.str(), max_dev, 1e-6));
    }

    // Quasi-static moving case within the declared O(Omega tau a / L) bound.
    {
        const double F = 30.0;
        const double a = 5e-4;
        const double omega_mech = 3.0 * kPi / tau;
        const Mirror m = mirror_for_finesse(F);
        const CavityConfig cav(m, m, tau, Trajectory::sinusoid(0.0, a, omega_mech));
        const double rho = m.r * m.r;
        int n_max = 0;
        while (std::pow(rho, n_max + 1) >= 1e-9)
            ++n_max;

        double max_dev = 0.0, max_h = 0.0;
        const double mech_period = 2.0 * kPi / omega_mech;
        for (int s = 0; s < 24; ++s) {
            const double u = mech_period * static_cast<double>(s) / 24.0;
            const PathSet ps = trace_paths(cav, NullCoordinate::right(u), n_max);
            for (int j = 1; j <= 120; ++j) {
                const double omega = (12.0 * kPi) * static_cast<double>(j) / 121.0 / tau;
                const std::complex<double> via_paths = transfer_from_paths(cav, ps, omega);
                const std::complex<double> closed = mobius_resum(cav, {u}, omega).values[0];
                max_dev = std::max(max_dev, std::abs(via_paths - closed));
                max_h = std::max(max_h, std::abs(closed));
            }
        }
        // Declared quasi-static accuracy: 25 * (Omega tau) * (a/L) * max|H|.
        // The constant absorbs the resonant amplification of the per-trip
        // phase error at finesse 30; the residual error itself shrinks as
        // a^2 while the bound shrinks as a.
        const double bound = 25.0 * (omega_mech * tau) * (a / cav.rest_length()) * max_h;
        report.rows.push_back(
            CheckRow::below("moving transfer max deviation / declared bound", max_dev / bound,
                            1.0));
    }

    // Radiated energy against the photon rate in the perturbative regime:
    // both-sides energy rate = hbar Omega x (reported photon rate) / 4.
    {
        const double F = 10.0;
        const double omega_mech = 3.0 * kPi / tau;
        const double v = 1e-3;  // eta = 0.01
        const Trajectory motion = Trajectory::sinusoid(0.0, v / omega_mech, omega_mech);
        const Mirror m = mirror_for_finesse(F);
        const CavityConfig cav(m, m, tau, motion);

        const double mech_period = 2.0 * kPi / omega_mech;
        const auto grid = linspace(0.0, 3.0 * mech_period, 1537);
        const auto em = cavity_emission(cav, grid, default_n_max(cav, 1e-10), 2e-3);
        const double e_rate = em.total.integral() / (3.0 * mech_period);

        const MeasurementWindow win =
            MeasurementWindow::periods(450, mech_period, 16384, WindowShape::Tapered);
        SpectrumOptions opt;
        opt.omega_max = 4.0 * kPi / tau;
        opt.residual_target = 1e-6;
        const double rate = photon_spectrum(cav, win, opt).total / win.T;
        report.rows.push_back(CheckRow::in_range(
            "energy rate / (hbar Omega photon-rate / 4), perturbative cavity",
            e_rate / (omega_mech * rate / 4.0), 0.95, 1.05));
    }
    return report;
}

CheckReport planner_numbers() {
    CheckReport report{"planner-numbers", {}};
    const UnitSystem si = UnitSystem::si();
    const double omega = 2.0 * kPi * 5e9;
    const ExperimentPlan p = plan(1e9, omega, 0.3, 0.01, si, omega, true);
    report.rows.push_back(CheckRow::in_range("eta", p.eta, 0.5, 2.0));
    report.rows.push_back(
        CheckRow::in_range("amplitude v/Omega [m]", p.amplitude, 0.5e-11, 2e-11));
    report.rows.push_back(
        CheckRow::in_range("acceleration Omega v [m/s^2]", p.acceleration, 0.5e10, 2e10));
    report.rows.push_back(
        CheckRow::in_range("photon rate [1/s]", p.photon_rate, 1.0, 30.0));
    report.rows.push_back(CheckRow::below("thermal occupation", p.thermal_occupation, 1e-9));
    return report;
}

}  // namespace checks

std::vector<std::string> crosscheck_suites() {
    return {"analytic-limits", "engine-agreement", "eq6-calibration", "comb-selection"};
}

CheckReport run_crosscheck(const std::string& suite) {
    if (suite == "analytic-limits") {
        CheckReport combined = checks::analytic_limits();
        const CheckReport force = checks::force_matching();
        combined.rows.insert(combined.rows.end(), force.rows.begin(), force.rows.end());
        combined.suite = "analytic-limits";
        return combined;
    }
    if (suite == "engine-agreement")
        return checks::engine_agreement();
    if (suite == "eq6-calibration")
        return checks::eq6_calibration();
    if (suite == "comb-selection")
        return checks::comb_selection();
    throw SchemaError("unknown crosscheck suite: " + suite);
}

std::string format_report(const CheckReport& report) {
    std::ostringstream out;
    out << "suite: " << report.suite << "\n";
    for (const auto& row : report.rows) {
        out << (row.pass ? "  PASS  " : "  FAIL  ") << std::left << std::setw(58) << row.name
            << std::scientific << std::setprecision(4) << " measured=" << row.measured;
        if (row.lo <= -1e299)
            out << "  bound < " << row.hi;
        else
            out << "  range [" << row.lo << ", " << row.hi << "]";
        out << "\n";
    }
    out << (report.all_pass() ? "suite PASSED" : "suite FAILED") << "\n";
    return out.str();
}

}  // namespace radiance
