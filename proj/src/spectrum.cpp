#include "radiance/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "radiance/fft.hpp"
#include "radiance/parallel.hpp"

namespace radiance {

namespace {

// Photon-count normalization of the mode-mixing transform, fixed once
// against the perturbative single-mirror rate (one-time calibration, never
// adjusted afterwards).
constexpr double kPhotonNumberCalibration = 2.0;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

double sinusoid_omega(const Trajectory& traj) {
    if (traj.kind() == TrajectoryKind::Sinusoid && traj.displacement_amplitude() > 0.0)
        return traj.peak_velocity() / traj.displacement_amplitude();
    return 0.0;
}

struct DensityAccumulator {
    std::vector<double> omega;    // j * domega, j = 1..J
    std::vector<double> density;  // photons per unit frequency
    double domega = 0.0;
};

// Adds one output side's contribution: for every partner frequency
// w' = l domega the windowed transform of sum_p A_p e^{-i w' F_p} F_p' is
// taken over the grid by FFT, giving beta(w, w') for all w at once; the two
// input channels are accumulated separately (uncorrelated vacua).
//
// ref_shifts, when given, holds the per-path delays s_p of the same cavity
// at rest (F_p(u) = u + s_p); the rest response is subtracted amplitude-wise
// so that only motion-induced mixing is counted.  Without the subtraction a
// tapered window manufactures its own infrared switch-on pairs.  Rest maps
// are pure shifts, so the subtraction costs one extra effective path per
// channel.
void accumulate_side(const PathTable& table, const MeasurementWindow& win, std::size_t n_pair,
                     const std::vector<double>* ref_shifts, DensityAccumulator& acc) {
    const std::size_t m = win.samples;
    const std::size_t n_paths = table.paths.size();
    const double dt = win.dt();
    const double domega = acc.domega;
    const std::vector<double> w = win.weights();

    // Amplitude-weighted window factors and per-step phase rotations.
    std::vector<double> weight(n_paths * m);
    std::vector<std::complex<double>> step(n_paths * m);
    std::vector<std::complex<double>> z(n_paths * m);
    for (std::size_t p = 0; p < n_paths; ++p) {
        const auto& col = table.paths[p];
        for (std::size_t i = 0; i < m; ++i) {
            weight[p * m + i] = col.amplitude * col.F1[i] * w[i];
            step[p * m + i] = std::polar(1.0, -domega * col.F[i]);
            z[p * m + i] = step[p * m + i];
        }
    }

    // Rest-reference recurrence e^{-i w' u_i} shared by all reference paths.
    std::vector<std::complex<double>> ref_step, ref_z;
    if (ref_shifts) {
        ref_step.resize(m);
        ref_z.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            ref_step[i] = std::polar(1.0, -domega * table.u[i]);
            ref_z[i] = ref_step[i];
        }
    }

    const double norm = kPhotonNumberCalibration / win.power_fraction();
    const double beta_factor = dt / (2.0 * std::numbers::pi);

    constexpr std::size_t kPathBlock = 64;
    const std::size_t n_blocks = (n_paths + kPathBlock - 1) / kPathBlock;
    std::vector<std::vector<std::complex<double>>> partial_left(
        n_blocks, std::vector<std::complex<double>>(m));
    std::vector<std::vector<std::complex<double>>> partial_right(
        n_blocks, std::vector<std::complex<double>>(m));

    std::vector<std::complex<double>> s(m), spectrum_buf(m);
    const std::size_t n_bins = acc.omega.size();

    for (std::size_t l = 1; l <= n_pair; ++l) {
        parallel_for_blocks(n_blocks, [&](std::size_t b) {
            auto& pl = partial_left[b];
            auto& pr = partial_right[b];
            std::fill(pl.begin(), pl.end(), std::complex<double>(0.0, 0.0));
            std::fill(pr.begin(), pr.end(), std::complex<double>(0.0, 0.0));
            const std::size_t p_begin = b * kPathBlock;
            const std::size_t p_end = std::min(n_paths, p_begin + kPathBlock);
            for (std::size_t p = p_begin; p < p_end; ++p) {
                auto* target =
                    (table.paths[p].channel == InputChannel::LeftVacuum) ? pl.data() : pr.data();
                const double* wp = &weight[p * m];
                const std::complex<double>* sp = &step[p * m];
                std::complex<double>* zp = &z[p * m];
                if (l == 1) {
                    for (std::size_t i = 0; i < m; ++i)
                        target[i] += wp[i] * zp[i];
                } else {
                    for (std::size_t i = 0; i < m; ++i) {
                        zp[i] *= sp[i];
                        target[i] += wp[i] * zp[i];
                    }
                }
            }
        });

        const double omega_prime = static_cast<double>(l) * domega;
        if (ref_shifts && l > 1)
            for (std::size_t i = 0; i < m; ++i)
                ref_z[i] *= ref_step[i];
        for (int channel = 0; channel < 2; ++channel) {
            const InputChannel want =
                (channel == 0) ? InputChannel::LeftVacuum : InputChannel::RightVacuum;
            const auto& partials = (channel == 0) ? partial_left : partial_right;
            bool any = false;
            for (std::size_t p = 0; p < n_paths && !any; ++p)
                any = (table.paths[p].channel == want);
            if (!any)
                continue;
            std::fill(s.begin(), s.end(), std::complex<double>(0.0, 0.0));
            for (const auto& part : partials)
                for (std::size_t i = 0; i < m; ++i)
                    s[i] += part[i];
            if (ref_shifts) {
                std::complex<double> rest{0.0, 0.0};
                for (std::size_t p = 0; p < n_paths; ++p)
                    if (table.paths[p].channel == want)
                        rest += table.paths[p].amplitude *
                                std::polar(1.0, -omega_prime * (*ref_shifts)[p]);
                for (std::size_t i = 0; i < m; ++i)
                    s[i] -= rest * w[i] * ref_z[i];
            }
            fft_forward(s, spectrum_buf);
            for (std::size_t j = 0; j < n_bins; ++j) {
                const double omega = acc.omega[j];
                const double mag = std::norm(spectrum_buf[j + 1]);
                acc.density[j] +=
                    norm * beta_factor * beta_factor * (omega_prime / omega) * mag * domega;
            }
        }
    }
}

SpectrumResult assemble_result(const DensityAccumulator& acc, double tau, double window_T,
                               double residual) {
    SpectrumResult res;
    res.omega_grid = acc.omega;
    res.density = acc.density;
    res.tau = tau;
    res.truncation_residual = residual;
    double total = 0.0;
    for (std::size_t j = 1; j < res.density.size(); ++j)
        total += 0.5 * (res.density[j] + res.density[j - 1]) * acc.domega;
    res.total = total;
    if (tau > 0.0) {
        const double pi = std::numbers::pi;
        const int k_max = static_cast<int>(std::floor(res.omega_grid.back() * tau / pi + 1e-9));
        for (int k = 1; k <= k_max; ++k) {
            CombLine line;
            line.k = k;
            line.omega = static_cast<double>(k) * pi / tau;
            const double half_width = pi / window_T * (1.0 + 1e-9);
            double photons = 0.0;
            for (std::size_t j = 0; j < res.omega_grid.size(); ++j)
                if (std::abs(res.omega_grid[j] - line.omega) <= half_width)
                    photons += res.density[j] * acc.domega;
            line.photons = photons;
            res.comb_lines.push_back(line);
        }
    }
    return res;
}

DensityAccumulator make_accumulator(const MeasurementWindow& win, double omega_max) {
    DensityAccumulator acc;
    acc.domega = win.domega();
    const auto n_bins = static_cast<std::size_t>(std::floor(omega_max / acc.domega + 1e-9));
    if (n_bins < 2)
        throw PhysicsError("spectrum grid needs at least two frequency bins");
    if (n_bins + 1 > win.samples / 2)
        throw AliasingError("requested frequency cutoff exceeds the window Nyquist range");
    acc.omega.resize(n_bins);
    for (std::size_t j = 0; j < n_bins; ++j)
        acc.omega[j] = static_cast<double>(j + 1) * acc.domega;
    acc.density.assign(n_bins, 0.0);
    return acc;
}

std::size_t resolve_pair_bins(const MeasurementWindow& win, double omega_max,
                              double omega_pair_max) {
    const double pair_max = omega_pair_max > 0.0 ? omega_pair_max : omega_max;
    const auto n_pair = static_cast<std::size_t>(std::floor(pair_max / win.domega() + 1e-9));
    if (n_pair < 1)
        throw PhysicsError("spectrum needs at least one partner-frequency bin");
    if (omega_max + static_cast<double>(n_pair) * win.domega() > win.nyquist())
        throw AliasingError("omega + omega' exceeds the grid Nyquist bound");
    return n_pair;
}

}  // namespace

MeasurementWindow MeasurementWindow::periods(int n_periods, double mech_period,
                                             std::size_t samples, WindowShape shape,
                                             double taper) {
    if (n_periods < 1 || mech_period <= 0.0)
        throw PhysicsError("measurement window needs a positive integer number of periods");
    if (!is_power_of_two(samples) || samples < 16)
        throw PhysicsError("measurement window sample count must be a power of two >= 16");
    if (taper < 0.0 || taper > 0.5)
        throw PhysicsError("taper fraction must lie in [0, 0.5]");
    MeasurementWindow win;
    win.T = static_cast<double>(n_periods) * mech_period;
    win.samples = samples;
    win.shape = shape;
    win.taper = taper;
    return win;
}

double MeasurementWindow::domega() const { return 2.0 * std::numbers::pi / T; }
double MeasurementWindow::nyquist() const { return std::numbers::pi / dt(); }

std::vector<double> MeasurementWindow::grid() const {
    std::vector<double> u(samples);
    const double step = dt();
    for (std::size_t i = 0; i < samples; ++i)
        u[i] = static_cast<double>(i) * step;
    return u;
}

std::vector<double> MeasurementWindow::weights() const {
    std::vector<double> w(samples, 1.0);
    if (shape == WindowShape::Rectangular || taper == 0.0)
        return w;
    const double ramp = taper * T;
    const double step = dt();
    for (std::size_t i = 0; i < samples; ++i) {
        const double u = static_cast<double>(i) * step;
        if (u < ramp)
            w[i] = 0.5 * (1.0 - std::cos(std::numbers::pi * u / ramp));
        else if (u > T - ramp)
            w[i] = 0.5 * (1.0 - std::cos(std::numbers::pi * (T - u) / ramp));
    }
    return w;
}

double MeasurementWindow::power_fraction() const {
    const auto w = weights();
    double s = 0.0;
    for (const double x : w)
        s += x * x;
    return s / static_cast<double>(samples);
}

void MeasurementWindow::validate(double omega_requested) const {
    if (nyquist() < 8.0 * omega_requested)
        throw AliasingError("window sample count below the 8x Nyquist margin "
                            "for the requested frequency");
}

namespace {

BetaPair quadrature_pair(const PathTable& table, double omega, double omega_prime,
                         const MeasurementWindow& win, double kernel_sign) {
    if (omega <= 0.0 || omega_prime <= 0.0)
        throw PhysicsError("mode frequencies must be positive");
    if (omega + omega_prime > win.nyquist())
        throw AliasingError("omega + omega' exceeds the grid Nyquist bound");
    const std::vector<double> w = win.weights();
    const double dt = win.dt();
    BetaPair out;
    for (const auto& col : table.paths) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t i = 0; i < win.samples; ++i) {
            const double u = table.u[i];
            const double phase = -omega * u + kernel_sign * omega_prime * col.F[i];
            acc += w[i] * col.F1[i] * std::polar(1.0, phase);
        }
        acc *= col.amplitude * dt / (2.0 * std::numbers::pi) *
               std::sqrt(omega_prime / omega);
        if (col.channel == InputChannel::LeftVacuum)
            out.left += acc;
        else
            out.right += acc;
    }
    return out;
}

}  // namespace

BetaPair bogoliubov_beta(const PathTable& table, double omega, double omega_prime,
                         const MeasurementWindow& win) {
    return quadrature_pair(table, omega, omega_prime, win, -1.0);
}

BetaPair bogoliubov_alpha(const PathTable& table, double omega, double omega_prime,
                          const MeasurementWindow& win) {
    return quadrature_pair(table, omega, omega_prime, win, +1.0);
}

namespace {

// Per-path delays of the cavity at rest; the rest maps are pure shifts
// F_p(u) = u + s_p, so one trace at u = 0 fixes them all.
std::vector<double> rest_shifts(const CavityConfig& cav, int n_max) {
    const CavityConfig rest(cav.mirror_left(), cav.mirror_right(), cav.rest_length(),
                            Trajectory::make_static(cav.motion().mean_position(),
                                                    cav.units().c),
                            cav.units());
    const PathSet ps = trace_paths(rest, NullCoordinate::right(0.0), n_max);
    std::vector<double> shifts(ps.contributions.size());
    for (std::size_t p = 0; p < shifts.size(); ++p)
        shifts[p] = ps.contributions[p].jet.value;
    return shifts;
}

}  // namespace

SpectrumResult photon_spectrum(const CavityConfig& cav, const MeasurementWindow& win,
                               const SpectrumOptions& options) {
    const double tau = cav.tau();
    const double omega_max =
        options.omega_max > 0.0 ? options.omega_max : 12.0 * std::numbers::pi / tau;
    win.validate(omega_max);
    const int n_max =
        options.n_max >= 0 ? options.n_max : default_n_max(cav, options.residual_target);

    DensityAccumulator acc = make_accumulator(win, omega_max);
    const std::size_t n_pair = resolve_pair_bins(win, omega_max, options.omega_pair_max);

    const std::vector<double> grid = win.grid();
    double residual = 0.0;
    for (const CavityConfig& side : {cav, cav.reflected()}) {
        const PathTable table = tabulate_paths(side, grid, n_max);
        const std::vector<double> shifts = rest_shifts(side, n_max);
        if (shifts.size() != table.paths.size())
            throw NumericsError("rest-reference path set does not match the moving one");
        accumulate_side(table, win, n_pair, &shifts, acc);
        residual = table.truncation_residual;
    }
    return assemble_result(acc, tau, win.T, residual);
}

SpectrumResult photon_spectrum(const Trajectory& traj, const MeasurementWindow& win,
                               const SpectrumOptions& options) {
    const double omega_mech = sinusoid_omega(traj);
    const double omega_max = options.omega_max > 0.0
                                 ? options.omega_max
                                 : (omega_mech > 0.0 ? 4.0 * omega_mech
                                                     : 32.0 * win.domega());
    win.validate(omega_max);

    DensityAccumulator acc = make_accumulator(win, omega_max);
    const std::size_t n_pair = resolve_pair_bins(win, omega_max, options.omega_pair_max);

    const std::vector<double> grid = win.grid();
    const Trajectory rest = Trajectory::make_static(traj.mean_position(), traj.light_speed());
    for (const Side side : {Side::Left, Side::Right}) {
        const PathTable table = tabulate_single_mirror(traj, grid, side);
        const PathTable ref = tabulate_single_mirror(rest, {0.0}, side);
        const std::vector<double> shifts = {ref.paths[0].F[0]};
        accumulate_side(table, win, n_pair, &shifts, acc);
    }
    return assemble_result(acc, 0.0, win.T, 0.0);
}

namespace {

template <typename Source>
double total_with_doubling(const Source& src, const MeasurementWindow& win,
                           const SpectrumOptions& options) {
    const double n1 = photon_spectrum(src, win, options).total;
    MeasurementWindow fine = win;
    fine.samples *= 2;
    const double n2 = photon_spectrum(src, fine, options).total;
    if (std::abs(n2 - n1) > 0.01 * std::max(std::abs(n2), 1e-300))
        throw NonConverged("total photon number moved by >= 1% when doubling the grid");
    return n2;
}

}  // namespace

double total_photon_number(const CavityConfig& cav, const MeasurementWindow& win,
                           const SpectrumOptions& options) {
    return total_with_doubling(cav, win, options);
}

double total_photon_number(const Trajectory& traj, const MeasurementWindow& win,
                           const SpectrumOptions& options) {
    return total_with_doubling(traj, win, options);
}

}  // namespace radiance
