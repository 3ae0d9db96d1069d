#include "radiance/radiation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "radiance/parallel.hpp"

namespace radiance {

namespace {

constexpr double kFluxNorm = 1.0 / (24.0 * std::numbers::pi);  // times hbar

double schwarzian_flux(const MapJet& jet, double hbar) {
    return -hbar * kFluxNorm * jet.schwarzian();
}

// Numeric symmetric point splitting of one diagonal term, with the
// per-path vacuum piece removed: -(hbar/4pi) [F'(u+)F'(u-)/(dF)^2 - 1/eps^2].
// noise_out reports the rounding floor of the 1/eps^2 cancellation, which
// grows like eps_mach |F| / eps^3.
double diagonal_numeric(const CavityConfig& cav, std::size_t path_index, double u, double eps,
                        int n_max, double* noise_out) {
    const PathSet plus = trace_paths(cav, NullCoordinate::right(u + 0.5 * eps), n_max);
    const PathSet minus = trace_paths(cav, NullCoordinate::right(u - 0.5 * eps), n_max);
    const auto& p = plus.contributions[path_index];
    const auto& m = minus.contributions[path_index];
    const double df = p.jet.value - m.jet.value;
    const double hbar = cav.units().hbar;
    const double k = hbar / (4.0 * std::numbers::pi);
    if (noise_out) {
        const double fmag = std::max(std::abs(p.jet.value), std::abs(m.jet.value)) + 1.0;
        *noise_out = 32.0 * k * 1.1e-16 * fmag / (eps * eps * eps);
    }
    return -k * (p.jet.d1 * m.jet.d1 / (df * df) - 1.0 / (eps * eps));
}

void validate_split(const CavityConfig& cav, const std::vector<double>& u_grid, int n_max,
                    double eps, double flux_scale) {
    // Richardson check of the analytic diagonal on a few grid points and the
    // few strongest paths.
    const double hbar = cav.units().hbar;
    const std::size_t n_points = std::min<std::size_t>(4, u_grid.size());
    for (std::size_t k = 0; k < n_points; ++k) {
        const double u = u_grid[k * u_grid.size() / n_points];
        const PathSet ps = trace_paths(cav, NullCoordinate::right(u), n_max);
        const std::size_t n_paths = std::min<std::size_t>(3, ps.contributions.size());
        for (std::size_t p = 0; p < n_paths; ++p) {
            const double analytic = schwarzian_flux(ps.contributions[p].jet, hbar);
            double noise1 = 0.0, noise2 = 0.0;
            const double d1 = diagonal_numeric(cav, p, u, eps, n_max, &noise1);
            const double d2 = diagonal_numeric(cav, p, u, 0.5 * eps, n_max, &noise2);
            const double richardson = (4.0 * d2 - d1) / 3.0;
            const double scale = std::max(flux_scale, hbar / (4.0 * std::numbers::pi *
                                                              4.0 * cav.tau() * cav.tau()));
            const double tolerance = 1e-6 * scale + 2.0 * (noise1 + noise2);
            if (std::abs(richardson - analytic) > tolerance)
                throw SplitInstability(
                    "point-split diagonal disagrees with the analytic Schwarzian "
                    "beyond 1e-6 of the flux scale");
        }
    }
}

}  // namespace

double FluxSeries::integral() const {
    double sum = 0.0;
    for (std::size_t i = 1; i < u_grid.size(); ++i)
        sum += 0.5 * (flux[i] + flux[i - 1]) * (u_grid[i] - u_grid[i - 1]);
    return sum;
}

double FluxSeries::max_abs() const {
    double m = 0.0;
    for (const double f : flux)
        m = std::max(m, std::abs(f));
    return m;
}

FluxSeries flux_single_mirror(const Trajectory& traj, const std::vector<double>& u_grid,
                              const UnitSystem& units, Side side) {
    if (traj.kind() == TrajectoryKind::Sampled && traj.jerk_noise_estimate() > 0.10)
        throw DerivativeNoise("sampled trajectory too coarse for the Schwarzian flux");
    FluxSeries out;
    out.u_grid = u_grid;
    out.flux.resize(u_grid.size());
    out.engine = "schwarzian-single";
    out.descriptor = traj.describe();
    const Chirality branch =
        (side == Side::Left) ? Chirality::LeftMoving : Chirality::RightMoving;
    constexpr std::size_t kBlock = 1024;
    const std::size_t n_blocks = (u_grid.size() + kBlock - 1) / kBlock;
    parallel_for_blocks(n_blocks, [&](std::size_t b) {
        const std::size_t begin = b * kBlock;
        const std::size_t end = std::min(u_grid.size(), (b + 1) * kBlock);
        for (std::size_t i = begin; i < end; ++i) {
            const MapJet jet = ray_map_single_jet(traj, {u_grid[i], branch});
            out.flux[i] = schwarzian_flux(jet, units.hbar);
        }
    });
    return out;
}

FluxSeries energy_density_cavity(const CavityConfig& cav, const std::vector<double>& u_grid,
                                 int n_max, double eps_split, SignConvention convention) {
    const double hbar = cav.units().hbar;
    // Finest trajectory timescale: the mechanical period when the cavity
    // actually moves, otherwise unconstrained.
    double traj_timescale = std::numeric_limits<double>::infinity();
    if (cav.motion().kind() == TrajectoryKind::Sinusoid &&
        cav.motion().displacement_amplitude() > 0.0)
        traj_timescale = 2.0 * std::numbers::pi * cav.motion().displacement_amplitude() /
                         cav.motion().peak_velocity();
    if (!(eps_split > 0.0) || eps_split > traj_timescale / 100.0)
        throw PhysicsError("eps_split must be positive and below the finest timescale / 100");

    FluxSeries out;
    out.u_grid = u_grid;
    out.flux.resize(u_grid.size());
    out.engine = "point-split-cavity";
    out.descriptor = cav.motion().describe();
    out.epsilon = eps_split;

    const double k_offdiag = hbar / (4.0 * std::numbers::pi);
    constexpr std::size_t kBlock = 64;
    const std::size_t n_blocks = (u_grid.size() + kBlock - 1) / kBlock;
    parallel_for_blocks(n_blocks, [&](std::size_t b) {
        const std::size_t begin = b * kBlock;
        const std::size_t end = std::min(u_grid.size(), (b + 1) * kBlock);
        for (std::size_t i = begin; i < end; ++i) {
            const PathSet ps =
                trace_paths(cav, NullCoordinate::right(u_grid[i]), n_max, convention);
            double e = 0.0;
            const auto& cs = ps.contributions;
            for (const auto& p : cs)
                e += p.amplitude * p.amplitude * schwarzian_flux(p.jet, hbar);
            for (std::size_t p = 0; p + 1 < cs.size(); ++p) {
                for (std::size_t q = p + 1; q < cs.size(); ++q) {
                    if (cs[p].input_channel != cs[q].input_channel)
                        continue;  // independent vacua: no cross terms
                    const double df = cs[p].jet.value - cs[q].jet.value;
                    e += -2.0 * k_offdiag * cs[p].amplitude * cs[q].amplitude *
                         cs[p].jet.d1 * cs[q].jet.d1 / (df * df);
                }
            }
            out.flux[i] = e;
        }
    });

    validate_split(cav, u_grid, n_max, eps_split, out.max_abs());
    return out;
}

CavityEmission cavity_emission(const CavityConfig& cav, const std::vector<double>& u_grid,
                               int n_max, double eps_split) {
    CavityEmission em;
    em.right = energy_density_cavity(cav, u_grid, n_max, eps_split);
    em.left = energy_density_cavity(cav.reflected(), u_grid, n_max, eps_split);
    em.left.engine = "point-split-cavity";
    em.total.u_grid = u_grid;
    em.total.flux.resize(u_grid.size());
    em.total.engine = "point-split-cavity(total)";
    em.total.descriptor = em.right.descriptor;
    em.total.epsilon = eps_split;
    for (std::size_t i = 0; i < u_grid.size(); ++i)
        em.total.flux[i] = em.right.flux[i] + em.left.flux[i];
    return em;
}

PulseMetrics analyze_pulses(const FluxSeries& series) {
    PulseMetrics m;
    const auto& f = series.flux;
    const auto& u = series.u_grid;
    if (f.size() < 8)
        return m;
    const auto it = std::max_element(f.begin(), f.end());
    const std::size_t peak_idx = static_cast<std::size_t>(it - f.begin());
    m.peak = *it;

    // Half-maximum crossings around the tallest pulse, linearly interpolated.
    const double half = 0.5 * m.peak;
    double left = u.front(), right = u.back();
    for (std::size_t i = peak_idx; i-- > 0;) {
        if (f[i] <= half) {
            const double s = (half - f[i]) / (f[i + 1] - f[i]);
            left = u[i] + s * (u[i + 1] - u[i]);
            break;
        }
    }
    for (std::size_t i = peak_idx + 1; i < f.size(); ++i) {
        if (f[i] <= half) {
            const double s = (f[i - 1] - half) / (f[i - 1] - f[i]);
            right = u[i - 1] + s * (u[i] - u[i - 1]);
            break;
        }
    }
    m.fwhm = right - left;

    // Pulse spacing from the first local maximum of the autocorrelation at
    // positive lag (mean removed).
    const std::size_t n = f.size();
    double mean = 0.0;
    for (const double x : f)
        mean += x;
    mean /= static_cast<double>(n);
    std::vector<double> ac(n / 2, 0.0);
    for (std::size_t lag = 0; lag < ac.size(); ++lag) {
        double s = 0.0;
        for (std::size_t i = 0; i + lag < n; ++i)
            s += (f[i] - mean) * (f[i + lag] - mean);
        ac[lag] = s / static_cast<double>(n - lag);
    }
    // Repetition estimate: the smallest lag whose autocorrelation peak is
    // essentially as strong as the global one.  Sub-period humps correlate
    // weaker than the full pattern period unless they are exact repeats, in
    // which case the smaller lag legitimately wins.
    std::size_t lag = 1;
    while (lag + 1 < ac.size() && ac[lag] > 0.0 && ac[lag] <= ac[lag - 1])
        ++lag;
    std::size_t best = lag;
    for (std::size_t l = lag; l < ac.size(); ++l)
        if (ac[l] > ac[best])
            best = l;
    for (std::size_t l = lag; l + 1 < ac.size(); ++l) {
        if (ac[l] >= ac[l - 1] && ac[l] >= ac[l + 1] && ac[l] >= 0.98 * ac[best]) {
            best = l;
            break;
        }
    }
    // The windowed autocorrelation peak is biased by a few samples for short
    // trains, so it only seeds the search: the spacing is taken from the
    // parabolic-refined positions of the pulse maxima themselves.  The 0.8
    // floor keeps secondary humps out of the pulse list.
    const double du = u[1] - u[0];
    const double coarse = du * static_cast<double>(best);
    std::vector<double> peak_pos, peak_val;
    const double floor_level = 0.8 * m.peak;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(f[i] >= f[i - 1] && f[i] >= f[i + 1] && f[i] > floor_level))
            continue;
        double pos = u[i];
        const double denom = f[i - 1] - 2.0 * f[i] + f[i + 1];
        if (denom < 0.0)
            pos += 0.5 * du * (f[i - 1] - f[i + 1]) / denom;
        if (!peak_pos.empty() && pos - peak_pos.back() < 0.5 * coarse) {
            if (f[i] > peak_val.back()) {  // same pulse: keep the taller sample
                peak_pos.back() = pos;
                peak_val.back() = f[i];
            }
            continue;
        }
        peak_pos.push_back(pos);
        peak_val.push_back(f[i]);
    }
    if (peak_pos.size() >= 2) {
        std::vector<double> gaps;
        for (std::size_t k = 1; k < peak_pos.size(); ++k)
            gaps.push_back(peak_pos[k] - peak_pos[k - 1]);
        std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
        m.spacing = gaps[gaps.size() / 2];
    } else {
        m.spacing = coarse;
    }
    return m;
}

}  // namespace radiance
