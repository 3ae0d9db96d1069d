#include "radiance/raymap.hpp"

#include <algorithm>
#include <cmath>

#include "radiance/parallel.hpp"

namespace radiance {

namespace {

// Root of g(t) = t -+ (offset + q(t))/c = x.  g is strictly monotone
// because |q'| < c, so the root is unique.
struct Solved {
    double t = 0.0;
    Kinematics kin;  // trajectory kinematics at the root
};

double g_of(double t, double x_sign, const Trajectory& traj, double offset, double c,
            Kinematics* kin_out) {
    const Kinematics k = traj.kinematics(t);
    if (kin_out)
        *kin_out = k;
    return t + x_sign * (offset + k.q) / c;
}

Solved solve_null_intersection(const Trajectory& traj, double offset, Chirality branch, double x,
                               double c) {
    // branch RightMoving: t - w(t)/c = x; LeftMoving: t + w(t)/c = x.
    const double sign = (branch == Chirality::RightMoving) ? -1.0 : 1.0;
    const TimeWindow win = traj.window();

    auto eval = [&](double t, Kinematics* k) { return g_of(t, sign, traj, offset, c, k); };

    // Static seed.
    Kinematics k0;
    double t = std::clamp(x, win.t_min, win.t_max);
    const double w0 = offset + traj.kinematics(t).q;
    t = std::clamp(x - sign * w0 / c, win.t_min, win.t_max);

    const double tol = 1e-13 * std::max({1.0, std::abs(x), std::abs(t)});
    bool converged = false;
    for (int it = 0; it < 80; ++it) {
        const double g = eval(t, &k0);
        const double gp = 1.0 + sign * k0.v / c;
        const double step = (g - x) / gp;
        double tn = t - step;
        if (!win.contains(tn))
            tn = std::clamp(tn, win.t_min, win.t_max);
        const bool done = std::abs(g - x) <= tol && std::abs(step) <= tol;
        t = tn;
        if (done) {
            converged = true;
            break;
        }
    }

    if (!converged) {
        // Bisection fallback: expand a bracket around the seed. g is
        // increasing, so the root lies where g - x changes sign.
        double lo = t, hi = t;
        double width = std::max(1.0, std::abs(x)) * 0.5;
        bool bracketed = false;
        for (int it = 0; it < 70; ++it) {
            lo = std::max(win.t_min, t - width);
            hi = std::min(win.t_max, t + width);
            const double glo = eval(lo, nullptr) - x;
            const double ghi = eval(hi, nullptr) - x;
            if (glo <= 0.0 && ghi >= 0.0) {
                bracketed = true;
                break;
            }
            if (lo == win.t_min && hi == win.t_max)
                break;
            width *= 2.0;
        }
        if (!bracketed)
            throw NoConvergence("bounce solver: no intersection with the worldline "
                                "(horizon reached or trajectory window exhausted)");
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi)
                break;
            if (eval(mid, nullptr) - x <= 0.0)
                lo = mid;
            else
                hi = mid;
        }
        t = 0.5 * (lo + hi);
        eval(t, &k0);
        // Polish with two Newton steps.
        for (int it = 0; it < 2; ++it) {
            const double g = eval(t, &k0);
            const double gp = 1.0 + sign * k0.v / c;
            t -= (g - x) / gp;
        }
        eval(t, &k0);
    }

    if (std::abs(k0.v) >= c)
        throw SuperluminalTrajectory("trajectory reaches |q'| >= c at a bounce");
    return {t, k0};
}

// Jet of the reflection map m(x) = 2 T(x) - x where T inverts
// g(t) = t -+ w(t)/c, via the inverse-function derivatives.
MapJet reflection_jet(const Solved& s, Chirality branch, double c, double x) {
    const double sign = (branch == Chirality::RightMoving) ? -1.0 : 1.0;
    const double g1 = 1.0 + sign * s.kin.v / c;
    const double g2 = sign * s.kin.a / c;
    const double g3 = sign * s.kin.j / c;
    const double T1 = 1.0 / g1;
    const double T2 = -g2 / (g1 * g1 * g1);
    const double T3 = (3.0 * g2 * g2 - g1 * g3) / (g1 * g1 * g1 * g1 * g1);
    MapJet m;
    m.value = 2.0 * s.t - x;
    m.d1 = 2.0 * T1 - 1.0;
    m.d2 = 2.0 * T2;
    m.d3 = 2.0 * T3;
    return m;
}

Chirality flip(Chirality ch) {
    return ch == Chirality::RightMoving ? Chirality::LeftMoving : Chirality::RightMoving;
}

}  // namespace

BounceEvent bounce_time(const Trajectory& traj, NullCoordinate incoming, double offset) {
    const Solved s =
        solve_null_intersection(traj, offset, incoming.chirality, incoming.value,
                                traj.light_speed());
    const MapJet m = reflection_jet(s, incoming.chirality, traj.light_speed(), incoming.value);
    return {s.t, offset + s.kin.q, m.d1};
}

NullCoordinate ray_map_single(const Trajectory& traj, NullCoordinate in, double offset) {
    const Solved s = solve_null_intersection(traj, offset, in.chirality, in.value,
                                             traj.light_speed());
    return {2.0 * s.t - in.value, flip(in.chirality)};
}

MapJet ray_map_single_jet(const Trajectory& traj, NullCoordinate in, double offset) {
    const Solved s = solve_null_intersection(traj, offset, in.chirality, in.value,
                                             traj.light_speed());
    return reflection_jet(s, in.chirality, traj.light_speed(), in.value);
}

double PathSet::amplitude_square_sum() const {
    double s = 0.0;
    for (const auto& p : contributions)
        s += p.amplitude * p.amplitude;
    return s;
}

double truncation_residual(double r1r2, int n_max) {
    if (r1r2 <= 0.0)
        return 0.0;
    const double rho2 = r1r2 * r1r2;
    return std::pow(rho2, n_max + 1) / (1.0 - rho2);
}

int default_n_max(const CavityConfig& cav, double target_residual) {
    const double rho = cav.mirror_left().r * cav.mirror_right().r;
    if (rho <= 0.0)
        return 0;
    const int cap = static_cast<int>(std::ceil(10.0 * cav.finesse()));
    int n = 0;
    while (truncation_residual(rho, n) >= target_residual && n < cap)
        ++n;
    return n;
}

PathSet trace_paths(const CavityConfig& cav, NullCoordinate u_out, int n_max) {
    return trace_paths(cav, u_out, n_max, SignConvention::OuterMinus);
}

PathSet trace_paths(const CavityConfig& cav, NullCoordinate u_out, int n_max,
                    SignConvention convention) {
    if (u_out.chirality != Chirality::RightMoving)
        throw PhysicsError("trace_paths expects a right-moving output coordinate");
    if (n_max < 0)
        throw PhysicsError("trace_paths requires n_max >= 0");

    const Trajectory& motion = cav.motion();
    const double c = cav.units().c;
    const double L = cav.rest_length();
    const double r1 = cav.mirror_left().r, t1 = cav.mirror_left().t;
    const double r2 = cav.mirror_right().r, t2 = cav.mirror_right().t;
    const double rho = r1 * r2;
    // Outer-face reflections carry -r; flipping the convention moves the
    // sign to the inner faces, so each internal bounce contributes an extra
    // minus while the direct reflection turns positive.
    const double outer_sign = (convention == SignConvention::OuterMinus) ? -1.0 : 1.0;
    const double inner_sign = -outer_sign;

    PathSet out;
    out.out_coordinate = u_out;
    out.truncation_residual = truncation_residual(rho, n_max);
    out.contributions.reserve(2 * static_cast<std::size_t>(n_max) + 3);

    // Direct reflection of the right-vacuum input on the outer face of the
    // right mirror.
    {
        const Solved s = solve_null_intersection(motion, L, Chirality::RightMoving, u_out.value, c);
        const MapJet m = reflection_jet(s, Chirality::RightMoving, c, u_out.value);
        if (r2 > 0.0)
            out.contributions.push_back({outer_sign * r2,
                                         NullCoordinate::left(m.value), m, 1,
                                         InputChannel::RightVacuum});
    }

    // Interior backward cascade.  Transmission leaves the null coordinate
    // untouched, so the chain alternates reflections at the left and right
    // mirrors; terminals branch off before each reflection.
    MapJet chain = MapJet::identity(u_out.value);
    double loop_amp = 1.0;  // (inner_sign^2 r1 r2)^n accumulated below
    for (int n = 0; n <= n_max; ++n) {
        if (t1 * t2 > 0.0)
            out.contributions.push_back({t1 * t2 * loop_amp,
                                         NullCoordinate::right(chain.value), chain, 2 * n,
                                         InputChannel::LeftVacuum});
        if (rho == 0.0 && r1 == 0.0)
            break;  // no internal reflections to follow

        // Reflection on the inner face of the left mirror.
        {
            const Solved s =
                solve_null_intersection(motion, 0.0, Chirality::RightMoving, chain.value, c);
            const MapJet m = reflection_jet(s, Chirality::RightMoving, c, chain.value);
            chain = m.after(chain);
        }
        if (t2 * t2 * r1 > 0.0)
            out.contributions.push_back({t2 * t2 * inner_sign * r1 * loop_amp,
                                         NullCoordinate::left(chain.value), chain, 2 * n + 1,
                                         InputChannel::RightVacuum});
        if (rho == 0.0)
            break;

        // Reflection on the inner face of the right mirror.
        {
            const Solved s =
                solve_null_intersection(motion, L, Chirality::LeftMoving, chain.value, c);
            const MapJet m = reflection_jet(s, Chirality::LeftMoving, c, chain.value);
            chain = m.after(chain);
        }
        loop_amp *= inner_sign * inner_sign * rho;
    }
    return out;
}

TransferResult mobius_resum(const CavityConfig& cav, const std::vector<double>& u_grid,
                            double omega) {
    if (omega <= 0.0)
        throw PhysicsError("mobius_resum requires omega > 0");
    const double c = cav.units().c;
    const double tau = cav.tau();
    const double t1t2 = cav.mirror_left().t * cav.mirror_right().t;
    const double rho = cav.mirror_left().r * cav.mirror_right().r;

    TransferResult result;
    result.eta = cav.eta();
    result.quasi_static_violation = result.eta > 1.0;
    result.values.reserve(u_grid.size());
    for (const double u : u_grid) {
        // Round-trip phase of the backward map: a positive displacement
        // shortens the retarded round trip, so the modulation enters with a
        // minus sign (fixed against the exact tracer).
        const double half_phase = omega * tau - 2.0 * omega * cav.motion().position(u) / c;
        const std::complex<double> z_half = std::polar(1.0, half_phase);
        const std::complex<double> z = z_half * z_half;
        result.values.push_back(t1t2 * z_half / (1.0 - rho * z));
    }
    return result;
}

std::complex<double> transfer_from_paths(const CavityConfig& cav, const PathSet& paths,
                                         double omega) {
    const double c = cav.units().c;
    const double u = paths.out_coordinate.value;
    const double half_phase =
        omega * cav.tau() - 2.0 * omega * cav.motion().position(u) / c;
    std::complex<double> sum{0.0, 0.0};
    for (const auto& p : paths.contributions) {
        if (p.input_channel != InputChannel::LeftVacuum)
            continue;
        sum += p.amplitude * std::polar(1.0, omega * (u - p.jet.value));
    }
    return std::polar(1.0, half_phase) * sum;
}

PathTable tabulate_paths(const CavityConfig& cav, const std::vector<double>& u_grid, int n_max) {
    PathTable table;
    table.u = u_grid;
    const std::size_t m = u_grid.size();
    if (m == 0)
        return table;

    // Path structure (count, amplitudes, channels) is identical at every
    // grid point; size the columns from the first one.
    const PathSet first = trace_paths(cav, NullCoordinate::right(u_grid.front()), n_max);
    table.truncation_residual = first.truncation_residual;
    table.paths.resize(first.contributions.size());
    for (std::size_t p = 0; p < table.paths.size(); ++p) {
        table.paths[p].amplitude = first.contributions[p].amplitude;
        table.paths[p].channel = first.contributions[p].input_channel;
        table.paths[p].F.resize(m);
        table.paths[p].F1.resize(m);
        table.paths[p].F[0] = first.contributions[p].jet.value;
        table.paths[p].F1[0] = first.contributions[p].jet.d1;
    }

    constexpr std::size_t kBlock = 256;
    const std::size_t n_blocks = (m + kBlock - 1) / kBlock;
    parallel_for_blocks(n_blocks, [&](std::size_t b) {
        const std::size_t begin = std::max<std::size_t>(b * kBlock, 1);
        const std::size_t end = std::min(m, (b + 1) * kBlock);
        for (std::size_t i = begin; i < end; ++i) {
            const PathSet ps = trace_paths(cav, NullCoordinate::right(u_grid[i]), n_max);
            for (std::size_t p = 0; p < table.paths.size(); ++p) {
                table.paths[p].F[i] = ps.contributions[p].jet.value;
                table.paths[p].F1[i] = ps.contributions[p].jet.d1;
            }
        }
    });
    return table;
}

PathTable tabulate_single_mirror(const Trajectory& traj, const std::vector<double>& u_grid,
                                 Side side) {
    PathTable table;
    table.u = u_grid;
    table.truncation_residual = 0.0;
    PathTable::Column col;
    // Perfect reflection of the probed half-space vacuum; the input channel
    // label records which side feeds the map.
    col.amplitude = -1.0;
    col.channel = (side == Side::Left) ? InputChannel::LeftVacuum : InputChannel::RightVacuum;
    col.F.resize(u_grid.size());
    col.F1.resize(u_grid.size());
    const Chirality branch =
        (side == Side::Left) ? Chirality::LeftMoving : Chirality::RightMoving;
    constexpr std::size_t kBlock = 1024;
    const std::size_t n_blocks = (u_grid.size() + kBlock - 1) / kBlock;
    parallel_for_blocks(n_blocks, [&](std::size_t b) {
        const std::size_t begin = b * kBlock;
        const std::size_t end = std::min(u_grid.size(), (b + 1) * kBlock);
        for (std::size_t i = begin; i < end; ++i) {
            const MapJet jet = ray_map_single_jet(traj, {u_grid[i], branch});
            col.F[i] = jet.value;
            col.F1[i] = jet.d1;
        }
    });
    table.paths.push_back(std::move(col));
    return table;
}

}  // namespace radiance
