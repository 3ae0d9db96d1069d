#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "radiance/cavity.hpp"
#include "radiance/mirror.hpp"
#include "radiance/raymap.hpp"

using namespace radiance;

namespace {

// Independent bisection oracle for the bounce equation, 1e-14 absolute.
double oracle_bounce_time(const std::function<double(double)>& q, Chirality branch, double x,
                          double c = 1.0) {
    const double sign = (branch == Chirality::RightMoving) ? -1.0 : 1.0;
    auto g = [&](double t) { return t + sign * q(t) / c - x; };
    double lo = x - 50.0, hi = x + 50.0;
    REQUIRE(g(lo) < 0.0);
    REQUIRE(g(hi) > 0.0);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) <= 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Fit y = (a x + b) / (c x + 1) through three points.
std::array<double, 3> fit_moebius(const std::array<double, 3>& x, const std::array<double, 3>& y) {
    double A[3][4];
    for (int i = 0; i < 3; ++i) {
        A[i][0] = x[i];
        A[i][1] = 1.0;
        A[i][2] = -x[i] * y[i];
        A[i][3] = y[i];
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int row = col + 1; row < 3; ++row)
            if (std::abs(A[row][col]) > std::abs(A[piv][col]))
                piv = row;
        for (int k = 0; k < 4; ++k)
            std::swap(A[col][k], A[piv][k]);
        for (int row = 0; row < 3; ++row) {
            if (row == col)
                continue;
            const double f = A[row][col] / A[col][col];
            for (int k = col; k < 4; ++k)
                A[row][k] -= f * A[col][k];
        }
    }
    return {A[0][3] / A[0][0], A[1][3] / A[1][1], A[2][3] / A[2][2]};
}

CavityConfig desk_cavity(double target_finesse, double eta_target, double omega_factor) {
    const Mirror m = mirror_for_finesse(target_finesse);
    const double L = 1.0;
    const double omega = omega_factor * std::numbers::pi / L;
    const double v = eta_target / target_finesse;  // c = 1
    return CavityConfig(m, m, L, Trajectory::sinusoid(0.0, v / omega, omega));
}

}  // namespace

TEST_CASE("bounce on a static mirror is a pure delay") {
    const Trajectory st = Trajectory::make_static(1.0);
    const BounceEvent b = bounce_time(st, NullCoordinate::right(0.3));
    CHECK(b.t_refl == doctest::Approx(1.3).epsilon(1e-14));
    CHECK(b.x_refl == doctest::Approx(1.0));
    CHECK(b.doppler == doctest::Approx(1.0));
}

TEST_CASE("bounce on a drifting mirror matches the closed form") {
    const double beta = 0.5;
    const Trajectory uv = Trajectory::uniform_velocity(0.0, beta);
    const double u = 2.0;
    const BounceEvent b = bounce_time(uv, NullCoordinate::right(u));
    CHECK(b.t_refl == doctest::Approx(u / (1.0 - beta)).epsilon(1e-13));
    CHECK(b.doppler == doctest::Approx((1.0 + beta) / (1.0 - beta)).epsilon(1e-13));

    // The full map is linear with slope (1+beta)/(1-beta).
    const NullCoordinate p1 = ray_map_single(uv, NullCoordinate::right(1.0));
    const NullCoordinate p2 = ray_map_single(uv, NullCoordinate::right(2.0));
    CHECK(p2.value - p1.value == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(p1.chirality == Chirality::LeftMoving);
}

TEST_CASE("bounce on an oscillating mirror agrees with the bisection oracle") {
    const double a = 0.01, omega = 1.0;
    const Trajectory sn = Trajectory::sinusoid(0.0, a, omega);
    for (const double u : {0.0, 0.37, -4.2, 11.9}) {
        const BounceEvent b = bounce_time(sn, NullCoordinate::right(u));
        const double oracle = oracle_bounce_time(
            [&](double t) { return a * std::sin(omega * t); }, Chirality::RightMoving, u);
        CHECK(b.t_refl == doctest::Approx(oracle).epsilon(1e-13));
    }
    // Left-moving branch too.
    const BounceEvent bl = bounce_time(sn, NullCoordinate::left(0.5));
    const double oracle_l = oracle_bounce_time(
        [&](double t) { return a * std::sin(omega * t); }, Chirality::LeftMoving, 0.5);
    CHECK(bl.t_refl == doctest::Approx(oracle_l).epsilon(1e-13));
}

TEST_CASE("uniformly accelerated ray map is a Moebius function") {
    const Trajectory ua = Trajectory::uniform_acceleration(1.0);
    // Probe from the left half-space: outgoing left-movers (horizon at v = -1).
    auto p = [&](double v) { return ray_map_single(ua, NullCoordinate::left(v)).value; };
    const std::array<double, 3> xs{0.5, 2.0, 6.0};
    const std::array<double, 3> ys{p(xs[0]), p(xs[1]), p(xs[2])};
    const auto coef = fit_moebius(xs, ys);
    const double x4 = 3.7;
    const double predicted = (coef[0] * x4 + coef[1]) / (coef[2] * x4 + 1.0);
    CHECK(p(x4) == doctest::Approx(predicted).epsilon(1e-10));
}

TEST_CASE("ray maps are strictly increasing (no ray crossing)") {
    const std::vector<Trajectory> trajs = {
        Trajectory::make_static(0.5),
        Trajectory::uniform_velocity(0.0, 0.4),
        Trajectory::sinusoid(0.0, 0.05, 2.0),
        Trajectory::uniform_acceleration(0.8),
    };
    for (const auto& traj : trajs) {
        double prev = -1e300;
        for (int i = 0; i < 1000; ++i) {
            const double v = 0.2 + static_cast<double>(i) * 0.01;
            const double mapped = ray_map_single(traj, NullCoordinate::left(v)).value;
            CHECK(mapped > prev);
            prev = mapped;
        }
    }
}

TEST_CASE("map derivative matches a finite difference") {
    const Trajectory sn = Trajectory::sinusoid(0.0, 0.03, 2.0);
    const double h = 1e-5;
    for (const double u : {0.0, 0.9, 3.3}) {
        const MapJet jet = ray_map_single_jet(sn, NullCoordinate::right(u));
        const double fd = (ray_map_single(sn, NullCoordinate::right(u + h)).value -
                           ray_map_single(sn, NullCoordinate::right(u - h)).value) /
                          (2.0 * h);
        CHECK(jet.d1 == doctest::Approx(fd).epsilon(1e-6));
        CHECK(jet.d1 > 0.0);
    }
}

TEST_CASE("static cavity path enumeration reproduces the geometric series") {
    const Mirror m1 = Mirror::from_reflectivity(0.8);
    const Mirror m2 = Mirror::from_reflectivity(0.7);
    const double L = 1.0;
    const CavityConfig cav(m1, m2, L, Trajectory::make_static(0.0));
    const int n_max = 2;
    const double u = 0.25;
    const PathSet ps = trace_paths(cav, NullCoordinate::right(u), n_max);

    const double rho = m1.r * m2.r;
    REQUIRE(ps.contributions.size() == 2 * (n_max + 1) + 1);

    // Direct reflection: amplitude -r2, mapped to u + 2 tau.
    const auto& direct = ps.contributions.front();
    CHECK(direct.amplitude == doctest::Approx(-m2.r));
    CHECK(direct.mapped_coordinate.value == doctest::Approx(u + 2.0 * L).epsilon(1e-13));
    CHECK(direct.input_channel == InputChannel::RightVacuum);
    CHECK(direct.n_bounces == 1);

    // Families: t1 t2 rho^n at u - 2 n tau and t2^2 r1 rho^n at u - 2 n tau.
    int seen_through = 0, seen_reexit = 0;
    for (const auto& pc : ps.contributions) {
        if (pc.input_channel == InputChannel::LeftVacuum) {
            const int n = pc.n_bounces / 2;
            CHECK(pc.amplitude ==
                  doctest::Approx(m1.t * m2.t * std::pow(rho, n)).epsilon(1e-13));
            CHECK(pc.mapped_coordinate.value ==
                  doctest::Approx(u - 2.0 * n * L).epsilon(1e-12));
            CHECK(pc.derivative() == doctest::Approx(1.0).epsilon(1e-13));
            ++seen_through;
        } else if (pc.n_bounces > 1 || pc.amplitude > 0.0) {
            const int n = (pc.n_bounces - 1) / 2;
            CHECK(pc.amplitude ==
                  doctest::Approx(m2.t * m2.t * m1.r * std::pow(rho, n)).epsilon(1e-13));
            CHECK(pc.mapped_coordinate.value ==
                  doctest::Approx(u - 2.0 * n * L).epsilon(1e-12));
            ++seen_reexit;
        }
    }
    CHECK(seen_through == n_max + 1);
    CHECK(seen_reexit == n_max + 1);

    // Unitarity budget: the exact geometric tail is t2^2 rho^(2(n+1)), which
    // the reported residual rho^(2(n+1))/(1 - rho^2) bounds from above.
    const double residual = truncation_residual(rho, n_max);
    const double exact_tail = m2.t * m2.t * std::pow(rho, 2 * (n_max + 1));
    CHECK(ps.amplitude_square_sum() == doctest::Approx(1.0 - exact_tail).epsilon(1e-12));
    CHECK(ps.amplitude_square_sum() >= 1.0 - residual);
    CHECK(ps.amplitude_square_sum() <= 1.0);
    CHECK(ps.truncation_residual == doctest::Approx(residual));
}

TEST_CASE("motionless cavity has unit path derivatives") {
    const CavityConfig cav(mirror_for_finesse(10.0), mirror_for_finesse(10.0), 2.0,
                           Trajectory::make_static(0.0));
    const PathSet ps = trace_paths(cav, NullCoordinate::right(1.0), 5);
    for (const auto& pc : ps.contributions)
        CHECK(pc.derivative() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("residual bound fixes the default round-trip count") {
    // Smallest n with 0.81^(n+1)/0.19 < 1e-8, solved independently.
    int n = 0;
    while (std::pow(0.81, n + 1) / (1.0 - 0.81) >= 1e-8)
        ++n;
    CHECK(n == 95);
    CHECK(n >= 87);
    CHECK(truncation_residual(0.9, n) < 1e-8);
    CHECK(truncation_residual(0.9, n - 1) >= 1e-8);

    const Mirror m = Mirror::from_reflectivity(0.9 / 0.95);  // r1 r2 ~ 0.9 split unevenly
    const Mirror m2 = Mirror::from_reflectivity(0.95);
    const CavityConfig cav(m, m2, 1.0, Trajectory::make_static(0.0));
    CHECK(default_n_max(cav, 1e-8) == 95);
}

TEST_CASE("path chain rule holds for a moving cavity") {
    const CavityConfig cav = desk_cavity(10.0, 0.5, 3.0);
    const int n_max = 12;
    const double h = 2e-6;
    const PathSet base = trace_paths(cav, NullCoordinate::right(0.4), n_max);
    const PathSet plus = trace_paths(cav, NullCoordinate::right(0.4 + h), n_max);
    const PathSet minus = trace_paths(cav, NullCoordinate::right(0.4 - h), n_max);
    for (std::size_t p = 0; p < base.contributions.size(); ++p) {
        const double fd =
            (plus.contributions[p].jet.value - minus.contributions[p].jet.value) / (2.0 * h);
        if (std::abs(fd) < 1e-6)
            continue;
        CHECK(base.contributions[p].derivative() == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("path maps stay monotone on a driven cavity") {
    const CavityConfig cav = desk_cavity(10.0, 0.9, 3.0);
    const int n_max = 15;
    double prev[64];
    for (int i = 0; i < 40; ++i)
        prev[i] = -1e300;
    for (int s = 0; s < 25; ++s) {
        const double u = static_cast<double>(s) * 0.11;
        const PathSet ps = trace_paths(cav, NullCoordinate::right(u), n_max);
        for (std::size_t p = 0; p < ps.contributions.size() && p < 40; ++p) {
            CHECK(ps.contributions[p].jet.value > prev[p]);
            prev[p] = ps.contributions[p].jet.value;
        }
    }
}

TEST_CASE("backward-iterated rays cluster onto periodic orbits") {
    // Circular dispersion of the mapped phases decreases monotonically with
    // the round-trip count over the first ~finesse trips.
    const double F = 10.0;
    const CavityConfig cav = desk_cavity(F, 0.9, 3.0);
    const double period = 2.0 / 3.0;  // mechanical period, tau = 1
    const int n_rays = 16;
    const int n_trips = static_cast<int>(F);

    std::vector<PathSet> sets;
    for (int i = 0; i < n_rays; ++i)
        sets.push_back(trace_paths(
            cav, NullCoordinate::right(static_cast<double>(i) * period / n_rays), n_trips));

    double prev_dispersion = 2.0;
    for (int n = 0; n <= n_trips; ++n) {
        std::complex<double> mean{0.0, 0.0};
        for (const auto& ps : sets) {
            // family with 2n bounces = n full round trips of the left input
            for (const auto& pc : ps.contributions) {
                if (pc.input_channel == InputChannel::LeftVacuum && pc.n_bounces == 2 * n) {
                    mean += std::polar(1.0, 2.0 * std::numbers::pi * pc.jet.value / period);
                    break;
                }
            }
        }
        mean /= static_cast<double>(n_rays);
        const double dispersion = 1.0 - std::abs(mean);
        if (n > 0)
            CHECK(dispersion <= prev_dispersion + 1e-12);
        prev_dispersion = dispersion;
    }
    CHECK(prev_dispersion < 0.3);  // clustered well below the uniform spread (~1)
}

TEST_CASE("homographic resummation limits") {
    const Mirror m = mirror_for_finesse(10.0);
    const CavityConfig cav(m, m, 1.0, Trajectory::make_static(0.0));
    const double rho = m.r * m.r;
    const double t1t2 = m.t * m.t;

    // Resonance: |H| = t1 t2 / (1 - r1 r2) (unity for balanced mirrors).
    const double omega_res = std::numbers::pi;  // pi / tau
    const auto res = mobius_resum(cav, {0.0}, omega_res);
    CHECK(std::abs(res.values[0]) == doctest::Approx(t1t2 / (1.0 - rho)).epsilon(1e-12));
    CHECK_FALSE(res.quasi_static_violation);

    // No reflection: bare delay phase of magnitude t1 t2.
    const Mirror open(0.0, 1.0);
    const CavityConfig bare(open, open, 1.0, Trajectory::make_static(0.0));
    const auto h = mobius_resum(bare, {0.3}, 2.7);
    CHECK(std::abs(h.values[0]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("path sum agrees with the homographic closed form (static)") {
    const Mirror m = mirror_for_finesse(10.0);
    const CavityConfig cav(m, m, 1.0, Trajectory::make_static(0.0));
    const int n_max = 90;  // field-amplitude tail rho^(n+1)/(1-rho) ~ 1e-11
    const PathSet ps = trace_paths(cav, NullCoordinate::right(0.0), n_max);
    for (double omega_tau = 0.4; omega_tau < 12.0; omega_tau += 0.7) {
        const std::complex<double> via_paths = transfer_from_paths(cav, ps, omega_tau);
        const std::complex<double> closed = mobius_resum(cav, {0.0}, omega_tau).values[0];
        CHECK(std::abs(via_paths - closed) < 1e-8);
    }
}

TEST_CASE("sign convention flip leaves quadratic path sums unchanged") {
    const CavityConfig cav = desk_cavity(10.0, 0.3, 3.0);
    const PathSet a = trace_paths(cav, NullCoordinate::right(0.7), 8, SignConvention::OuterMinus);
    const PathSet b = trace_paths(cav, NullCoordinate::right(0.7), 8, SignConvention::InnerMinus);
    REQUIRE(a.contributions.size() == b.contributions.size());
    CHECK(a.amplitude_square_sum() == doctest::Approx(b.amplitude_square_sum()).epsilon(1e-14));
    for (std::size_t p = 0; p < a.contributions.size(); ++p) {
        CHECK(std::abs(a.contributions[p].amplitude) ==
              doctest::Approx(std::abs(b.contributions[p].amplitude)).epsilon(1e-14));
        CHECK(a.contributions[p].jet.value ==
              doctest::Approx(b.contributions[p].jet.value).epsilon(1e-14));
    }
}
