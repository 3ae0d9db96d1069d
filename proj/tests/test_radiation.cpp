#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "radiance/mirror.hpp"
#include "radiance/radiation.hpp"

using namespace radiance;

namespace {

constexpr double kPi = std::numbers::pi;
const UnitSystem kNat = UnitSystem::natural();

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
}

CavityConfig desk_cavity(double target_finesse, double eta_target, double omega_factor) {
    const Mirror m = mirror_for_finesse(target_finesse);
    const double omega = omega_factor * kPi;
    const double v = eta_target / target_finesse;
    return CavityConfig(m, m, 1.0, Trajectory::sinusoid(0.0, v / omega, omega));
}

}  // namespace

TEST_CASE("inertial and uniformly accelerated mirrors radiate nothing") {
    // Left-side probe of the right-opening hyperbola: rays exist for v > -1.
    const auto grid = linspace(0.0, 20.0, 600);
    const auto uv =
        flux_single_mirror(Trajectory::uniform_velocity(0.0, 0.3), linspace(0.0, 20.0, 600), kNat);
    CHECK(uv.max_abs() < 1e-12);

    const auto ua = flux_single_mirror(Trajectory::uniform_acceleration(1.0), grid, kNat);
    // Flux scale of a sinusoid at the same peak velocity.
    const auto sn = flux_single_mirror(Trajectory::sinusoid(0.0, 0.3, 1.0),
                                       linspace(0.0, 6.0 * kPi, 600), kNat);
    CHECK(sn.max_abs() > 1e-4);
    CHECK(ua.max_abs() < 1e-10 * sn.max_abs());
    CHECK(uv.max_abs() < 1e-10 * sn.max_abs());
}

TEST_CASE("perturbative flux follows the third derivative of the motion") {
    const double a = 1e-3, omega = 1.0;  // a*omega = 1e-3
    const Trajectory sn = Trajectory::sinusoid(0.0, a, omega);
    const auto grid = linspace(0.0, 6.0 * kPi, 1024);
    const auto flux = flux_single_mirror(sn, grid, kNat);

    double err2 = 0.0, ref2 = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double ref = sn.jerk(grid[i]) / (12.0 * kPi);
        err2 += (flux.flux[i] - ref) * (flux.flux[i] - ref);
        ref2 += ref * ref;
    }
    CHECK(std::sqrt(err2 / ref2) < 0.005);
}

TEST_CASE("two-sided momentum flux reproduces the dissipative force") {
    const double a = 1e-3, omega = 1.0;
    const Trajectory sn = Trajectory::sinusoid(0.0, a, omega);
    const auto grid = linspace(0.0, 6.0 * kPi, 1024);
    const auto left = flux_single_mirror(sn, grid, kNat, Side::Left);
    const auto right = flux_single_mirror(sn, grid, kNat, Side::Right);

    double err2 = 0.0, ref2 = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double momentum = left.flux[i] - right.flux[i];
        const double ref = sn.jerk(grid[i]) / (6.0 * kPi);
        err2 += (momentum - ref) * (momentum - ref);
        ref2 += ref * ref;
    }
    CHECK(std::sqrt(err2 / ref2) < 0.005);
}

TEST_CASE("flux is invariant under Moebius pre-composition") {
    const Trajectory sn = Trajectory::sinusoid(0.0, 0.05, 2.0);
    for (const double u : {0.3, 1.9, 4.4}) {
        // Moebius map m(x) = (2x + 1)/(0.1 x + 3) evaluated as a jet at x = u,
        // then the ray map stacked on top: the Schwarzian must not change.
        const double den = 0.1 * u + 3.0;
        MapJet m;
        m.value = (2.0 * u + 1.0) / den;
        const double det = 2.0 * 3.0 - 1.0 * 0.1;  // ad - bc
        m.d1 = det / (den * den);
        m.d2 = -2.0 * 0.1 * det / (den * den * den);
        m.d3 = 6.0 * 0.1 * 0.1 * det / (den * den * den * den);

        const MapJet p = ray_map_single_jet(sn, NullCoordinate::left(m.value));
        const MapJet composed = p.after(m);
        const double s_ref = p.schwarzian() * m.d1 * m.d1;  // chain rule with S[m] = 0
        CHECK(composed.schwarzian() == doctest::Approx(s_ref).epsilon(1e-10));
    }
}

TEST_CASE("static cavity emits nothing") {
    const Mirror m = mirror_for_finesse(10.0);
    const CavityConfig cav(m, m, 1.0, Trajectory::make_static(0.0));
    const auto grid = linspace(0.0, 4.0, 128);
    const auto e = energy_density_cavity(cav, grid, 80, 2e-3);
    CHECK(e.max_abs() < 1e-12);
}

TEST_CASE("energy density is invariant under the mirror sign convention") {
    const CavityConfig cav = desk_cavity(10.0, 0.5, 3.0);
    const auto grid = linspace(0.0, 2.0, 96);
    const int n_max = default_n_max(cav);
    const auto a = energy_density_cavity(cav, grid, n_max, 2e-3, SignConvention::OuterMinus);
    const auto b = energy_density_cavity(cav, grid, n_max, 2e-3, SignConvention::InnerMinus);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(a.flux[i] == doctest::Approx(b.flux[i]).epsilon(1e-10));
}

TEST_CASE("emitted energy is non-negative on average") {
    const CavityConfig cav = desk_cavity(15.0, 0.5, 3.0);
    // Integer number of mechanical periods (period = 2/3).
    const auto grid = linspace(0.0, 4.0 / 3.0 * 3.0, 1024);
    const auto e = energy_density_cavity(cav, grid, default_n_max(cav), 2e-3);
    bool has_negative = false;
    for (const double f : e.flux)
        has_negative = has_negative || f < 0.0;
    CHECK(e.integral() >= 0.0);
    CHECK(has_negative);  // pointwise negativity is expected
}

TEST_CASE("pulses ride the mechanical period") {
    const CavityConfig cav = desk_cavity(20.0, 0.6, 3.0);
    const double period = 2.0 / 3.0;
    const auto grid = linspace(0.0, 4.0 * period, 2048);
    const auto em = cavity_emission(cav, grid, default_n_max(cav), 2e-3);
    const double step = grid[1] - grid[0];

    // Each output side carries one pulse per mechanical period.
    const PulseMetrics metrics = analyze_pulses(em.right);
    CHECK(std::abs(metrics.spacing - period) <= step * 1.5);
    CHECK(metrics.peak > 0.0);
    CHECK(metrics.fwhm < period);

    // The mirrored side is shifted by half a period, so the summed series
    // interleaves at twice the repetition rate.
    const PulseMetrics total = analyze_pulses(em.total);
    CHECK(std::abs(total.spacing - 0.5 * period) <= step * 1.5);
}

TEST_CASE("epsilon precondition is enforced") {
    const CavityConfig cav = desk_cavity(10.0, 0.5, 3.0);
    const auto grid = linspace(0.0, 1.0, 16);
    // Mechanical period / 100 is the ceiling here.
    CHECK_THROWS_AS(energy_density_cavity(cav, grid, 10, 0.1), PhysicsError);
    CHECK_THROWS_AS(energy_density_cavity(cav, grid, 10, 0.0), PhysicsError);
}

TEST_CASE("coarse sampled trajectories are rejected by the flux engine") {
    const double omega = 1.0;
    const double dt = 2.0 * kPi / omega / 6.0;
    std::vector<double> values;
    for (int i = 0; i < 64; ++i)
        values.push_back(0.01 * std::sin(omega * dt * static_cast<double>(i)));
    const Trajectory coarse = Trajectory::sampled(0.0, dt, values);
    CHECK_THROWS_AS(flux_single_mirror(coarse, linspace(20.0, 30.0, 32), kNat),
                    DerivativeNoise);
}
