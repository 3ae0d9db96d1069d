#pragma once

#include <string>
#include <vector>

#include "radiance/cavity.hpp"
#include "radiance/raymap.hpp"
#include "radiance/trajectory.hpp"

namespace radiance {

/// Emitted energy density sampled over an output null-coordinate grid.
struct FluxSeries {
    std::vector<double> u_grid;
    std::vector<double> flux;
    std::string engine;
    std::string descriptor;
    double epsilon = 0.0;  ///< point-split validation epsilon (0 if unused)

    /// Trapezoid integral over the full grid.
    double integral() const;
    double max_abs() const;
};

/// Radiated flux of a single perfect mirror on one side,
///   flux(u) = -(hbar/24 pi) { p'''/p' - 3/2 (p''/p')^2 },
/// with p the backward ray map of the probed side.  The normalization makes
/// the perturbative two-sided momentum flux equal (hbar / 6 pi c^2) q''',
/// anchoring radiation to the dissipative force.  Vanishes identically for
/// uniform velocity and uniform acceleration (Moebius maps).
FluxSeries flux_single_mirror(const Trajectory& traj, const std::vector<double>& u_grid,
                              const UnitSystem& units = UnitSystem::natural(),
                              Side side = Side::Left);

/// Normal-ordered output flux of the oscillating cavity by symmetric point
/// splitting over the multiple-scattering double sum.  Diagonal terms are
/// the per-path Schwarzians (analytic, no divergent subtraction); the
/// off-diagonal interference terms are finite at zero splitting and are
/// evaluated there.  Cross-channel terms vanish because the two input vacua
/// are uncorrelated.  eps_split only drives the Richardson validation of the
/// diagonal against its numeric point-split limit (SplitInstability when the
/// eps vs eps/2 extrapolation disagrees with the analytic value).
FluxSeries energy_density_cavity(const CavityConfig& cav, const std::vector<double>& u_grid,
                                 int n_max, double eps_split,
                                 SignConvention convention = SignConvention::OuterMinus);

/// Right-side, left-side and summed emission of the cavity on one grid.
struct CavityEmission {
    FluxSeries right;
    FluxSeries left;
    FluxSeries total;
};

CavityEmission cavity_emission(const CavityConfig& cav, const std::vector<double>& u_grid,
                               int n_max, double eps_split);

/// Pulse-train shape diagnostics.
struct PulseMetrics {
    double peak = 0.0;
    double fwhm = 0.0;     ///< width of the tallest pulse at half its height
    double spacing = 0.0;  ///< lag of the first autocorrelation peak
};

PulseMetrics analyze_pulses(const FluxSeries& series);

}  // namespace radiance
