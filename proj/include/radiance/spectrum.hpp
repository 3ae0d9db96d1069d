#pragma once

#include <complex>
#include <vector>

#include "radiance/cavity.hpp"
#include "radiance/raymap.hpp"
#include "radiance/units.hpp"

namespace radiance {

enum class WindowShape { Rectangular, Tapered };

/// Finite measurement window: an integer number of mechanical periods,
/// sampled on a power-of-two grid.  Tapered (Tukey) edges suppress the
/// turn-on transient; the rectangular shape is kept for calibration runs
/// where the drive is treated as always-on.
struct MeasurementWindow {
    double T = 0.0;             ///< duration
    std::size_t samples = 0;    ///< power of two
    WindowShape shape = WindowShape::Tapered;
    double taper = 0.1;         ///< edge ramp fraction of T (Tapered only)

    static MeasurementWindow periods(int n_periods, double mech_period, std::size_t samples,
                                     WindowShape shape = WindowShape::Tapered,
                                     double taper = 0.1);

    double dt() const { return T / static_cast<double>(samples); }
    double domega() const;       ///< frequency resolution 2 pi / T
    double nyquist() const;      ///< pi / dt

    /// Sample grid u_i = i dt, i = 0 .. samples-1.
    std::vector<double> grid() const;
    /// Window weights w(u_i).
    std::vector<double> weights() const;
    /// sum w^2 dt / T: the power fraction the taper removes.
    double power_fraction() const;

    /// Nyquist margin rule: pi samples / T >= 8 * omega_requested.
    void validate(double omega_requested) const;
};

/// Mode-mixing amplitudes of the output field against the two input vacua,
///   beta_ch(w, w') = sum_p A_p (1/2pi) sqrt(w'/w) int du w(u)
///                    e^{-i w u} e^{-i w' F_p(u)} F_p'(u),
/// evaluated by direct quadrature on the window grid.  alpha uses the
/// conjugate kernel e^{+i w' F_p(u)}.  On the 2 pi / T frequency comb the
/// rectangular window behaves periodically, so a static map yields
/// alpha diagonal and beta = 0 to rounding.
struct BetaPair {
    std::complex<double> left{0.0, 0.0};
    std::complex<double> right{0.0, 0.0};
};

BetaPair bogoliubov_beta(const PathTable& table, double omega, double omega_prime,
                         const MeasurementWindow& win);
BetaPair bogoliubov_alpha(const PathTable& table, double omega, double omega_prime,
                          const MeasurementWindow& win);

struct CombLine {
    int k = 0;
    double omega = 0.0;    ///< exactly k pi / tau
    double photons = 0.0;  ///< density integrated over +-pi/T around the line
};

struct SpectrumResult {
    std::vector<double> omega_grid;
    std::vector<double> density;      ///< dN/domega for the window duration
    std::vector<CombLine> comb_lines; ///< cavity sources only
    double total = 0.0;               ///< trapezoid integral of density
    double tau = 0.0;                 ///< cavity one-way light time (0 = single mirror)
    double truncation_residual = 0.0;
};

struct SpectrumOptions {
    double omega_max = 0.0;        ///< density cutoff (0 = engine default)
    double omega_pair_max = 0.0;   ///< partner-frequency cutoff (0 = omega_max)
    int n_max = -1;                ///< round trips (-1 = residual-based default)
    double residual_target = 1e-8; ///< drives the default n_max policy
};

/// Photon-number spectrum of both output sides of the cavity.  Counted
/// relative to the same cavity at rest, so window gating creates no
/// spurious infrared pairs; on the window comb with a rectangular shape the
/// rest response vanishes identically and the subtraction is a no-op.
SpectrumResult photon_spectrum(const CavityConfig& cav, const MeasurementWindow& win,
                               const SpectrumOptions& options = {});

/// Photon-number spectrum of a single perfect mirror (both sides), counted
/// relative to the mirror at rest.
SpectrumResult photon_spectrum(const Trajectory& traj, const MeasurementWindow& win,
                               const SpectrumOptions& options = {});

/// Total photon number with a grid-doubling convergence check: throws
/// NonConverged when doubling the sample count moves N by 1% or more.
double total_photon_number(const CavityConfig& cav, const MeasurementWindow& win,
                           const SpectrumOptions& options = {});
double total_photon_number(const Trajectory& traj, const MeasurementWindow& win,
                           const SpectrumOptions& options = {});

}  // namespace radiance
