#pragma once

#include <complex>
#include <vector>

#include "radiance/trajectory.hpp"
#include "radiance/units.hpp"

namespace radiance {

/// Motional force response of a single mirror in a thermal field.
///
/// Frequency domain uses the analysis transform x[w] = integral dt x(t) e^{+i w t},
/// the convention under which the time-domain drag -q' maps onto +i w q[w].
/// All susceptibility values are purely imaginary for real frequencies.
struct Susceptibility {
    double omega = 0.0;
    double theta = 0.0;                    ///< field temperature in frequency units
    std::complex<double> value{0.0, 0.0};  ///< force per unit displacement
};

/// chi[w] = i (hbar / 6 pi c^2) (theta^2 w + w^3): the thermal drag term
/// plus the vacuum term that survives at zero temperature.
Susceptibility susceptibility(double omega, double theta, const UnitSystem& units);

/// Time-domain dissipative force
///   F(t) = -(hbar theta^2 / 6 pi c^2) q'(t) + (hbar / 6 pi c^2) q'''(t).
/// Throws DerivativeNoise when a sampled trajectory is too coarse for a
/// trustworthy third derivative.
std::vector<double> dissipative_force_time(const Trajectory& traj, double theta,
                                           const UnitSystem& units,
                                           const std::vector<double>& t_grid);

}  // namespace radiance
