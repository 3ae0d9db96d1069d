#pragma once

#include <string>
#include <vector>

#include "radiance/units.hpp"

namespace radiance {

/// Order-of-magnitude feasibility numbers for a motion-induced radiation
/// experiment: a high-finesse cavity driven at a mechanical frequency tuned
/// to an odd multiple of its fundamental resonance.
struct ExperimentPlan {
    double finesse = 0.0;
    double mech_omega = 0.0;     ///< rad/s
    double optical_omega = 0.0;  ///< rad/s, line used for the thermal check
    double peak_velocity = 0.0;  ///< m/s
    double T_field = 0.0;        ///< K

    double eta = 0.0;
    double amplitude = 0.0;           ///< v / Omega
    double acceleration = 0.0;        ///< Omega * v
    double photon_rate = 0.0;         ///< 1/s at tuned resonance, per second of drive
    double thermal_occupation = 0.0;  ///< mean photons per mode at optical_omega
    bool vacuum_ok = false;           ///< thermal_occupation < 1

    std::vector<std::string> warnings;
};

/// Mean thermal photons per mode, n = 1 / (exp(hbar w / k_B T) - 1);
/// zero temperature gives exactly zero.
double thermal_occupation(double omega, double T_field, const UnitSystem& units);

/// Fills the derived quantities.  The photon rate is the tuned-resonance
/// rate F Omega (v/c)^2 / (3 pi) normalized to one second of measurement;
/// callers that have not asserted Omega = odd multiple of pi/tau get a
/// ResonanceNotConfigured warning attached.  Velocities above a typical
/// material sound speed (3000 m/s) draw an advisory warning as well.
ExperimentPlan plan(double finesse, double mech_omega, double peak_velocity, double T_field,
                    const UnitSystem& units = UnitSystem::si(), double optical_omega = 0.0,
                    bool resonance_asserted = false);

}  // namespace radiance
