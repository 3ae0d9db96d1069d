#include "radiance/planner.hpp"

#include <cmath>
#include <numbers>

#include "radiance/mirror.hpp"

namespace radiance {

double thermal_occupation(double omega, double T_field, const UnitSystem& units) {
    if (omega <= 0.0)
        throw PhysicsError("thermal occupation requires omega > 0");
    if (T_field < 0.0)
        throw PhysicsError("temperature must be >= 0");
    if (T_field == 0.0)
        return 0.0;
    const double x = units.hbar * omega / (units.k_B * T_field);
    return 1.0 / std::expm1(x);
}

ExperimentPlan plan(double finesse, double mech_omega, double peak_velocity, double T_field,
                    const UnitSystem& units, double optical_omega, bool resonance_asserted) {
    if (finesse <= 0.0 || mech_omega <= 0.0 || peak_velocity < 0.0 || T_field < 0.0)
        throw PhysicsError("plan requires positive finesse and frequency, v >= 0, T >= 0");

    ExperimentPlan p;
    p.finesse = finesse;
    p.mech_omega = mech_omega;
    p.optical_omega = optical_omega > 0.0 ? optical_omega : mech_omega;
    p.peak_velocity = peak_velocity;
    p.T_field = T_field;

    p.eta = eta(finesse, peak_velocity, units.c);
    p.amplitude = peak_velocity / mech_omega;
    p.acceleration = mech_omega * peak_velocity;
    const double beta = peak_velocity / units.c;
    p.photon_rate = finesse * mech_omega * beta * beta / (3.0 * std::numbers::pi);
    p.thermal_occupation = thermal_occupation(p.optical_omega, T_field, units);
    p.vacuum_ok = p.thermal_occupation < 1.0;

    if (!resonance_asserted)
        p.warnings.push_back("ResonanceNotConfigured: the photon rate assumes the mechanical "
                             "frequency sits on an odd multiple of the cavity resonance pi/tau");
    if (peak_velocity > 3000.0 && units.c > 1.0)
        p.warnings.push_back("peak velocity exceeds typical material sound speeds (~3 km/s)");
    if (!p.vacuum_ok)
        p.warnings.push_back("thermal occupation >= 1: input fields are not vacuum-dominated");
    return p;
}

}  // namespace radiance
