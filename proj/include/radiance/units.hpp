#pragma once

#include <cmath>
#include <numbers>

#include "radiance/errors.hpp"

namespace radiance {

/// Unit system carried through every engine.  Two presets are used:
/// natural units (c = hbar = k_B = 1) for all desk-scale simulations and
/// SI for the experiment planner.
struct UnitSystem {
    double c = 1.0;      ///< speed of light
    double hbar = 1.0;   ///< reduced Planck constant
    double k_B = 1.0;    ///< Boltzmann constant

    static UnitSystem natural() { return {1.0, 1.0, 1.0}; }

    /// CODATA 2018 values.
    static UnitSystem si() { return {299792458.0, 1.054571817e-34, 1.380649e-23}; }

    void validate() const {
        if (!(c > 0.0) || !(hbar > 0.0) || !(k_B > 0.0))
            throw PhysicsError("UnitSystem: c, hbar and k_B must be strictly positive");
    }
};

/// Field temperature with its angular-frequency equivalent
/// theta = 2 pi k_B T / hbar.
struct FieldTemperature {
    double T_field = 0.0;  ///< kelvin (or natural temperature units)
    double theta = 0.0;    ///< angular frequency equivalent

    FieldTemperature() = default;
    FieldTemperature(double temperature, const UnitSystem& units)
        : T_field(temperature),
          theta(2.0 * std::numbers::pi * units.k_B * temperature / units.hbar) {
        if (temperature < 0.0)
            throw PhysicsError("FieldTemperature: temperature must be >= 0");
    }
};

inline double theta_from_temperature(double T_field, const UnitSystem& units) {
    return FieldTemperature(T_field, units).theta;
}

/// Closed time interval used for trajectory validation and sampled data.
struct TimeWindow {
    double t_min = -1.0e6;
    double t_max = 1.0e6;

    bool contains(double t) const { return t >= t_min && t <= t_max; }
    double length() const { return t_max - t_min; }
};

}  // namespace radiance
