#pragma once

#include "radiance/errors.hpp"

namespace radiance {

/// Lossless point scatterer with real reflection/transmission amplitudes,
/// r^2 + t^2 = 1.  r = 1 is rejected: a closed cavity has no outside
/// radiation to evaluate.
struct Mirror {
    double r = 0.0;
    double t = 1.0;

    Mirror() = default;
    Mirror(double reflection, double transmission);

    /// Build from the reflection amplitude alone (t = sqrt(1 - r^2)).
    static Mirror from_reflectivity(double r);
};

/// Fabry-Perot finesse F = pi sqrt(r1 r2) / (1 - r1 r2): the number of
/// round trips the field survives before leaving the cavity.
double finesse(const Mirror& m1, const Mirror& m2);

/// Effective phase velocity ratio eta = F v / c.  Values >= 1 are allowed
/// as input; engines document their own validity there.
double eta(double finesse_value, double peak_velocity, double c);

/// Balanced mirror pair (r1 = r2) realizing a given finesse.
Mirror mirror_for_finesse(double target_finesse);

}  // namespace radiance
