#include "radiance/mirror.hpp"

#include <cmath>
#include <numbers>

namespace radiance {

namespace {
constexpr double kUnitarityTolerance = 1e-12;
}

Mirror::Mirror(double reflection, double transmission) : r(reflection), t(transmission) {
    if (r >= 1.0)
        throw PerfectMirrorError("mirror with r = 1 closes the cavity");
    if (r < 0.0 || t <= 0.0 || t > 1.0)
        throw PhysicsError("mirror amplitudes must satisfy 0 <= r < 1, 0 < t <= 1");
    if (std::abs(r * r + t * t - 1.0) > kUnitarityTolerance)
        throw PhysicsError("mirror violates lossless unitarity r^2 + t^2 = 1");
}

Mirror Mirror::from_reflectivity(double r) {
    if (r >= 1.0)
        throw PerfectMirrorError("mirror with r = 1 closes the cavity");
    if (r < 0.0)
        throw PhysicsError("reflection amplitude must be >= 0");
    return Mirror(r, std::sqrt(1.0 - r * r));
}

double finesse(const Mirror& m1, const Mirror& m2) {
    const double rho = m1.r * m2.r;
    if (rho >= 1.0)
        throw PerfectMirrorError("finesse undefined for r1 r2 >= 1");
    return std::numbers::pi * std::sqrt(rho) / (1.0 - rho);
}

double eta(double finesse_value, double peak_velocity, double c) {
    if (peak_velocity < 0.0)
        throw PhysicsError("eta requires v >= 0");
    return finesse_value * peak_velocity / c;
}

Mirror mirror_for_finesse(double target_finesse) {
    if (target_finesse < 0.0)
        throw PhysicsError("finesse must be >= 0");
    if (target_finesse == 0.0)
        return Mirror(0.0, 1.0);
    // pi s = F (1 - s^2) with s = sqrt(r1 r2) = r for balanced mirrors.
    const double pi = std::numbers::pi;
    const double s =
        (-pi + std::sqrt(pi * pi + 4.0 * target_finesse * target_finesse)) /
        (2.0 * target_finesse);
    return Mirror::from_reflectivity(s);
}

}  // namespace radiance
