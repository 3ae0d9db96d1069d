#include "radiance/cavity.hpp"

namespace radiance {

CavityConfig::CavityConfig(Mirror left, Mirror right, double rest_length, Trajectory motion,
                           UnitSystem units)
    : left_(left),
      right_(right),
      length_(rest_length),
      motion_(std::move(motion)),
      units_(units) {
    units_.validate();
    if (!(length_ > 0.0))
        throw PhysicsError("cavity rest length must be > 0");
    if (motion_.light_speed() != units_.c)
        throw PhysicsError("cavity motion was validated against a different speed of light");
    const double amp = motion_.displacement_amplitude();
    if (motion_.kind() == TrajectoryKind::UniformVelocity ||
        motion_.kind() == TrajectoryKind::UniformAcceleration)
        throw PhysicsError("cavity motion must stay bounded (global drift is not modeled)");
    if (amp >= length_ / 10.0)
        throw PhysicsError("cavity motion amplitude must satisfy a < L/10");
    tau_ = length_ / units_.c;
    finesse_ = radiance::finesse(left_, right_);
    eta_ = radiance::eta(finesse_, motion_.peak_velocity(), units_.c);
}

CavityConfig CavityConfig::reflected() const {
    return CavityConfig(right_, left_, length_, motion_.negated(), units_);
}

}  // namespace radiance
