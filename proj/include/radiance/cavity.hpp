#pragma once

#include "radiance/mirror.hpp"
#include "radiance/trajectory.hpp"
#include "radiance/units.hpp"

namespace radiance {

/// Two partially transmitting mirrors at rest positions 0 and L, displaced
/// rigidly by a shared motion trajectory (the cavity oscillates as a whole,
/// its length never changes).
class CavityConfig {
  public:
    CavityConfig(Mirror left, Mirror right, double rest_length, Trajectory motion,
                 UnitSystem units = UnitSystem::natural());

    const Mirror& mirror_left() const { return left_; }
    const Mirror& mirror_right() const { return right_; }
    double rest_length() const { return length_; }
    const Trajectory& motion() const { return motion_; }
    const UnitSystem& units() const { return units_; }

    double tau() const { return tau_; }          ///< one-way light time L/c
    double finesse() const { return finesse_; }
    double eta() const { return eta_; }          ///< F * v_peak / c

    /// Worldline of the left (right) mirror.
    double left_position(double t) const { return motion_.position(t); }
    double right_position(double t) const { return length_ + motion_.position(t); }

    /// The cavity seen through x -> -x: mirrors swap and the motion is
    /// negated.  Left-side emission of *this equals right-side emission of
    /// the reflected cavity.
    CavityConfig reflected() const;

  private:
    Mirror left_, right_;
    double length_;
    Trajectory motion_;
    UnitSystem units_;
    double tau_, finesse_, eta_;
};

}  // namespace radiance
