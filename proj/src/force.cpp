#include "radiance/force.hpp"

#include <numbers>

namespace radiance {

Susceptibility susceptibility(double omega, double theta, const UnitSystem& units) {
    const double k = units.hbar / (6.0 * std::numbers::pi * units.c * units.c);
    Susceptibility chi;
    chi.omega = omega;
    chi.theta = theta;
    chi.value = std::complex<double>(0.0, k * (theta * theta * omega + omega * omega * omega));
    return chi;
}

std::vector<double> dissipative_force_time(const Trajectory& traj, double theta,
                                           const UnitSystem& units,
                                           const std::vector<double>& t_grid) {
    if (traj.kind() == TrajectoryKind::Sampled && traj.jerk_noise_estimate() > 0.10)
        throw DerivativeNoise("sampled trajectory too coarse: jerk stencil error above 10%");
    const double k = units.hbar / (6.0 * std::numbers::pi * units.c * units.c);
    std::vector<double> force;
    force.reserve(t_grid.size());
    for (const double t : t_grid) {
        const Kinematics kin = traj.kinematics(t);
        force.push_back(-k * theta * theta * kin.v + k * kin.j);
    }
    return force;
}

}  // namespace radiance
