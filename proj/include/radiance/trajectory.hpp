#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "radiance/units.hpp"

namespace radiance {

/// Position and its first three time derivatives at one instant.
struct Kinematics {
    double q = 0.0;
    double v = 0.0;   ///< q'
    double a = 0.0;   ///< q''
    double j = 0.0;   ///< q'''
};

enum class TrajectoryKind { Static, UniformVelocity, UniformAcceleration, Sinusoid, Sampled };

/// Mirror worldline q(t), strictly subluminal, immutable after construction.
///
/// Analytic kinds expose exact derivatives up to third order.  Sampled
/// trajectories use cubic interpolation of tabulated values and central
/// finite-difference derivative tables of matching order (stencil error
/// O(h^2)).  The speed of light used for the subluminality check is stored
/// so downstream ray solvers share the same unit system.
class Trajectory {
  public:
    static Trajectory make_static(double q0, double c = 1.0);
    static Trajectory uniform_velocity(double q0, double v, double c = 1.0);
    /// Hyperbolic worldline with proper acceleration |alpha|; the sign of
    /// alpha selects the opening direction.  (t_center, x_vertex) place the
    /// turning point; the asymptotes are x = x_vertex +- c (t - t_center)
    /// shifted by c^2/alpha.
    static Trajectory uniform_acceleration(double alpha, double t_center = 0.0,
                                           double x_vertex = 0.0, double c = 1.0);
    static Trajectory sinusoid(double q0, double amplitude, double omega, double phase = 0.0,
                               double c = 1.0);
    /// Uniform grid samples q(t0 + i*dt); evaluation is restricted to the
    /// interior where the third-derivative stencil fits.
    static Trajectory sampled(double t0, double dt, std::vector<double> values, double c = 1.0);

    TrajectoryKind kind() const;
    double light_speed() const { return c_; }

    double position(double t) const;
    double velocity(double t) const;
    double acceleration(double t) const;
    double jerk(double t) const;
    /// All four at once (cheaper for the analytic kinds).
    Kinematics kinematics(double t) const;

    /// Largest |q'| the trajectory can reach (exact for analytic kinds,
    /// tabulated maximum for Sampled).
    double peak_velocity() const;

    /// Largest |q(t) - q(reference)| over the validity window; used for the
    /// cavity a << L constraint.  For Sinusoid this is the amplitude.
    double displacement_amplitude() const;

    /// Time-averaged position (rest point of the oscillation); the static
    /// reference configuration used by the spectral engines.
    double mean_position() const;

    /// Window on which evaluation is defined (unbounded for analytic kinds).
    TimeWindow window() const { return window_; }

    /// The same worldline seen through x -> -x.
    Trajectory negated() const;

    /// Estimated relative error of the finite-difference jerk for Sampled
    /// kinds (0 for analytic kinds): stencil value vs the doubled step.
    double jerk_noise_estimate() const;

    std::string describe() const;

  private:
    struct StaticParams {
        double q0;
    };
    struct UniformVelocityParams {
        double q0, v;
    };
    struct UniformAccelerationParams {
        double alpha, t_center, x_vertex;
    };
    struct SinusoidParams {
        double q0, a, omega, phase;
    };
    struct SampledParams {
        double t0, dt;
        std::vector<double> q;
        std::vector<double> d1, d2, d3;  // finite-difference tables
        double vmax = 0.0;
        double amp = 0.0;
        double jerk_noise = 0.0;
    };
    using Params = std::variant<StaticParams, UniformVelocityParams, UniformAccelerationParams,
                                SinusoidParams, SampledParams>;

    Trajectory(Params p, double c, TimeWindow window);

    Params params_;
    double c_ = 1.0;
    TimeWindow window_;
};

/// Peak speed |q'|; for Sinusoid this is exactly a*omega.
inline double peak_velocity(const Trajectory& traj) { return traj.peak_velocity(); }

}  // namespace radiance
