#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "radiance/cavity.hpp"
#include "radiance/trajectory.hpp"

namespace radiance {

enum class Chirality : std::uint8_t { RightMoving, LeftMoving };

/// Light-cone coordinate: u = t - x/c for right-movers, v = t + x/c for
/// left-movers.  The chirality is fixed at creation.
struct NullCoordinate {
    double value = 0.0;
    Chirality chirality = Chirality::RightMoving;

    static NullCoordinate right(double u) { return {u, Chirality::RightMoving}; }
    static NullCoordinate left(double v) { return {v, Chirality::LeftMoving}; }
};

/// Value and first three derivatives of a composed null-ray map F(x).
struct MapJet {
    double value = 0.0;
    double d1 = 1.0;
    double d2 = 0.0;
    double d3 = 0.0;

    static MapJet identity(double x) { return {x, 1.0, 0.0, 0.0}; }

    /// Jet of outer(inner(x)): `outer` must be evaluated at inner.value.
    MapJet after(const MapJet& inner) const {
        MapJet out;
        out.value = value;
        out.d1 = d1 * inner.d1;
        out.d2 = d2 * inner.d1 * inner.d1 + d1 * inner.d2;
        out.d3 = d3 * inner.d1 * inner.d1 * inner.d1 + 3.0 * d2 * inner.d1 * inner.d2 +
                 d1 * inner.d3;
        return out;
    }

    /// Schwarzian derivative d3/d1 - 3/2 (d2/d1)^2; zero for Moebius maps.
    double schwarzian() const {
        const double r2 = d2 / d1;
        return d3 / d1 - 1.5 * r2 * r2;
    }
};

/// One reflection on a moving mirror worldline.
struct BounceEvent {
    double t_refl = 0.0;
    double x_refl = 0.0;
    /// Derivative of the reflected null coordinate with respect to the
    /// incident one: (c + q')/(c - q') when the incident ray is
    /// right-moving, the reciprocal when it travels right-to-left.
    double doppler = 1.0;
};

/// Reflection event for a ray with coordinate `incoming` on the worldline
/// offset + traj(t).  Newton iteration seeded by the static solution with a
/// bisection fallback; |q'| < c guarantees a unique root.
BounceEvent bounce_time(const Trajectory& traj, NullCoordinate incoming, double offset = 0.0);

/// Single perfect-mirror ray map p(x) = 2 t_refl - x: a right-moving input
/// coordinate maps to the reflected left-moving one and vice versa.
NullCoordinate ray_map_single(const Trajectory& traj, NullCoordinate in, double offset = 0.0);

/// Same map with its derivative jet (feeds the Schwarzian flux).
MapJet ray_map_single_jet(const Trajectory& traj, NullCoordinate in, double offset = 0.0);

enum class InputChannel : std::uint8_t { LeftVacuum, RightVacuum };

/// One multiple-scattering path contributing to the outgoing field.
struct PathContribution {
    double amplitude = 0.0;        ///< product of r/t factors (signed)
    NullCoordinate mapped_coordinate;  ///< input-side coordinate F_p(u)
    MapJet jet;                    ///< F_p and derivatives at the output coordinate
    int n_bounces = 0;             ///< reflection events along the path
    InputChannel input_channel = InputChannel::LeftVacuum;

    double derivative() const { return jet.d1; }
};

/// All paths feeding one output coordinate, ordered deterministically:
/// [direct, through(0..n_max), re-exit(0..n_max)].
struct PathSet {
    NullCoordinate out_coordinate;
    std::vector<PathContribution> contributions;
    double truncation_residual = 0.0;  ///< dropped amplitude-squared bound
    bool truncated_at_cap = false;     ///< n_max was clipped by the 10*F cap

    double amplitude_square_sum() const;
};

/// Truncation residual (r1 r2)^(2(n+1)) / (1 - (r1 r2)^2) after n round trips.
double truncation_residual(double r1r2, int n_max);

/// Smallest round-trip count with residual below `target`, capped at 10*F.
int default_n_max(const CavityConfig& cav, double target_residual = 1e-10);

/// Backward ray tracing from a right-moving output coordinate: enumerates
/// every scattering path with at most n_max internal round trips.
/// Amplitudes follow the real orthogonal mirror convention with -r on the
/// outer face, so the direct reflection off the right mirror carries -r2,
/// transmission chains carry t1 t2 (r1 r2)^n and internal re-exits
/// t2^2 r1 (r1 r2)^n.
PathSet trace_paths(const CavityConfig& cav, NullCoordinate u_out, int n_max);

/// Mirror sign convention probe (flips which face carries the minus sign);
/// every measured quantity must be invariant under it.
enum class SignConvention : std::uint8_t { OuterMinus, InnerMinus };
PathSet trace_paths(const CavityConfig& cav, NullCoordinate u_out, int n_max,
                    SignConvention convention);

/// Quasi-static resummed transfer function
///   H(u) = t1 t2 z^(1/2) / (1 - r1 r2 z),  z = exp(i phi(u)),
///   phi(u) = 2 omega tau - (4 omega / c) q_motion(u),
/// a homographic function of the slowly varying round-trip phase
/// exponential; the modulation sign follows the exact backward tracer.
/// |H| <= t1 t2 / (1 - r1 r2).
struct TransferResult {
    std::vector<std::complex<double>> values;
    bool quasi_static_violation = false;  ///< eta above the validity threshold
    double eta = 0.0;
};

TransferResult mobius_resum(const CavityConfig& cav, const std::vector<double>& u_grid,
                            double omega);

/// Transmission transfer assembled from exact traced paths (left-vacuum
/// channel), phase-referenced like mobius_resum; the cross-engine oracle.
std::complex<double> transfer_from_paths(const CavityConfig& cav, const PathSet& paths,
                                         double omega);

/// Per-path sampled maps on a shared output grid, path-major layout
/// (column p holds F_p and F_p' over the whole grid).  Feeds the spectral
/// transforms.
struct PathTable {
    std::vector<double> u;  ///< output-side grid
    struct Column {
        double amplitude = 0.0;
        InputChannel channel = InputChannel::LeftVacuum;
        std::vector<double> F;
        std::vector<double> F1;
    };
    std::vector<Column> paths;
    double truncation_residual = 0.0;
};

PathTable tabulate_paths(const CavityConfig& cav, const std::vector<double>& u_grid, int n_max);

enum class Side : std::uint8_t { Left, Right };

/// Single-mirror table: one path, unit-magnitude amplitude.  `side` selects
/// which half-space is probed (Left = outgoing left-movers).
PathTable tabulate_single_mirror(const Trajectory& traj, const std::vector<double>& u_grid,
                                 Side side);

}  // namespace radiance
