#pragma once

#include <stdexcept>
#include <string>

namespace radiance {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid input that violates a physical invariant (superluminal motion,
/// bad mirror amplitudes, geometry constraints).
struct PhysicsError : Error {
    using Error::Error;
};

/// A numerical procedure failed to reach its accuracy target.
struct NumericsError : Error {
    using Error::Error;
};

/// Malformed scenario file or command-line input.
struct SchemaError : Error {
    using Error::Error;
};

struct SuperluminalTrajectory : PhysicsError {
    using PhysicsError::PhysicsError;
};

/// Closed cavity requested (r = 1): the emitted radiation outside the
/// cavity is not defined for a perfectly reflecting mirror.
struct PerfectMirrorError : PhysicsError {
    using PhysicsError::PhysicsError;
};

struct NoConvergence : NumericsError {
    using NumericsError::NumericsError;
};

struct NonConverged : NumericsError {
    using NumericsError::NumericsError;
};

struct AliasingError : NumericsError {
    using NumericsError::NumericsError;
};

struct DerivativeNoise : NumericsError {
    using NumericsError::NumericsError;
};

struct SplitInstability : NumericsError {
    using NumericsError::NumericsError;
};

}  // namespace radiance
