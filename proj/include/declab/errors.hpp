// errors.hpp — Exception types shared across the library

#pragma once

#include <stdexcept>
#include <string>

namespace declab {

// Base class so callers can catch everything declab throws with one handler.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input: bad dimensions, non-normalized states, unknown names, bad config keys.
struct ValidationError : Error {
    using Error::Error;
};

// A requested Hilbert space exceeds the configured dimension cap.
struct CapacityError : Error {
    using Error::Error;
};

// A Hamiltonian definition is inconsistent (e.g. the assembled matrix is not Hermitian).
struct ModelDefinitionError : Error {
    using Error::Error;
};

// An integrator or quadrature failed to reach the required tolerance.
// Carries the residual that was actually achieved.
struct AccuracyError : Error {
    double achieved_residual;
    AccuracyError(const std::string& what, double residual)
        : Error(what), achieved_residual(residual) {}
};

// A numerical routine produced an unusable result (failed eigensolve, broken unitarity).
struct NumericalError : Error {
    using Error::Error;
};

// Not enough usable data points for a fit.
struct InsufficientDataError : Error {
    using Error::Error;
};

} // namespace declab
