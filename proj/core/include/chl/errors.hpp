#pragma once

#include <stdexcept>
#include <string>

namespace chl {

// common base so callers can catch everything from this library at once
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// bad or inconsistent inputs (config values, parameter triangles, grid limits)
struct ValidationFailure : Error { using Error::Error; };
// adaptive quadrature could not reach the requested error target
struct QuadratureFailure : Error { using Error::Error; };
// no standing wave exists for the requested spacing
struct NoSolution : Error { using Error::Error; };
// state left the admissible region (layer ordering / separation)
struct DomainError : Error { using Error::Error; };
// bracketed root finding failed (no sign change in the bracket)
struct NoRoot : Error { using Error::Error; };
// time stepper could not complete a step (step size underflow, step budget)
struct StepFailure : Error { using Error::Error; };
// termination event already active at t0
struct EventAtStart : Error { using Error::Error; };
// linear solve failed (singular factorization)
struct SolveFailure : Error { using Error::Error; };
// field has no sign changes to locate
struct NoLayers : Error { using Error::Error; };
// a reproduction/comparison check missed its tolerance band
struct ToleranceFailure : Error { using Error::Error; };

} // namespace chl
