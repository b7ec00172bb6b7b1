#pragma once

#include <stdexcept>
#include <string>

namespace specnorm {

/// Root of the library's error hierarchy.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (e.g. Gamma at x <= 0).
struct DomainError : Error {
    using Error::Error;
};

/// Angle (or complex point) outside the analyticity sector of a weight,
/// or a rotated integral that would diverge.
struct SectorViolation : Error {
    using Error::Error;
};

/// Requested an operation that is only defined for the other parity
/// (even-degree-only bounds and the like).
struct UnsupportedParity : Error {
    using Error::Error;
};

/// Internal signal: a computation at some working precision lost too much
/// accuracy to continue (Cholesky pivot loss, stalled series).  The
/// certification driver catches this and escalates precision.
struct PrecisionLoss : Error {
    using Error::Error;
};

/// Escalation hit the policy ceiling without reaching the requested
/// agreement.  Carries how many digits were achieved and (when available) a
/// rendering of the best estimate reached.
struct PrecisionBudgetError : Error {
    long achieved_digits;
    long attempted_digits;
    std::string best_estimate;
    PrecisionBudgetError(const std::string& what, long achieved, long attempted,
                         std::string best = {})
        : Error(what), achieved_digits(achieved), attempted_digits(attempted),
          best_estimate(std::move(best)) {}
};

/// A computed value contradicts a proved bound.  This never indicates bad
/// input; it means the implementation is wrong somewhere.
struct TheoremViolation : Error {
    using Error::Error;
};

}  // namespace specnorm
