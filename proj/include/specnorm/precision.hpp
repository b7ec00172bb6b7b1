#pragma once

#include "specnorm/errors.hpp"
#include "specnorm/hpreal.hpp"

namespace specnorm {

/// How many digits the caller wants, how far escalation may go.
struct PrecisionPolicy {
    long target_digits = 30;
    long guard_digits = 15;
    long max_digits = 2000;
    int escalation_factor = 2;

    void validate() const {
        if (target_digits < 1) throw DomainError("PrecisionPolicy: target_digits must be >= 1");
        if (max_digits < target_digits + guard_digits)
            throw DomainError("PrecisionPolicy: max_digits must cover target + guard");
        if (escalation_factor < 2) throw DomainError("PrecisionPolicy: escalation_factor must be >= 2");
    }

    static PrecisionPolicy with_target(long digits) {
        PrecisionPolicy p;
        p.target_digits = digits;
        if (p.max_digits < digits + p.guard_digits) p.max_digits = digits + p.guard_digits;
        return p;
    }
};

/// A value whose leading digits agree between two precision levels.
struct CertifiedValue {
    HPReal value;
    long certified_digits;
    long precision_used;  // bits of the returned value
    /// log10(sum of |terms| / |result|) when the value came from a summation;
    /// 0 for values with no summation history.
    double cancellation_magnitude;
};

}  // namespace specnorm
