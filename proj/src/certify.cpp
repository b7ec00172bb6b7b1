#include "specnorm/certify.hpp"

#include <algorithm>
#include <cmath>

namespace specnorm {

double cancellation_of(const TrackedSum& s) {
    if (s.value.is_zero()) {
        if (s.abs_sum.is_zero()) return 0.0;
        return 1e6;  // total cancellation
    }
    long ev = s.value.exponent2();
    long ea = s.abs_sum.exponent2();
    if (ea <= ev) return 0.0;
    double c = static_cast<double>(ea - ev) * 0.3010299956639812;
    return std::min(c, 1e6);
}

CertifiedValue certify_sum(const TrackedComputation& f, const PrecisionPolicy& policy,
                           long hint_digits) {
    policy.validate();
    long d = std::max(policy.target_digits + policy.guard_digits, hint_digits);
    d = std::min(d, policy.max_digits);

    long best_achieved = -1;
    while (true) {
        long p = digits_to_bits(d);
        bool lost = false;
        TrackedSum lo{HPReal(2), HPReal(2)}, hi{HPReal(2), HPReal(2)};
        try {
            lo = f(p);
            hi = f(2 * p);
        } catch (const PrecisionLoss&) {
            lost = true;
        }

        if (!lost) {
            long agreed = agreed_digits(lo.value, hi.value);
            double cancel = cancellation_of(hi);
            if (agreed >= policy.target_digits) {
                return CertifiedValue{hi.value, agreed, 2 * p, cancel};
            }
            best_achieved = std::max(best_achieved, agreed);
            if (d >= policy.max_digits) {
                throw PrecisionBudgetError(
                    "certify: two-precision agreement stalled at " + std::to_string(agreed) +
                        " digits (target " + std::to_string(policy.target_digits) + ")",
                    agreed, d);
            }
            // Pre-emptive jump: the observed cancellation tells us how many
            // digits the next attempt actually needs.
            long need = policy.target_digits + static_cast<long>(std::ceil(cancel)) +
                        policy.guard_digits;
            d = std::max(d * policy.escalation_factor, need);
        } else {
            if (d >= policy.max_digits) {
                throw PrecisionBudgetError("certify: precision loss persisted at the budget ceiling",
                                           std::max(best_achieved, 0L), d);
            }
            d = d * policy.escalation_factor;
        }
        d = std::min(d, policy.max_digits);
    }
}

CertifiedValue certify(const ScalarComputation& f, const PrecisionPolicy& policy,
                       long hint_digits) {
    return certify_sum(
        [&f](long p) {
            HPReal v = f(p);
            return TrackedSum{v, abs(v)};
        },
        policy, hint_digits);
}

}  // namespace specnorm
