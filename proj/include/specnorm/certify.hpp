#pragma once

#include <functional>

#include "specnorm/precision.hpp"

namespace specnorm {

/// Result of a summation that kept the running total of |terms| alongside the
/// value.  The ratio of the two is what drives pre-emptive precision
/// escalation for cancellation-heavy sums.
struct TrackedSum {
    HPReal value;
    HPReal abs_sum;
};

/// Deterministic accumulator: plain addition at a fixed working precision,
/// with the |term| tally required by the escalation policy.
class SumTracker {
  public:
    explicit SumTracker(long prec)
        : sum_(HPReal::zero(prec)), abs_(HPReal::zero(prec)) {}

    void add(const HPReal& term) {
        sum_ = sum_ + term;
        abs_ = abs_ + abs(term);
    }

    TrackedSum take() && { return TrackedSum{std::move(sum_), std::move(abs_)}; }
    const HPReal& value() const { return sum_; }

  private:
    HPReal sum_;
    HPReal abs_;
};

/// log10(abs_sum/|value|), clamped to [0, 1e6]; 0 when nothing cancelled.
double cancellation_of(const TrackedSum& s);

using ScalarComputation = std::function<HPReal(long prec_bits)>;
using TrackedComputation = std::function<TrackedSum(long prec_bits)>;

/// Evaluate `f` at p and 2p bits; accept when the leading target_digits
/// agree, otherwise escalate (by the policy factor, or straight past the
/// observed cancellation when that is larger) until max_digits.
///
/// `hint_digits` pre-sizes the first attempt; pass the caller's cancellation
/// estimate to skip doomed low-precision rounds.
CertifiedValue certify(const ScalarComputation& f, const PrecisionPolicy& policy,
                       long hint_digits = 0);
CertifiedValue certify_sum(const TrackedComputation& f, const PrecisionPolicy& policy,
                           long hint_digits = 0);

}  // namespace specnorm
