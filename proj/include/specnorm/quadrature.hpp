#pragma once

#include <functional>

#include "specnorm/hpcomplex.hpp"
#include "specnorm/precision.hpp"

namespace specnorm {

enum class IntegrationDomain { HalfLine, FullLine };

struct CertifiedComplex {
    HPComplex value;
    long certified_digits;
    long precision_used;
    double cancellation_magnitude;
};

/// Integrate f over (0, inf) or (-inf, inf) with the double-exponential
/// substitution x = exp(t - exp(-t)).  Trapezoid levels are halved until two
/// successive levels agree to the policy's target digits; the agreement count
/// is what gets certified.  Handles algebraic endpoint behaviour x^g, g > -1,
/// and any integrand with (super)exponential decay at infinity.
///
/// Non-convergence within the refinement budget raises PrecisionBudgetError.
CertifiedValue tanh_sinh_integrate(const std::function<HPReal(const HPReal&)>& f,
                                   IntegrationDomain domain, const PrecisionPolicy& policy);

CertifiedComplex tanh_sinh_integrate(const std::function<HPComplex(const HPReal&)>& f,
                                     IntegrationDomain domain, const PrecisionPolicy& policy);

}  // namespace specnorm
