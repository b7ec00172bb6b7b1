#pragma once

#include <gmpxx.h>

#include "specnorm/hpreal.hpp"

namespace specnorm {

/// Gamma(x) for x > 0, accurate to the operand's working precision.
///
/// Integer and half-integer arguments go through exact recursion from
/// Gamma(1) = 1 and Gamma(1/2) = sqrt(pi).  Everything else is shifted up
/// past a threshold that grows linearly with the requested digits and then
/// evaluated with the log-Gamma asymptotic series, whose remainder is bounded
/// by the first omitted term for positive real arguments.
HPReal gamma_real(const HPReal& x);

/// Convenience: Gamma at an exact rational argument, result at `prec` bits.
HPReal gamma_rational(const mpq_class& q, long prec);

/// Exact Bernoulli number B_{2k} (B_2 = 1/6, B_4 = -1/30, ...), cached.
mpq_class bernoulli_2k(long k);

}  // namespace specnorm
