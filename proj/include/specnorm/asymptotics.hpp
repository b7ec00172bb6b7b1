#pragma once

#include <optional>
#include <vector>

#include "specnorm/projnorm.hpp"

namespace specnorm {

/// sqrt(N_n / N_{n-2}), the same-parity growth ratio.
HPReal sigma_ratio(const WeightSpec& spec, int n, const Angle& theta,
                   const PrecisionPolicy& policy);

struct GrowthEntry {
    int n;
    CertifiedValue norm;
    std::optional<HPReal> exponent;  // log(N_n)/n, absent at n = 0
    std::optional<HPReal> sigma;     // sqrt(N_n/N_{n-2}) when the pair exists
};

struct GrowthReport {
    Angle theta;
    std::vector<GrowthEntry> entries;
    HPReal s_lower;                 // -2 log s_theta (= log sec 2 theta for Hermite)
    std::optional<HPReal> s_upper;  // log(4 sec 2 theta), Hermite only
    HPReal s_estimate;              // fitted per-index exponent
    long prec_bits;
};

/// Norms over the index grid n = stride, 2*stride, ..., n_max with per-index
/// exponents, sigma ratios and the extrapolated growth exponent (least
/// squares on log N = s n + (c/2) log n + d over the top half of the grid).
GrowthReport growth_report(const WeightSpec& spec, const Angle& theta, int n_max, int stride,
                           const PrecisionPolicy& policy, bool parallel = true);

struct TzBracket {
    HPReal lower;
    HPReal upper;
};

/// [log sec 2 theta, log(4 sec 2 theta)] / (2 cos 2 theta) for the Hermite
/// family; exactly {0, 0} at theta = 0 (self-adjoint case).
TzBracket tz_bracket(const Angle& theta, long prec);

enum class Verdict { Convergent, Divergent, Indeterminate };

struct ExpansionEntry {
    int n;
    HPReal term;  // e^{-(2n+1) cos(2 theta) t} N_n
};

struct ExpansionReport {
    Angle theta;
    mpq_class t;
    std::vector<ExpansionEntry> terms;
    Verdict verdict;
    TzBracket bracket;
    double tail_slope;  // fitted d(log term)/dn over the last quarter
};

/// Spectral-expansion term norms for the Hermite family at time t >= 0.
/// The verdict comes from the sign of the tail slope with a small dead band;
/// near-critical t honestly reports Indeterminate.
ExpansionReport expansion_terms(const Angle& theta, const mpq_class& t, int n_max,
                                const PrecisionPolicy& policy, bool parallel = true);

/// The heuristic per-index growth factor mu(theta) = exp(tan 2 theta).
HPReal semiclassical_mu(const Angle& theta, long prec);

/// Approximate-eigenvector data at index n.
struct SemiclassicalParams {
    Angle theta;
    int n;
    HPReal eta;  // (n / cos 2 theta)^(1/2)
    HPReal x0;   // = eta
    HPComplex psi1;
    HPComplex psi2;
    HPComplex lambda;  // (1 + e^{4 i theta}) eta^2
};

SemiclassicalParams semiclassical_params(const Angle& theta, int n, long prec);

/// Closed form of the full-line Gaussian ratio
///   int |phi|^2 / |int phi^2|  for phi = exp(-psi1 s - psi2 s^2 / 2):
///   (|psi2|/Re psi2)^(1/2) exp((Re psi1)^2/Re psi2 - Re(psi1^2/psi2)).
/// Requires Re psi2 > 0 (otherwise the numerator diverges).
HPReal gaussian_ratio(const HPComplex& psi1, const HPComplex& psi2);

}  // namespace specnorm
