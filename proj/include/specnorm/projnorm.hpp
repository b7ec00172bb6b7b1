#pragma once

#include <optional>

#include "specnorm/angle.hpp"
#include "specnorm/certify.hpp"
#include "specnorm/orthopoly.hpp"
#include "specnorm/weights.hpp"

namespace specnorm {

/// Rotated moments M_k = integral of x^k |sigma(e^{i theta} x)|^2 dx.
struct CrossMomentTable {
    WeightSpec weight;
    Angle theta;
    std::vector<HPReal> entries;
    long prec_bits;

    int k_max() const { return static_cast<int>(entries.size()) - 1; }
};

CrossMomentTable cross_moments_at(const WeightSpec& spec, const Angle& theta, int k_max,
                                  long prec);
CrossMomentTable cross_moments(const WeightSpec& spec, const Angle& theta, int k_max,
                               const PrecisionPolicy& policy);

/// N_{n,theta} with the bounds that apply to it.
struct NormResult {
    int n;
    Angle theta;
    CertifiedValue norm;
    HPReal lower;                  // c_theta^2 s_theta^(-2n-1)
    std::optional<HPReal> upper;   // when a proved upper bound applies
    bool lower_ok;
    std::optional<bool> upper_ok;  // empty when no upper bound applies
};

/// First-attempt working digits for the norm summation: the coefficient
/// products reach ~2^(4n), so size past that before certifying.
long norm_presize_digits(const WeightSpec& spec, int n, const Angle& theta,
                         const PrecisionPolicy& policy);

/// The projection norm as the real bilinear form
///   N = sum_{r,s} a_r a_s cos((r-s) theta) M_{r+s},
/// certified by two-precision agreement with cancellation tracking.  The
/// result depends only on theta, not on the modulus of z = r e^{i theta}.
NormResult projection_norm(const WeightSpec& spec, int n, const Angle& theta,
                           const PrecisionPolicy& policy);

HPReal lower_bound(const WeightSpec& spec, const Angle& theta, int n, long prec);

/// sec(theta)^(2n+1) 2^(4n+2), valid for |theta| < pi/2.
HPReal upper_bound_laguerre(const Angle& theta, int n, long prec);

/// pi (n+1)^(1/2) 2^(4n+2) (cos 2 theta)^(-(4n+1)/2) with n = m/2; even m
/// only (odd degrees have no published constant).
HPReal upper_bound_hermite_even(const Angle& theta, int m, long prec);

/// Independent verification path: direct quadrature of
/// |p_n(z x) sigma(z x)|^2, with the modulus of z folded into the integrand.
/// Practical for n up to ~30.
CertifiedValue quadrature_norm_oracle(const WeightSpec& spec, int n, const Angle& theta,
                                      const PrecisionPolicy& policy,
                                      const mpq_class& modulus = mpq_class(1));

}  // namespace specnorm
