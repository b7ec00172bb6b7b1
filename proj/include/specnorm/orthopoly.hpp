#pragma once

#include <optional>
#include <vector>

#include "specnorm/certify.hpp"
#include "specnorm/precision.hpp"
#include "specnorm/weights.hpp"

namespace specnorm {

enum class Parity { Even, Odd, None };

/// Monomial coefficients a_0..a_n of an orthonormal polynomial, leading
/// coefficient positive.
struct PolyBasis {
    int degree;
    std::vector<HPReal> coeffs;
    Parity parity;
    long prec_bits;

    const HPReal& leading() const { return coeffs.back(); }
};

/// Exact integer coefficients of the physicists' Hermite polynomial H_n
/// (dense, with the parity zeros present).
std::vector<mpz_class> hermite_core(int n);

/// Exact rational coefficients b_{n,r} = (-1)^(n-r) n! / ((r!)^2 (n-r)!) of
/// the orthonormal Laguerre polynomial for the weight e^{-x/2}.
std::vector<mpq_class> laguerre_core(int n);

/// Orthonormal polynomial for sigma = e^{-x^2/2} on R: k_n H_n with
/// k_n = pi^{-1/4} 2^{-n/2} (n!)^{-1/2}.  Integer recurrence core, one
/// high-precision normalization at the end.
PolyBasis hermite_coeffs(int n, long prec);

/// Orthonormal polynomial for sigma = e^{-x/2} on (0, inf).
PolyBasis laguerre_coeffs(int n, long prec);

/// Real moments mu_k = integral of x^k sigma(x)^2 over the weight's domain.
struct MomentTable {
    std::optional<WeightSpec> weight;  // absent for hand-built tables
    std::vector<HPReal> mu;
    long prec_bits;

    int k_max() const { return static_cast<int>(mu.size()) - 1; }
};

/// Moment table at a fixed working precision (deterministic in prec).
/// GammaBeta moments are closed forms through the Gamma function; PolyExp
/// moments go through the quadrature oracle.
MomentTable moments_at(const WeightSpec& spec, int k_max, long prec);
MomentTable moments(const WeightSpec& spec, int k_max, const PrecisionPolicy& policy);

/// Orthonormal p_0..p_n via Cholesky factorization of the Hankel moment
/// matrix at the table's precision.  Throws PrecisionLoss when a pivot is
/// lost (caller escalates).
std::vector<PolyBasis> gram_polys_at(const MomentTable& table, int n_max);

/// Certified version: evaluates the factorization at two precisions and
/// escalates until every coefficient agrees to the policy target.  For
/// tables carrying a weight the moments are rebuilt at each precision; raw
/// tables certify only up to their own precision.
std::vector<PolyBasis> gram_polys(const MomentTable& table, int n_max,
                                  const PrecisionPolicy& policy);

/// Orthonormal basis for any supported weight: closed forms for the
/// classical families (with the exact decay-scale rescaling for tau != 1/2),
/// moment-matrix Gram-Schmidt for everything else.
PolyBasis basis_for(const WeightSpec& spec, int n, long prec);

/// max over i,j of |<p_i, p_j> - delta_ij|, contracted against the table.
HPReal orthonormality_residual(const std::vector<PolyBasis>& bases, const MomentTable& table);

}  // namespace specnorm
