#include "specnorm/projnorm.hpp"

#include <algorithm>
#include <cmath>

#include "specnorm/gamma.hpp"
#include "specnorm/quadrature.hpp"

namespace specnorm {

namespace {

void require_in_sector(const WeightSpec& spec, const Angle& theta) {
    if (!abs_strictly_less(theta, spec.sector()))
        throw SectorViolation("theta = " + theta.describe() + " outside the sector |theta| < " +
                              spec.sector().describe() + " of " + spec.describe());
}

double sector_ratio(const WeightSpec& spec, const Angle& theta) {
    double s = spec.sector().radians_approx();
    double t = std::fabs(theta.radians_approx());
    return s > 0 ? t / s : 0.0;
}

HPReal eps_pow10(long digits, long prec) {
    return pow_si(HPReal::of(10L, prec), -digits);
}

}  // namespace

CrossMomentTable cross_moments_at(const WeightSpec& spec, const Angle& theta, int k_max,
                                  long prec) {
    require_in_sector(spec, theta);
    if (k_max < 0) throw DomainError("cross_moments_at: negative k_max");
    const long wp = prec + 32;
    const bool full = spec.domain() == Domain::FullLine;
    std::vector<HPReal> M;
    M.reserve(static_cast<size_t>(k_max) + 1);

    if (spec.family() == WeightSpec::Family::GammaBeta) {
        const mpq_class& beta = spec.beta();
        const mpq_class& gamma = spec.gamma();
        HPReal cos_bt = cos(theta.scaled(beta).value(wp));
        if (cos_bt.sign() <= 0)
            throw SectorViolation("cross_moments: cos(beta theta) <= 0, integral diverges");
        // base = 2 tau cos(beta theta); M_k over the half-line is
        // (1/beta) base^{-(k+gamma+1)/beta} Gamma((k+gamma+1)/beta).
        HPReal base = mul_q(cos_bt, 2 * spec.tau());
        HPReal log_base = log(base);
        HPReal inv_beta = HPReal::of(mpq_class(1) / beta, wp);

        auto entry = [&](long k) {
            mpq_class a = (mpq_class(k) + gamma + 1) / beta;
            HPReal pref = exp(-(log_base * HPReal::of(a, wp)));
            return inv_beta * pref * gamma_rational(a, wp);
        };

        if (beta.get_den() == 1 && beta.get_num().fits_slong_p()) {
            long b = beta.get_num().get_si();
            std::vector<HPReal> g_chain, p_chain;
            std::vector<mpq_class> args;
            HPReal base_inv = HPReal::one(wp) / base;
            for (long m = 0; m < b && m <= k_max; ++m) {
                mpq_class a = (mpq_class(m) + gamma + 1) / beta;
                args.push_back(a);
                g_chain.push_back(gamma_rational(a, wp));
                p_chain.push_back(exp(-(log_base * HPReal::of(a, wp))));
            }
            for (long k = 0; k <= k_max; ++k) {
                long cls = k % b;
                if (k >= b) {
                    g_chain[static_cast<size_t>(cls)] =
                        g_chain[static_cast<size_t>(cls)] *
                        HPReal::of(args[static_cast<size_t>(cls)], wp);
                    args[static_cast<size_t>(cls)] += 1;
                    p_chain[static_cast<size_t>(cls)] = p_chain[static_cast<size_t>(cls)] * base_inv;
                }
                HPReal half_line =
                    inv_beta * p_chain[static_cast<size_t>(cls)] * g_chain[static_cast<size_t>(cls)];
                if (full) {
                    M.push_back(k % 2 != 0 ? HPReal::zero(prec)
                                           : ldexp2(half_line, 1).round_to(prec));
                } else {
                    M.push_back(half_line.round_to(prec));
                }
            }
        } else {
            for (long k = 0; k <= k_max; ++k) {
                if (full && k % 2 != 0) {
                    M.push_back(HPReal::zero(prec));
                    continue;
                }
                HPReal half_line = entry(k);
                M.push_back(full ? ldexp2(half_line, 1).round_to(prec) : half_line.round_to(prec));
            }
        }
        return CrossMomentTable{spec, theta, std::move(M), prec};
    }

    // PolyExp: integrate x^k exp(-2 sum_j c_j cos(j theta) x^j).
    const long deg = spec.poly_degree();
    {
        HPReal lead = cos(theta.scaled(deg).value(wp));
        if (lead.sign() <= 0)
            throw SectorViolation("cross_moments: leading cosine <= 0, integral diverges");
    }
    std::vector<HPReal> q;  // q_j = 2 c_j cos(j theta)
    q.reserve(static_cast<size_t>(deg));
    for (long j = 1; j <= deg; ++j)
        q.push_back(mul_q(cos(theta.scaled(j).value(wp)),
                          2 * spec.coeffs()[static_cast<size_t>(j - 1)]));

    PrecisionPolicy qpol = PrecisionPolicy::with_target(bits_to_digits(prec) + 5);
    for (long k = 0; k <= k_max; ++k) {
        if (full && k % 2 != 0) {
            M.push_back(HPReal::zero(prec));
            continue;
        }
        auto integrand = [&q, k, deg](const HPReal& x) {
            HPReal acc = HPReal::zero(x.prec());
            for (long j = deg; j >= 1; --j) {
                acc = acc * x + q[static_cast<size_t>(j - 1)];
                if (j == 1) acc = acc * x;
            }
            HPReal w2 = exp(-acc);
            return k == 0 ? w2 : pow_si(x, k) * w2;
        };
        CertifiedValue cv = tanh_sinh_integrate(integrand, IntegrationDomain::HalfLine, qpol);
        HPReal v = cv.value;
        if (full) v = ldexp2(v, 1);
        M.push_back(v.round_to(prec));
    }
    return CrossMomentTable{spec, theta, std::move(M), prec};
}

CrossMomentTable cross_moments(const WeightSpec& spec, const Angle& theta, int k_max,
                               const PrecisionPolicy& policy) {
    policy.validate();
    return cross_moments_at(spec, theta, k_max,
                            digits_to_bits(policy.target_digits + policy.guard_digits));
}

long norm_presize_digits(const WeightSpec& spec, int n, const Angle& theta,
                         const PrecisionPolicy& policy) {
    double ratio = sector_ratio(spec, theta);
    double extra = static_cast<double>(n) * 1.2041199826559248 * (1.0 + ratio);
    return policy.target_digits + static_cast<long>(std::ceil(extra)) + policy.guard_digits;
}

NormResult projection_norm(const WeightSpec& spec, int n, const Angle& theta,
                           const PrecisionPolicy& policy) {
    policy.validate();
    require_in_sector(spec, theta);
    if (n < 0) throw DomainError("projection_norm: negative degree");

    auto pipeline = [&spec, n, &theta](long p) -> TrackedSum {
        PolyBasis basis = basis_for(spec, n, p);
        CrossMomentTable M = cross_moments_at(spec, theta, 2 * n, p);
        std::vector<HPReal> cosk;
        cosk.reserve(static_cast<size_t>(n) + 1);
        for (int k = 0; k <= n; ++k)
            cosk.push_back(theta.is_zero() ? HPReal::one(p)
                                           : cos(theta.scaled(k).value(p)));
        SumTracker acc(p);
        for (int r = 0; r <= n; ++r) {
            const HPReal& ar = basis.coeffs[static_cast<size_t>(r)];
            if (ar.is_zero()) continue;
            acc.add(ar * ar * M.entries[static_cast<size_t>(2 * r)]);
            for (int s = r + 1; s <= n; ++s) {
                const HPReal& as = basis.coeffs[static_cast<size_t>(s)];
                if (as.is_zero()) continue;
                const HPReal& m = M.entries[static_cast<size_t>(r + s)];
                if (m.is_zero()) continue;
                acc.add(ldexp2(ar * as * cosk[static_cast<size_t>(s - r)] * m, 1));
            }
        }
        return std::move(acc).take();
    };

    CertifiedValue norm =
        certify_sum(pipeline, policy, norm_presize_digits(spec, n, theta, policy));

    const long bp = norm.value.prec();
    HPReal lower = lower_bound(spec, theta, n, bp);
    HPReal eps = eps_pow10(norm.certified_digits, bp);
    bool lower_ok = norm.value >= lower * (HPReal::one(bp) - eps);

    std::optional<HPReal> upper;
    std::optional<bool> upper_ok;
    if (spec.is_classical_laguerre()) {
        // tau does not enter N (modulus invariance), so the bound applies to
        // the whole gamma = 0, beta = 1 family.
        upper = upper_bound_laguerre(theta, n, bp);
    } else if (spec.is_classical_hermite() && n % 2 == 0) {
        upper = upper_bound_hermite_even(theta, n, bp);
    }
    if (upper) upper_ok = norm.value <= *upper * (HPReal::one(bp) + eps);

    return NormResult{n, theta, std::move(norm), std::move(lower), std::move(upper), lower_ok,
                      upper_ok};
}

HPReal lower_bound(const WeightSpec& spec, const Angle& theta, int n, long prec) {
    const long wp = prec + 32;
    ScaleParams sc = scale_constants(spec, theta, wp);
    HPReal v = sc.c_theta * sc.c_theta * pow_si(sc.s_theta, -(2L * n + 1));
    return v.round_to(prec);
}

HPReal upper_bound_laguerre(const Angle& theta, int n, long prec) {
    if (!abs_strictly_less(theta, Angle::pi_multiple(mpq_class(1, 2))))
        throw SectorViolation("upper_bound_laguerre: |theta| must be < pi/2");
    const long wp = prec + 32;
    HPReal sec_t = HPReal::one(wp) / cos(theta.value(wp));
    HPReal v = ldexp2(pow_si(sec_t, 2L * n + 1), 4L * n + 2);
    return v.round_to(prec);
}

HPReal upper_bound_hermite_even(const Angle& theta, int m, long prec) {
    if (m < 0 || m % 2 != 0)
        throw UnsupportedParity("upper_bound_hermite_even: even degrees only");
    if (!abs_strictly_less(theta, Angle::pi_multiple(mpq_class(1, 4))))
        throw SectorViolation("upper_bound_hermite_even: |theta| must be < pi/4");
    const long wp = prec + 32;
    long n = m / 2;
    HPReal cos2t = cos(theta.scaled(2).value(wp));
    HPReal v = pi(wp) * sqrt(HPReal::of(n + 1, wp)) *
               pow(cos2t, HPReal::of(mpq_class(-(4 * n + 1), 2), wp));
    v = ldexp2(v, 4 * n + 2);
    return v.round_to(prec);
}

CertifiedValue quadrature_norm_oracle(const WeightSpec& spec, int n, const Angle& theta,
                                      const PrecisionPolicy& policy, const mpq_class& modulus) {
    policy.validate();
    require_in_sector(spec, theta);
    if (modulus <= 0) throw DomainError("quadrature_norm_oracle: modulus must be positive");

    // |p_n(zx)|^2 cancels internally like the moment sum does, so the whole
    // evaluation runs at a working target inflated by the same heuristic.
    long cancel_est = norm_presize_digits(spec, n, theta, policy) - policy.target_digits -
                      policy.guard_digits;
    PrecisionPolicy qpol = policy;
    qpol.target_digits = policy.target_digits + cancel_est + policy.guard_digits;
    if (qpol.max_digits < qpol.target_digits + qpol.guard_digits)
        qpol.max_digits = qpol.target_digits + qpol.guard_digits;
    const long wp = digits_to_bits(qpol.target_digits + qpol.guard_digits) + 64;

    PolyBasis basis = basis_for(spec, n, wp);
    HPReal cos_t = cos(theta.value(wp));
    HPReal sin_t = sin(theta.value(wp));
    HPReal r_hp = HPReal::of(modulus, wp);

    auto integrand = [&](const HPReal& x) -> HPReal {
        HPReal s = x * r_hp;  // radial part of z x
        HPComplex w(s * cos_t, s * sin_t);
        HPComplex P(HPReal::zero(x.prec()), HPReal::zero(x.prec()));
        for (int j = n; j >= 0; --j) {
            P = P * w;
            P.re = P.re + basis.coeffs[static_cast<size_t>(j)];
        }
        return norm(P) * rotated_weight_sq(spec, theta, s);
    };

    CertifiedValue cv = tanh_sinh_integrate(integrand, IntegrationDomain::HalfLine, qpol);
    HPReal v = cv.value;
    if (spec.domain() == Domain::FullLine) v = ldexp2(v, 1);  // parity
    v = mul_q(v, modulus);
    // Level agreement measures discretization only; the integrand's own
    // rounding noise limits the honest digit count.
    long honest = std::min(cv.certified_digits,
                           bits_to_digits(wp) - cancel_est - 2);
    return CertifiedValue{v, honest, cv.precision_used, cv.cancellation_magnitude};
}

}  // namespace specnorm
