#include "specnorm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <type_traits>

#include "specnorm/errors.hpp"

namespace specnorm {

namespace {

constexpr int kFirstLevel = 2;
constexpr int kMaxLevel = 12;
constexpr double kTCap = 14.0;  // exp(-exp(14)) is zero at any precision we use

long exp2_of(const HPReal& v) { return v.is_zero() ? std::numeric_limits<long>::min() : v.exponent2(); }
long exp2_of(const HPComplex& v) {
    if (v.is_zero()) return std::numeric_limits<long>::min();
    return std::max(exp2_of(v.re), exp2_of(v.im)) + 1;
}

HPReal make_zero(long p, const HPReal*) { return HPReal::zero(p); }
HPComplex make_zero(long p, const HPComplex*) { return HPComplex(p); }

long agreed_from_exponents(long diff_exp, long scale_exp, long cap) {
    long e = diff_exp - scale_exp;
    if (e >= 0) return 0;
    double d = -static_cast<double>(e) * 0.3010299956639812;
    return std::clamp(static_cast<long>(std::floor(d)), 0L, cap);
}

long agreement(const HPReal& a, const HPReal& b) { return agreed_digits(a, b); }
long agreement(const HPComplex& a, const HPComplex& b) {
    long cap = bits_to_digits(std::min(a.prec(), b.prec()));
    HPComplex d = a - b;
    if (d.is_zero()) return cap;
    HPReal da = abs(d);
    HPReal scale = abs(a);
    HPReal sb = abs(b);
    if (sb > scale) scale = sb;
    if (scale.is_zero()) return cap;
    return agreed_from_exponents(exp2_of(da), scale.exponent2(), cap);
}

template <class V, class F>
struct LevelSum {
    V value;
    long abs_exp;  // exponent of sum of |terms|
};

// One trapezoid level: h * sum_j w(t_j) f(x_j), both tails truncated once the
// terms are negligible against the largest term seen so far (a conservative
// underestimate of the integral's scale).
template <class V, class F>
LevelSum<V, F> level_sum(const F& f, IntegrationDomain domain, int level, long wp, long tol_bits) {
    const V* tag = nullptr;
    V sum = make_zero(wp, tag);
    HPReal abs_sum = HPReal::zero(wp);
    HPReal h = ldexp2(HPReal::one(wp), -level);

    long max_term_exp = std::numeric_limits<long>::min();
    const long j_cap = static_cast<long>(std::ceil(kTCap * std::ldexp(1.0, level)));
    const long j_min = 8 + (1L << level) / 2;

    for (int dir : {+1, -1}) {
        int consecutive_small = 0;
        for (long j = (dir > 0 ? 0 : 1); j <= j_cap; ++j) {
            HPReal t = h * (dir > 0 ? j : -j);
            HPReal em(wp);
            mpfr_exp(em.raw(), (-t).raw(), MPFR_RNDN);
            HPReal x = exp(t - em);
            if (x.is_zero()) break;  // underflowed past anything representable
            HPReal w = x * (em + 1);
            V fv = f(x);
            if (domain == IntegrationDomain::FullLine) fv = fv + f(-x);
            V term = fv * w;
            sum = sum + term;
            long te = exp2_of(term);
            if (te != std::numeric_limits<long>::min()) {
                HPReal ta(wp);
                if constexpr (std::is_same_v<V, HPReal>) {
                    ta = abs(term);
                } else {
                    ta = abs(term.re) + abs(term.im);
                }
                abs_sum = abs_sum + ta;
                max_term_exp = std::max(max_term_exp, te);
            }
            bool small = te == std::numeric_limits<long>::min() ||
                         (max_term_exp != std::numeric_limits<long>::min() &&
                          te < max_term_exp - tol_bits);
            consecutive_small = small ? consecutive_small + 1 : 0;
            if (consecutive_small >= 4 && j >= j_min) break;
        }
    }
    return LevelSum<V, F>{sum * h, exp2_of(abs_sum)};
}

template <class V, class F>
std::pair<V, std::pair<long, double>> integrate_core(const F& f, IntegrationDomain domain,
                                                     const PrecisionPolicy& policy, long* prec_out) {
    policy.validate();
    const long wp = digits_to_bits(policy.target_digits + policy.guard_digits) + 64;
    const long tol_bits = digits_to_bits(policy.target_digits + policy.guard_digits) + 24;
    *prec_out = wp;

    std::optional<V> prev;
    long best_agreed = 0;
    std::optional<V> best;
    double cancel = 0.0;

    for (int level = kFirstLevel; level <= kMaxLevel; ++level) {
        auto ls = level_sum<V, F>(f, domain, level, wp, tol_bits);
        if (prev) {
            long agreed = agreement(*prev, ls.value);
            long ve = exp2_of(ls.value);
            cancel = 0.0;
            if (ve != std::numeric_limits<long>::min() &&
                ls.abs_exp != std::numeric_limits<long>::min() && ls.abs_exp > ve)
                cancel = static_cast<double>(ls.abs_exp - ve) * 0.3010299956639812;
            if (agreed >= policy.target_digits)
                return {ls.value, {agreed, cancel}};
            if (agreed >= best_agreed) {
                best_agreed = agreed;
                best = ls.value;
            }
        }
        prev = ls.value;
    }
    std::string estimate;
    if (best) {
        if constexpr (std::is_same_v<V, HPReal>) {
            estimate = to_string(*best, std::max(best_agreed, 1L) + 2);
        } else {
            estimate = to_string(best->re, std::max(best_agreed, 1L) + 2) + " + " +
                       to_string(best->im, std::max(best_agreed, 1L) + 2) + "i";
        }
    }
    throw PrecisionBudgetError("tanh_sinh_integrate: refinement levels exhausted at " +
                                   std::to_string(best_agreed) + " agreed digits",
                               best_agreed, policy.target_digits, estimate);
}

}  // namespace

CertifiedValue tanh_sinh_integrate(const std::function<HPReal(const HPReal&)>& f,
                                   IntegrationDomain domain, const PrecisionPolicy& policy) {
    long prec = 0;
    auto [value, meta] = integrate_core<HPReal>(f, domain, policy, &prec);
    return CertifiedValue{value, meta.first, prec, meta.second};
}

CertifiedComplex tanh_sinh_integrate(const std::function<HPComplex(const HPReal&)>& f,
                                     IntegrationDomain domain, const PrecisionPolicy& policy) {
    long prec = 0;
    auto [value, meta] = integrate_core<HPComplex>(f, domain, policy, &prec);
    return CertifiedComplex{value, meta.first, prec, meta.second};
}

}  // namespace specnorm
