#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cmath>
#include <string>
#include <string_view>
#include <utility>

#include "specnorm/errors.hpp"

namespace specnorm {

// Precision is carried in bits internally; user-facing surfaces speak decimal
// digits.  Conversion rounds the bit count up so that `digits` decimal digits
// always survive the round trip.
inline long digits_to_bits(long digits) {
    if (digits < 1) digits = 1;
    return static_cast<long>(std::ceil(static_cast<double>(digits) * 3.321928094887362347));
}

inline long bits_to_digits(long bits) {
    if (bits < 2) bits = 2;
    return static_cast<long>(std::floor(static_cast<double>(bits) / 3.321928094887362347));
}

/// Arbitrary-precision real number with an explicit working precision.
///
/// Arithmetic is deterministic: identical operands at identical precisions
/// give bit-identical results (every operation rounds to nearest once).  The
/// precision of a derived value is the minimum of the operand precisions;
/// exact integer/rational operands do not lower it.
class HPReal {
  public:
    explicit HPReal(long prec_bits) { mpfr_init2(v_, clamp_prec(prec_bits)); }

    HPReal(const HPReal& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    HPReal(HPReal&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    HPReal& operator=(const HPReal& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    HPReal& operator=(HPReal&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~HPReal() { mpfr_clear(v_); }

    static HPReal zero(long prec) {
        HPReal r(prec);
        mpfr_set_zero(r.v_, 1);
        return r;
    }
    static HPReal one(long prec) { return of(1L, prec); }
    static HPReal of(long v, long prec) {
        HPReal r(prec);
        mpfr_set_si(r.v_, v, MPFR_RNDN);
        return r;
    }
    static HPReal of(int v, long prec) { return of(static_cast<long>(v), prec); }
    static HPReal of(double v, long prec) {
        HPReal r(prec);
        mpfr_set_d(r.v_, v, MPFR_RNDN);
        return r;
    }
    static HPReal of(const mpz_class& v, long prec) {
        HPReal r(prec);
        mpfr_set_z(r.v_, v.get_mpz_t(), MPFR_RNDN);
        return r;
    }
    static HPReal of(const mpq_class& v, long prec) {
        HPReal r(prec);
        mpfr_set_q(r.v_, v.get_mpq_t(), MPFR_RNDN);
        return r;
    }
    /// Parse a decimal string at the given precision.
    static HPReal parse(const std::string& text, long prec) {
        HPReal r(prec);
        if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0)
            throw DomainError("HPReal::parse: malformed number '" + text + "'");
        return r;
    }

    long prec() const { return mpfr_get_prec(v_); }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    /// Exponent e with |x| in [2^(e-1), 2^e); 0 for zero.
    long exponent2() const { return is_zero() ? 0 : static_cast<long>(mpfr_get_exp(v_)); }

    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }

    /// Same value re-rounded at a different working precision.
    HPReal round_to(long prec) const {
        HPReal r(prec);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    static long clamp_prec(long p) { return p < MPFR_PREC_MIN ? MPFR_PREC_MIN : p; }

  private:
    mpfr_t v_;
};

inline long min_prec(const HPReal& a, const HPReal& b) {
    return a.prec() < b.prec() ? a.prec() : b.prec();
}

inline HPReal operator+(const HPReal& a, const HPReal& b) {
    HPReal r(min_prec(a, b));
    mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}
inline HPReal operator-(const HPReal& a, const HPReal& b) {
    HPReal r(min_prec(a, b));
    mpfr_sub(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}
inline HPReal operator*(const HPReal& a, const HPReal& b) {
    HPReal r(min_prec(a, b));
    mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}
inline HPReal operator/(const HPReal& a, const HPReal& b) {
    HPReal r(min_prec(a, b));
    mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}
inline HPReal operator-(const HPReal& a) {
    HPReal r(a.prec());
    mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}

// Exact integer / rational operands keep the floating operand's precision.
inline HPReal operator*(const HPReal& a, long b) {
    HPReal r(a.prec());
    mpfr_mul_si(r.raw(), a.raw(), b, MPFR_RNDN);
    return r;
}
inline HPReal operator*(long a, const HPReal& b) { return b * a; }
inline HPReal operator/(const HPReal& a, long b) {
    HPReal r(a.prec());
    mpfr_div_si(r.raw(), a.raw(), b, MPFR_RNDN);
    return r;
}
inline HPReal operator+(const HPReal& a, long b) {
    HPReal r(a.prec());
    mpfr_add_si(r.raw(), a.raw(), b, MPFR_RNDN);
    return r;
}
inline HPReal operator+(long a, const HPReal& b) { return b + a; }
inline HPReal operator-(const HPReal& a, long b) {
    HPReal r(a.prec());
    mpfr_sub_si(r.raw(), a.raw(), b, MPFR_RNDN);
    return r;
}
inline HPReal operator-(long a, const HPReal& b) {
    HPReal r(b.prec());
    mpfr_si_sub(r.raw(), a, b.raw(), MPFR_RNDN);
    return r;
}
inline HPReal mul_q(const HPReal& a, const mpq_class& q) {
    HPReal r(a.prec());
    mpfr_mul_q(r.raw(), a.raw(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}
inline HPReal div_q(const HPReal& a, const mpq_class& q) {
    HPReal r(a.prec());
    mpfr_div_q(r.raw(), a.raw(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}
inline HPReal mul_z(const HPReal& a, const mpz_class& z) {
    HPReal r(a.prec());
    mpfr_mul_z(r.raw(), a.raw(), z.get_mpz_t(), MPFR_RNDN);
    return r;
}
inline HPReal div_z(const HPReal& a, const mpz_class& z) {
    HPReal r(a.prec());
    mpfr_div_z(r.raw(), a.raw(), z.get_mpz_t(), MPFR_RNDN);
    return r;
}
/// Exact scaling by 2^k.
inline HPReal ldexp2(const HPReal& a, long k) {
    HPReal r(a.prec());
    mpfr_mul_2si(r.raw(), a.raw(), k, MPFR_RNDN);
    return r;
}

#define SPECNORM_UNARY(name, fn)            \
    inline HPReal name(const HPReal& a) {   \
        HPReal r(a.prec());                 \
        fn(r.raw(), a.raw(), MPFR_RNDN);    \
        return r;                           \
    }
SPECNORM_UNARY(sqrt, mpfr_sqrt)
SPECNORM_UNARY(exp, mpfr_exp)
SPECNORM_UNARY(log, mpfr_log)
SPECNORM_UNARY(log10, mpfr_log10)
SPECNORM_UNARY(cos, mpfr_cos)
SPECNORM_UNARY(sin, mpfr_sin)
SPECNORM_UNARY(tan, mpfr_tan)
SPECNORM_UNARY(atan, mpfr_atan)
#undef SPECNORM_UNARY

inline HPReal abs(const HPReal& a) {
    HPReal r(a.prec());
    mpfr_abs(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}
inline HPReal atan2(const HPReal& y, const HPReal& x) {
    HPReal r(min_prec(y, x));
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline HPReal pow(const HPReal& b, const HPReal& e) {
    HPReal r(min_prec(b, e));
    mpfr_pow(r.raw(), b.raw(), e.raw(), MPFR_RNDN);
    return r;
}
inline HPReal pow_si(const HPReal& b, long e) {
    HPReal r(b.prec());
    mpfr_pow_si(r.raw(), b.raw(), e, MPFR_RNDN);
    return r;
}
/// b^q for positive b and exact rational q (principal real branch).
inline HPReal pow_q(const HPReal& b, const mpq_class& q) {
    if (b.sign() < 0) throw DomainError("pow_q: negative base");
    if (q == 0) return HPReal::one(b.prec());
    HPReal e = HPReal::of(q, b.prec());
    return pow(b, e);
}
inline HPReal hypot(const HPReal& x, const HPReal& y) {
    HPReal r(min_prec(x, y));
    mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}

inline bool operator<(const HPReal& a, const HPReal& b) { return mpfr_less_p(a.raw(), b.raw()) != 0; }
inline bool operator>(const HPReal& a, const HPReal& b) { return mpfr_greater_p(a.raw(), b.raw()) != 0; }
inline bool operator<=(const HPReal& a, const HPReal& b) { return mpfr_lessequal_p(a.raw(), b.raw()) != 0; }
inline bool operator>=(const HPReal& a, const HPReal& b) { return mpfr_greaterequal_p(a.raw(), b.raw()) != 0; }
inline bool operator==(const HPReal& a, const HPReal& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }
inline bool operator!=(const HPReal& a, const HPReal& b) { return !(a == b); }

/// pi at the given precision (correctly rounded, cached per thread).
HPReal pi(long prec);

/// Decimal digits on which a and b agree, measured as -log10 of the relative
/// difference, capped by the coarser operand precision.  This is the
/// certification metric used throughout.
long agreed_digits(const HPReal& a, const HPReal& b);

/// Scientific-notation rendering with `digits` significant digits, round to
/// nearest (ties to even), locale-independent, exponent padded to two digits.
std::string to_string(const HPReal& x, long digits);

}  // namespace specnorm
