#pragma once

#include "specnorm/hpreal.hpp"

namespace specnorm {

/// Complex value as a pair of HPReal.  Precision rules follow HPReal.
struct HPComplex {
    HPReal re;
    HPReal im;

    explicit HPComplex(long prec) : re(HPReal::zero(prec)), im(HPReal::zero(prec)) {}
    HPComplex(HPReal r, HPReal i) : re(std::move(r)), im(std::move(i)) {}

    long prec() const { return min_prec(re, im); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    static HPComplex from_real(const HPReal& r) { return HPComplex(r, HPReal::zero(r.prec())); }
    /// e^{i*phi} scaled by rho.
    static HPComplex from_polar(const HPReal& rho, const HPReal& phi) {
        return HPComplex(rho * cos(phi), rho * sin(phi));
    }
};

inline HPComplex operator+(const HPComplex& a, const HPComplex& b) {
    return HPComplex(a.re + b.re, a.im + b.im);
}
inline HPComplex operator-(const HPComplex& a, const HPComplex& b) {
    return HPComplex(a.re - b.re, a.im - b.im);
}
inline HPComplex operator*(const HPComplex& a, const HPComplex& b) {
    return HPComplex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}
inline HPComplex operator*(const HPComplex& a, const HPReal& s) {
    return HPComplex(a.re * s, a.im * s);
}
inline HPComplex operator-(const HPComplex& a) { return HPComplex(-a.re, -a.im); }
inline HPComplex conj(const HPComplex& a) { return HPComplex(a.re, -a.im); }

inline HPReal abs(const HPComplex& a) { return hypot(a.re, a.im); }
/// |a|^2 without the square root.
inline HPReal norm(const HPComplex& a) { return a.re * a.re + a.im * a.im; }
inline HPReal arg(const HPComplex& a) { return atan2(a.im, a.re); }

inline HPComplex operator/(const HPComplex& a, const HPComplex& b) {
    HPReal d = norm(b);
    return HPComplex((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
}

inline HPComplex exp(const HPComplex& a) {
    HPReal m = exp(a.re);
    return HPComplex(m * cos(a.im), m * sin(a.im));
}
/// Principal branch logarithm; a must be nonzero.
inline HPComplex log(const HPComplex& a) {
    return HPComplex(ldexp2(log(norm(a)), -1), arg(a));
}
/// z^p, principal branch, z != 0.
inline HPComplex pow(const HPComplex& z, const HPReal& p) { return exp(log(z) * p); }

}  // namespace specnorm
