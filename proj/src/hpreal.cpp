#include "specnorm/hpreal.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_map>
#include <vector>

namespace specnorm {

HPReal pi(long prec) {
    prec = HPReal::clamp_prec(prec);
    // MPFR on this platform has thread-safe caches, but going through a
    // per-thread memo makes the value's provenance independent of call order.
    thread_local std::unordered_map<long, HPReal> cache;
    auto it = cache.find(prec);
    if (it != cache.end()) return it->second;
    HPReal r(prec);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    cache.emplace(prec, r);
    return r;
}

long agreed_digits(const HPReal& a, const HPReal& b) {
    if (a.is_nan() || b.is_nan()) return 0;
    long cap = bits_to_digits(min_prec(a, b));
    if (a == b) return cap;
    long wp = std::max(a.prec(), b.prec()) + 8;
    HPReal diff(wp);
    mpfr_sub(diff.raw(), a.raw(), b.raw(), MPFR_RNDN);
    mpfr_abs(diff.raw(), diff.raw(), MPFR_RNDN);
    HPReal scale(wp);
    mpfr_abs(scale.raw(), a.raw(), MPFR_RNDN);
    HPReal babs(wp);
    mpfr_abs(babs.raw(), b.raw(), MPFR_RNDN);
    if (babs > scale) scale = babs;
    if (scale.is_zero()) return cap;  // both zero
    if (diff.is_zero()) return cap;
    HPReal rel = diff / scale;
    // rel < 2^e  =>  -log10(rel) > -e*log10(2); floor of the latter is a safe
    // (slightly conservative) digit count.
    long e = rel.exponent2();
    if (e >= 0) return 0;
    double d = -static_cast<double>(e) * 0.3010299956639812;
    long digits = static_cast<long>(std::floor(d));
    return std::clamp(digits, 0L, cap);
}

std::string to_string(const HPReal& x, long digits) {
    if (digits < 1) digits = 1;
    if (x.is_nan()) return "nan";
    char* out = nullptr;
    // RN = round to nearest, ties to even.
    int n = mpfr_asprintf(&out, "%.*RNe", static_cast<int>(digits - 1), x.raw());
    if (n < 0 || out == nullptr) throw Error("to_string: formatting failed");
    std::string s(out);
    mpfr_free_str(out);
    // Locale hardening plus canonical two-digit exponent.
    for (auto& c : s)
        if (c == ',') c = '.';
    auto epos = s.find('e');
    if (epos != std::string::npos) {
        std::string mant = s.substr(0, epos);
        std::string es = s.substr(epos + 1);
        std::string sign = "+";
        if (!es.empty() && (es[0] == '+' || es[0] == '-')) {
            sign = es.substr(0, 1);
            es = es.substr(1);
        }
        while (es.size() < 2) es = "0" + es;
        s = mant + "e" + sign + es;
    }
    return s;
}

}  // namespace specnorm
