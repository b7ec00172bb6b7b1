#include "specnorm/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <vector>

#include "specnorm/errors.hpp"

namespace specnorm {

namespace {

// Exact Bernoulli numbers via sum_{j<=m} C(m+1,j) B_j = 0.  Quadratic in the
// index but evaluated once per process and cached.
class BernoulliCache {
  public:
    mpq_class get(long k) {
        std::lock_guard<std::mutex> lock(mu_);
        extend(k);
        return even_[static_cast<size_t>(k)];
    }

  private:
    void extend(long k) {
        if (static_cast<long>(even_.size()) > k) return;
        if (all_.empty()) {
            all_.push_back(mpq_class(1));             // B_0
            all_.push_back(mpq_class(-1, 2));         // B_1
            even_.push_back(mpq_class(1));            // index 0 -> B_0
        }
        while (static_cast<long>(even_.size()) <= k) {
            long m = static_cast<long>(all_.size());
            mpq_class acc(0);
            mpz_class binom(1);  // C(m+1, 0)
            for (long j = 0; j < m; ++j) {
                if (j > 0) {
                    binom *= (m + 2 - j);
                    binom /= j;
                }
                if (all_[static_cast<size_t>(j)] != 0)
                    acc += mpq_class(binom) * all_[static_cast<size_t>(j)];
            }
            mpq_class bm = -acc / (m + 1);
            bm.canonicalize();
            all_.push_back(bm);
            if (m % 2 == 0) even_.push_back(bm);
        }
    }

    std::mutex mu_;
    std::vector<mpq_class> all_;   // B_0, B_1, B_2, ...
    std::vector<mpq_class> even_;  // B_0, B_2, B_4, ...
};

BernoulliCache g_bernoulli;

// log Gamma(y) by the asymptotic series, y large enough that the series
// reaches `tol_exp2` (an absolute 2^tol_exp2 tolerance on the log scale).
// For positive real y the remainder after K terms is bounded by the first
// omitted term, so stopping when a term clears the tolerance is rigorous.
HPReal log_gamma_asymptotic(const HPReal& y, long wp, long tol_exp2) {
    HPReal ln_y = log(y);
    HPReal acc = (y - HPReal::of(0.5, wp)) * ln_y - y + ldexp2(log(ldexp2(pi(wp), 1)), -1);

    HPReal y2 = y * y;
    HPReal pow_y = y;  // y^(2k-1)
    long prev_exp = 0;
    bool have_prev = false;
    for (long k = 1;; ++k) {
        mpq_class c = bernoulli_2k(k) / (mpq_class(2 * k) * mpq_class(2 * k - 1));
        HPReal term = mul_q(HPReal::one(wp) / pow_y, c);
        acc = acc + term;
        HPReal t = abs(term);
        if (t.is_zero() || t.exponent2() < tol_exp2) break;
        // Asymptotic series: once terms grow, the optimum is past and the
        // remainder bound no longer shrinks.  The shift threshold is sized so
        // this cannot happen; treat it as a precision failure if it does.
        if (have_prev && t.exponent2() >= prev_exp)
            throw PrecisionLoss("log_gamma_asymptotic: series stalled before tolerance");
        prev_exp = t.exponent2();
        have_prev = true;
        if (k > 4 * wp) throw PrecisionLoss("log_gamma_asymptotic: series did not reach tolerance");
        pow_y = pow_y * y2;
    }
    return acc;
}

HPReal sqrt_pi(long wp) { return sqrt(pi(wp)); }

}  // namespace

mpq_class bernoulli_2k(long k) { return g_bernoulli.get(k); }

HPReal gamma_real(const HPReal& x) {
    if (x.is_nan()) throw DomainError("gamma_real: NaN argument");
    if (x.sign() <= 0) throw DomainError("gamma_real: argument must be positive");

    const long prec = x.prec();
    const long digits = bits_to_digits(prec);
    const long wp = prec + 64;

    // Exact-recursion fast paths: 2x integral.
    HPReal two_x = ldexp2(x, 1);
    if (mpfr_integer_p(two_x.raw()) && mpfr_cmp_si(x.raw(), 1000000) <= 0) {
        mpz_class two_x_z;
        mpfr_get_z(two_x_z.get_mpz_t(), two_x.raw(), MPFR_RNDN);
        if (mpz_even_p(two_x_z.get_mpz_t())) {
            // Gamma(m) = (m-1)!
            unsigned long m = mpz_class(two_x_z / 2).get_ui();
            mpz_class f;
            mpz_fac_ui(f.get_mpz_t(), m - 1);
            return HPReal::of(f, prec);
        }
        // Gamma(k + 1/2) = sqrt(pi) * (2k)! / (4^k k!)
        mpz_class k_z((two_x_z - 1) / 2);
        unsigned long k = k_z.get_ui();
        mpz_class num, den;
        mpz_fac_ui(num.get_mpz_t(), 2 * k);
        mpz_fac_ui(den.get_mpz_t(), k);
        mpz_class four_k;
        mpz_ui_pow_ui(four_k.get_mpz_t(), 4, k);
        den *= four_k;
        HPReal r = mul_z(sqrt_pi(wp), num);
        r = div_z(r, den);
        return r.round_to(prec);
    }

    // General positive argument: shift upward, then the asymptotic series.
    // The threshold scales linearly with the requested digits so the series
    // can always reach the tolerance (min term ~ exp(-2*pi*y)).
    HPReal xw = x.round_to(wp);
    long threshold = std::max<long>(16, static_cast<long>(std::ceil(0.39 * (digits + 12))) + 4);
    long shift = 0;
    double xd = x.to_double();
    if (xd < static_cast<double>(threshold))
        shift = static_cast<long>(std::ceil(static_cast<double>(threshold) - xd));

    HPReal y = xw + shift;
    // Tolerance on the log scale: the value of log Gamma is >= ~0.5 here, so
    // an absolute tolerance of 2^-(bits needed for digits) suffices.
    long tol_exp2 = -(digits_to_bits(digits) + 40);
    HPReal lg = log_gamma_asymptotic(y, wp, tol_exp2);
    HPReal g = exp(lg);

    if (shift > 0) {
        HPReal prod = HPReal::one(wp);
        for (long j = 0; j < shift; ++j) prod = prod * (xw + j);
        g = g / prod;
    }
    return g.round_to(prec);
}

HPReal gamma_rational(const mpq_class& q, long prec) {
    if (q <= 0) throw DomainError("gamma_rational: argument must be positive");
    return gamma_real(HPReal::of(q, prec));
}

}  // namespace specnorm
