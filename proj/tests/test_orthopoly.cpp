#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specnorm/gamma.hpp"
#include "specnorm/orthopoly.hpp"
#include "specnorm/quadrature.hpp"

using namespace specnorm;

namespace {

const long kP = digits_to_bits(40);

mpz_class fact(unsigned long n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

// Closed form from the even-degree expansion p_{2n} = sum_r b_{n,r} x^{2r}:
// the integer core of b_{n,r} relative to k_{2n} is
// (-1)^{n-r} 2^{2r} (2n)! / ((n-r)! (2r)!).
mpz_class hermite_core_closed_form(long n, long r) {
    mpz_class v = fact(2 * static_cast<unsigned long>(n));
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), 2, 2 * static_cast<unsigned long>(r));
    v *= pw;
    v /= fact(static_cast<unsigned long>(n - r));
    v /= fact(2 * static_cast<unsigned long>(r));
    if ((n - r) % 2 != 0) v = -v;
    return v;
}

}  // namespace

TEST_CASE("hermite: normalization of low degrees") {
    PolyBasis p0 = hermite_coeffs(0, kP);
    CHECK(agreed_digits(p0.coeffs[0], pow_q(pi(kP), mpq_class(-1, 4))) >= 38);

    // p_2 = k_2 (4x^2 - 2): a_2 = sqrt(2) pi^{-1/4}, a_0 = -a_2/2
    PolyBasis p2 = hermite_coeffs(2, kP);
    HPReal a2_expect = sqrt(HPReal::of(2L, kP)) * pow_q(pi(kP), mpq_class(-1, 4));
    CHECK(agreed_digits(p2.coeffs[2], a2_expect) >= 38);
    CHECK(agreed_digits(p2.coeffs[0], -ldexp2(a2_expect, -1)) >= 38);
    CHECK(p2.coeffs[1].is_zero());
    CHECK(p2.parity == Parity::Even);
    CHECK(p2.leading().sign() > 0);
}

TEST_CASE("hermite: recurrence core equals the closed form exactly, n <= 200") {
    for (long n : {0L, 1L, 3L, 25L, 50L, 100L}) {
        std::vector<mpz_class> core = hermite_core(static_cast<int>(2 * n));
        for (long r = 0; r <= n; ++r) {
            REQUIRE(core[static_cast<size_t>(2 * r)] == hermite_core_closed_form(n, r));
        }
        for (long odd = 1; odd < 2 * n; odd += 2)
            REQUIRE(core[static_cast<size_t>(odd)] == 0);
    }
}

TEST_CASE("laguerre: exact coefficients and the 2^n/r! bound") {
    std::vector<mpq_class> b0 = laguerre_core(0);
    CHECK(b0[0] == 1);

    std::vector<mpq_class> b1 = laguerre_core(1);
    CHECK(b1[0] == -1);
    CHECK(b1[1] == 1);

    std::vector<mpq_class> b10 = laguerre_core(10);
    mpq_class expect(fact(10), fact(3) * fact(3) * fact(7));
    expect.canonicalize();
    CHECK(b10[3] == -expect);

    for (int n : {1, 7, 50, 200}) {
        std::vector<mpq_class> b = laguerre_core(n);
        mpz_class pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), 2, static_cast<unsigned long>(n));
        for (int r = 0; r <= n; ++r) {
            mpq_class bound(pw, fact(static_cast<unsigned long>(r)));
            REQUIRE(abs(b[static_cast<size_t>(r)]) <= bound);
        }
        REQUIRE(b.back() > 0);
    }
}

TEST_CASE("central binomial bracket 2^{-2r} sqrt(r+1) <= (r!)^2/(2r)! <= 2^{-2r} sqrt(pi(r+1))") {
    // (r!)^2/(2r)! = 1/C(2r,r); squaring turns the bracket into
    //   C^2 (r+1) <= 2^{4r}   and   2^{4r} <= pi C^2 (r+1).
    // The left side is an exact integer comparison; the right has relative
    // slack ~ 3/(8r), far above 128-bit rounding.
    mpz_class C(1);
    HPReal pi_v = pi(128);
    bool lower_ok = true, upper_ok = true;
    for (long r = 0; r <= 10000; ++r) {
        mpz_class lhs = C * C * (r + 1);
        mpz_class pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), 2, 4 * static_cast<unsigned long>(r));
        if (lhs > pw) lower_ok = false;
        if (HPReal::of(pw, 128) > pi_v * HPReal::of(lhs, 128)) upper_ok = false;
        C *= 2 * (2 * r + 1);
        mpz_divexact_ui(C.get_mpz_t(), C.get_mpz_t(), static_cast<unsigned long>(r + 1));
    }
    CHECK(lower_ok);
    CHECK(upper_ok);
}

TEST_CASE("moments: classical closed forms") {
    MomentTable lag = moments_at(WeightSpec::laguerre(), 12, kP);
    for (int k = 0; k <= 12; ++k) {
        CHECK(agreed_digits(lag.mu[static_cast<size_t>(k)],
                            HPReal::of(fact(static_cast<unsigned long>(k)), kP)) >= 38);
    }

    MomentTable her = moments_at(WeightSpec::hermite(), 8, kP);
    CHECK(agreed_digits(her.mu[0], sqrt(pi(kP))) >= 38);
    CHECK(agreed_digits(her.mu[2], ldexp2(sqrt(pi(kP)), -1)) >= 38);
    CHECK(her.mu[1].is_zero());
    CHECK(her.mu[7].is_zero());
}

TEST_CASE("moments: gammabeta(1/2, 3, 1) against formula and quadrature") {
    WeightSpec w = WeightSpec::gamma_beta(mpq_class(1, 2), 3, 1, Domain::HalfLine);
    MomentTable t = moments_at(w, 6, kP);
    // mu_0 = (1/3) 2^{-1/2} Gamma(1/2)
    HPReal mu0 = mul_q(pow_q(HPReal::of(2L, kP), mpq_class(-1, 2)) * sqrt(pi(kP)), mpq_class(1, 3));
    CHECK(agreed_digits(t.mu[0], mu0) >= 38);

    PrecisionPolicy pol = PrecisionPolicy::with_target(30);
    for (int k : {0, 1, 5}) {
        auto oracle = tanh_sinh_integrate(
            std::function<HPReal(const HPReal&)>([&w, k](const HPReal& x) {
                HPReal w2 = rotated_weight_sq(w, Angle::zero(), x);
                return k == 0 ? w2 : pow_si(x, k) * w2;
            }),
            IntegrationDomain::HalfLine, pol);
        CHECK(agreed_digits(t.mu[static_cast<size_t>(k)], oracle.value) >= 25);
    }
}

TEST_CASE("gram_polys reproduces the classical closed forms") {
    PrecisionPolicy pol = PrecisionPolicy::with_target(30);

    MomentTable lag = moments_at(WeightSpec::laguerre(), 10, digits_to_bits(120));
    std::vector<PolyBasis> gl = gram_polys(lag, 5, pol);
    for (int n = 0; n <= 5; ++n) {
        PolyBasis closed = laguerre_coeffs(n, kP);
        for (int r = 0; r <= n; ++r) {
            REQUIRE(agreed_digits(gl[static_cast<size_t>(n)].coeffs[static_cast<size_t>(r)],
                                  closed.coeffs[static_cast<size_t>(r)]) >= 28);
        }
    }

    MomentTable her = moments_at(WeightSpec::hermite(), 12, digits_to_bits(120));
    std::vector<PolyBasis> gh = gram_polys(her, 6, pol);
    for (int n = 0; n <= 6; ++n) {
        PolyBasis closed = hermite_coeffs(n, kP);
        for (int r = 0; r <= n; ++r) {
            if (closed.coeffs[static_cast<size_t>(r)].is_zero()) {
                REQUIRE(gh[static_cast<size_t>(n)].coeffs[static_cast<size_t>(r)].is_zero());
            } else {
                REQUIRE(agreed_digits(gh[static_cast<size_t>(n)].coeffs[static_cast<size_t>(r)],
                                      closed.coeffs[static_cast<size_t>(r)]) >= 28);
            }
        }
    }
}

TEST_CASE("gram_polys on a raw table: shifted Legendre") {
    // mu_k = 1/(k+1) is sigma^2 = 1 on (0,1); p_1 = sqrt(3)(2x - 1).
    MomentTable t{std::nullopt, {}, digits_to_bits(150)};
    for (int k = 0; k <= 10; ++k) t.mu.push_back(HPReal::of(mpq_class(1, k + 1), t.prec_bits));
    std::vector<PolyBasis> g = gram_polys(t, 4, PrecisionPolicy::with_target(30));
    HPReal s3 = sqrt(HPReal::of(3L, kP));
    CHECK(agreed_digits(g[1].coeffs[1], ldexp2(s3, 1)) >= 28);
    CHECK(agreed_digits(g[1].coeffs[0], -s3) >= 28);
    CHECK(g[0].coeffs[0] == HPReal::one(g[0].prec_bits));
}

TEST_CASE("orthonormality residual stays tiny for the classical ladders") {
    const long p = digits_to_bits(120);
    PrecisionPolicy pol = PrecisionPolicy::with_target(30);

    {
        MomentTable t = moments(WeightSpec::hermite(), 40, PrecisionPolicy::with_target(120));
        std::vector<PolyBasis> bases;
        for (int n = 0; n <= 20; ++n) bases.push_back(hermite_coeffs(n, p));
        HPReal res = orthonormality_residual(bases, t);
        CHECK(res < pow_si(HPReal::of(10L, p), -25));
    }
    {
        MomentTable t = moments(WeightSpec::laguerre(), 40, PrecisionPolicy::with_target(120));
        std::vector<PolyBasis> bases;
        for (int n = 0; n <= 20; ++n) bases.push_back(laguerre_coeffs(n, p));
        HPReal res = orthonormality_residual(bases, t);
        CHECK(res < pow_si(HPReal::of(10L, p), -25));
    }
    {
        // single p_0: <p_0, p_0> = 1 to precision
        MomentTable t = moments(WeightSpec::hermite(), 2, pol);
        std::vector<PolyBasis> bases{hermite_coeffs(0, digits_to_bits(45))};
        CHECK(orthonormality_residual(bases, t) < pow_si(HPReal::of(10L, 128), -40));
    }
}

TEST_CASE("gram_polys: certified ladder for a quartic polyexp weight") {
    WeightSpec w = WeightSpec::poly_exp({1, 0, 0, 1}, Domain::HalfLine);
    PrecisionPolicy pol = PrecisionPolicy::with_target(25);
    MomentTable seed = moments(w, 16, pol);
    std::vector<PolyBasis> g = gram_polys(seed, 8, pol);
    CHECK(g.size() == 9);
    for (const auto& b : g) CHECK(b.leading().sign() > 0);
    // residual against a sharper table
    MomentTable t = moments_at(w, 16, digits_to_bits(120));
    CHECK(orthonormality_residual(g, t) < pow_si(HPReal::of(10L, 128), -20));
}

TEST_CASE("basis_for applies the decay-scale substitution exactly") {
    // sigma = e^{-x} (tau = 1): p_0 = sqrt(2), and generally
    // p_n(x) = sqrt(2) L_n(2x) in terms of the tau = 1/2 coefficients.
    WeightSpec w = WeightSpec::gamma_beta(0, 1, 1, Domain::HalfLine);
    PolyBasis p0 = basis_for(w, 0, kP);
    CHECK(agreed_digits(p0.coeffs[0], sqrt(HPReal::of(2L, kP))) >= 38);

    PolyBasis p3 = basis_for(w, 3, kP);
    PolyBasis l3 = laguerre_coeffs(3, kP);
    for (int r = 0; r <= 3; ++r) {
        HPReal expect = l3.coeffs[static_cast<size_t>(r)] * sqrt(HPReal::of(2L, kP));
        expect = expect * pow_si(HPReal::of(2L, kP), r);
        CHECK(agreed_digits(p3.coeffs[static_cast<size_t>(r)], expect) >= 37);
    }
}
