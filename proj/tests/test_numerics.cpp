#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "specnorm/angle.hpp"
#include "specnorm/certify.hpp"
#include "specnorm/gamma.hpp"
#include "specnorm/quadrature.hpp"

using namespace specnorm;

namespace {

HPReal integrate_halfline(const std::function<HPReal(const HPReal&)>& f, long digits) {
    return tanh_sinh_integrate(f, IntegrationDomain::HalfLine,
                               PrecisionPolicy::with_target(digits))
        .value;
}

}  // namespace

TEST_CASE("precision bookkeeping") {
    CHECK(digits_to_bits(30) >= 100);
    CHECK(bits_to_digits(digits_to_bits(200)) >= 200);

    HPReal a = HPReal::of(mpq_class(1, 3), 256);
    HPReal b = HPReal::of(mpq_class(1, 7), 100);
    CHECK((a * b).prec() == 100);
    CHECK((a + b).prec() == 100);
    CHECK((a * 3L).prec() == 256);  // exact integer operands keep precision

    // bit-identical repetition
    HPReal x = exp(sqrt(HPReal::of(2L, 333)));
    HPReal y = exp(sqrt(HPReal::of(2L, 333)));
    CHECK(x == y);
    CHECK(to_string(x, 80) == to_string(y, 80));
}

TEST_CASE("agreed_digits measures relative agreement") {
    long p = digits_to_bits(50);
    HPReal a = HPReal::parse("1.00000000000000000001", p);
    HPReal b = HPReal::one(p);
    long d = agreed_digits(a, b);
    CHECK(d >= 18);
    CHECK(d <= 21);
    CHECK(agreed_digits(b, b) == bits_to_digits(p));
    CHECK(agreed_digits(HPReal::zero(p), HPReal::zero(p)) == bits_to_digits(p));
    CHECK(agreed_digits(HPReal::one(p), -HPReal::one(p)) == 0);
}

TEST_CASE("to_string rounds half to even and pads exponents") {
    long p = 128;
    CHECK(to_string(HPReal::of(0.125, p), 2) == "1.2e-01");
    CHECK(to_string(HPReal::of(0.375, p), 2) == "3.8e-01");
    CHECK(to_string(HPReal::of(1.0, p), 4) == "1.000e+00");
    CHECK(to_string(-HPReal::of(1.5e120, p), 3) == "-1.50e+120");
}

TEST_CASE("gamma: exact base cases") {
    long p = digits_to_bits(40);
    CHECK(gamma_rational(mpq_class(1, 2), p) == sqrt(pi(p)));
    // Gamma(5/2) = (3/4) sqrt(pi)
    HPReal expected = mul_q(sqrt(pi(p)), mpq_class(3, 4));
    CHECK(agreed_digits(gamma_rational(mpq_class(5, 2), p), expected) >= 39);
    CHECK(gamma_rational(mpq_class(1), p) == HPReal::one(p));
    CHECK(gamma_rational(mpq_class(7), p) == HPReal::of(720L, p));
}

TEST_CASE("gamma: non-half-integer argument against the quadrature oracle") {
    // Independent oracle at doubled precision: Gamma(7/3) = int_0^inf t^{4/3} e^{-t} dt.
    long digits = 40;
    HPReal oracle = integrate_halfline(
        [](const HPReal& t) { return pow_q(t, mpq_class(4, 3)) * exp(-t); }, 2 * digits);
    HPReal got = gamma_rational(mpq_class(7, 3), digits_to_bits(digits));
    CHECK(agreed_digits(got, oracle) >= digits - 2);
    // Frozen leading digits from the oracle run.
    CHECK(to_string(got, 15) == "1.19063934875900e+00");
}

TEST_CASE("gamma: recursion property on random arguments") {
    long p = digits_to_bits(35);
    std::mt19937_64 rng(20260808);
    std::uniform_real_distribution<double> dist(0.1, 50.0);
    for (int i = 0; i < 1000; ++i) {
        HPReal x = HPReal::of(dist(rng), p);
        HPReal lhs = gamma_real(x + 1);
        HPReal rhs = x * gamma_real(x);
        REQUIRE(agreed_digits(lhs, rhs) >= 33);
    }
}

TEST_CASE("gamma: domain errors") {
    long p = 128;
    CHECK_THROWS_AS(gamma_real(HPReal::zero(p)), DomainError);
    CHECK_THROWS_AS(gamma_real(HPReal::of(-2.5, p)), DomainError);
}

TEST_CASE("tanh_sinh: half-line exponential integrands") {
    long digits = 35;
    auto one = tanh_sinh_integrate(
        std::function<HPReal(const HPReal&)>([](const HPReal& x) { return exp(-x); }),
        IntegrationDomain::HalfLine, PrecisionPolicy::with_target(digits));
    CHECK(one.certified_digits >= digits);
    CHECK(agreed_digits(one.value, HPReal::one(one.value.prec())) >= digits);

    // int_0^inf x^{1/2} e^{-2x} dx = Gamma(3/2) 2^{-3/2}
    long p = digits_to_bits(digits + 10);
    HPReal expect = gamma_rational(mpq_class(3, 2), p) * pow_q(HPReal::of(2L, p), mpq_class(-3, 2));
    HPReal got = integrate_halfline(
        [](const HPReal& x) { return sqrt(x) * exp(ldexp2(-x, 1)); }, digits);
    CHECK(agreed_digits(got, expect) >= digits - 1);
}

TEST_CASE("tanh_sinh: algebraic endpoint singularity x^gamma, gamma > -1") {
    long digits = 30;
    HPReal got = integrate_halfline(
        [](const HPReal& x) { return pow_q(x, mpq_class(-1, 2)) * exp(-x); }, digits);
    CHECK(agreed_digits(got, sqrt(pi(digits_to_bits(digits + 10)))) >= digits - 1);
}

TEST_CASE("tanh_sinh: full-line Gaussian with the rotated variance") {
    long digits = 35;
    Angle theta = Angle::pi_multiple(mpq_class(1, 10));
    auto cv = tanh_sinh_integrate(
        std::function<HPReal(const HPReal&)>([&](const HPReal& x) {
            return exp(-(x * x * cos(theta.scaled(2).value(x.prec()))));
        }),
        IntegrationDomain::FullLine, PrecisionPolicy::with_target(digits));
    long p = digits_to_bits(digits + 10);
    HPReal expect = sqrt(pi(p) / cos(theta.scaled(2).value(p)));
    CHECK(agreed_digits(cv.value, expect) >= digits - 1);
}

TEST_CASE("tanh_sinh agrees with gamma for x^{a-1} e^{-x}") {
    for (mpq_class a : {mpq_class(1, 3), mpq_class(1, 2), mpq_class(1), mpq_class(5, 2), mpq_class(7)}) {
        long digits = 30;
        HPReal got = integrate_halfline(
            [&a](const HPReal& x) { return pow_q(x, a - 1) * exp(-x); }, digits);
        HPReal expect = gamma_rational(a, digits_to_bits(digits + 10));
        CHECK(agreed_digits(got, expect) >= digits - 1);
    }
}

TEST_CASE("certify: constants certify immediately") {
    PrecisionPolicy pol;
    CertifiedValue cv = certify([](long p) { return HPReal::one(p); }, pol);
    CHECK(cv.certified_digits >= pol.target_digits);
    CHECK(cv.value == HPReal::one(cv.value.prec()));
    CHECK(cv.cancellation_magnitude == 0.0);
}

TEST_CASE("certify: alternating sum against the exact rational oracle") {
    // sum_{k=0}^{40} (-1)^k 10^{20-k} / k!
    mpq_class exact(0);
    for (int k = 0; k <= 40; ++k) {
        mpz_class fk;
        mpz_fac_ui(fk.get_mpz_t(), static_cast<unsigned long>(k));
        mpz_class p20, pk;
        mpz_ui_pow_ui(p20.get_mpz_t(), 10, 20);
        mpz_ui_pow_ui(pk.get_mpz_t(), 10, static_cast<unsigned long>(k));
        mpq_class term = mpq_class(p20) / (mpq_class(pk) * mpq_class(fk));
        exact += (k % 2 != 0) ? mpq_class(-term) : term;
    }

    PrecisionPolicy pol = PrecisionPolicy::with_target(30);
    CertifiedValue cv = certify_sum(
        [](long prec) {
            SumTracker acc(prec);
            mpq_class p20;
            {
                mpz_class z;
                mpz_ui_pow_ui(z.get_mpz_t(), 10, 20);
                p20 = mpq_class(z);
            }
            mpq_class term = p20;
            for (int k = 0; k <= 40; ++k) {
                acc.add(HPReal::of(term, prec));
                term /= -10 * (k + 1);
            }
            return std::move(acc).take();
        },
        pol);
    CHECK(cv.certified_digits >= 30);
    CHECK(agreed_digits(cv.value, HPReal::of(exact, digits_to_bits(60))) >= 30);
}

TEST_CASE("certify: heavy cancellation escalates past the naive precision") {
    // sum (-30)^k / k! = e^{-30}: |terms| peak near 10^{11} while the result
    // is ~1e-13, so ~26 digits cancel and the first (45-digit) attempt fails.
    PrecisionPolicy pol = PrecisionPolicy::with_target(30);
    CertifiedValue cv = certify_sum(
        [](long prec) {
            SumTracker acc(prec);
            HPReal term = HPReal::one(prec);
            for (int k = 0; k <= 200; ++k) {
                acc.add(term);
                term = term * (-30L);
                term = term / (k + 1);
            }
            return std::move(acc).take();
        },
        pol);
    CHECK(cv.certified_digits >= 30);
    CHECK(cv.cancellation_magnitude > 20.0);
    // needed ~ target + cancellation + guard digits in the final value
    CHECK(cv.precision_used >= digits_to_bits(30 + 20));
    HPReal expect = exp(HPReal::of(-30L, digits_to_bits(80)));
    CHECK(agreed_digits(cv.value, expect) >= 30);
}

TEST_CASE("certify: never returns agreement below target, reports budget exhaustion") {
    PrecisionPolicy pol;
    pol.target_digits = 25;
    pol.guard_digits = 5;
    pol.max_digits = 40;
    // A "computation" that never stabilizes: value depends on the precision.
    CHECK_THROWS_AS(certify(
                        [](long p) {
                            return HPReal::of(static_cast<double>(p), 64) + HPReal::one(64);
                        },
                        pol),
                    PrecisionBudgetError);
}

TEST_CASE("certify: PrecisionLoss from the computation escalates instead of failing") {
    PrecisionPolicy pol = PrecisionPolicy::with_target(20);
    int calls = 0;
    CertifiedValue cv = certify(
        [&calls](long p) {
            ++calls;
            if (p < digits_to_bits(100)) throw PrecisionLoss("not yet");
            return HPReal::of(mpq_class(355, 113), p);
        },
        pol);
    CHECK(cv.certified_digits >= 20);
    CHECK(calls > 1);
}
