#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "specnorm/weights.hpp"

using namespace specnorm;

namespace {
const long kP = digits_to_bits(40);
}

TEST_CASE("weight family validation") {
    CHECK_THROWS_AS(WeightSpec::gamma_beta(-1, 1, 1, Domain::HalfLine), DomainError);
    CHECK_THROWS_AS(WeightSpec::gamma_beta(0, 0, 1, Domain::HalfLine), DomainError);
    CHECK_THROWS_AS(WeightSpec::gamma_beta(0, 2, 0, Domain::HalfLine), DomainError);
    // full line needs gamma = 0 and even integer beta
    CHECK_THROWS_AS(WeightSpec::gamma_beta(mpq_class(1, 2), 2, 1, Domain::FullLine), DomainError);
    CHECK_THROWS_AS(WeightSpec::gamma_beta(0, 3, 1, Domain::FullLine), DomainError);
    CHECK_NOTHROW(WeightSpec::gamma_beta(0, 4, 1, Domain::FullLine));
    // polyexp: positive leading coefficient, even leading index on R
    CHECK_THROWS_AS(WeightSpec::poly_exp({1, -1}, Domain::HalfLine), DomainError);
    CHECK_THROWS_AS(WeightSpec::poly_exp({0, 0, 1}, Domain::FullLine), DomainError);
    CHECK_NOTHROW(WeightSpec::poly_exp({0, 0, 0, 1}, Domain::FullLine));
}

TEST_CASE("sector half-angles") {
    CHECK(WeightSpec::hermite().sector() == Angle::pi_multiple(mpq_class(1, 4)));
    CHECK(WeightSpec::laguerre().sector() == Angle::pi_multiple(mpq_class(1, 2)));
    WeightSpec p4 = WeightSpec::poly_exp({0, 0, 0, 1}, Domain::HalfLine);
    CHECK(p4.sector() == Angle::pi_multiple(mpq_class(1, 8)));
    WeightSpec b3 = WeightSpec::gamma_beta(mpq_class(1, 2), 3, 1, Domain::HalfLine);
    CHECK(b3.sector() == Angle::pi_multiple(mpq_class(1, 6)));
}

TEST_CASE("scale constants: identity at theta = 0") {
    for (const WeightSpec& w :
         {WeightSpec::hermite(), WeightSpec::poly_exp({1, 0, 0, 1}, Domain::HalfLine)}) {
        ScaleParams sc = scale_constants(w, Angle::zero(), kP);
        CHECK(sc.s_theta == HPReal::one(kP));
        CHECK(sc.c_theta == HPReal::one(kP));
        CHECK(sc.k_theta == HPReal::zero(kP));
    }
}

TEST_CASE("scale constants: Hermite s_theta^-2 = sec 2 theta") {
    ScaleParams sc = scale_constants(WeightSpec::hermite(), Angle::pi_multiple(mpq_class(1, 10)), kP);
    HPReal inv_s2 = HPReal::one(kP) / (sc.s_theta * sc.s_theta);
    // sec(pi/5) = sqrt(5) - 1
    HPReal expect = sqrt(HPReal::of(5L, kP)) - 1;
    CHECK(agreed_digits(inv_s2, expect) >= 38);
    CHECK(to_string(inv_s2, 4).substr(0, 5) == "1.236");
}

TEST_CASE("scale constants: outside the sector") {
    CHECK_THROWS_AS(scale_constants(WeightSpec::hermite(), Angle::pi_multiple(mpq_class(1, 4)), kP),
                    SectorViolation);
    CHECK_THROWS_AS(scale_constants(WeightSpec::hermite(), Angle::pi_multiple(mpq_class(1, 3)), kP),
                    SectorViolation);
}

TEST_CASE("scale constants: even in theta") {
    Angle th = Angle::pi_multiple(mpq_class(3, 40));
    for (const WeightSpec& w :
         {WeightSpec::hermite(), WeightSpec::poly_exp({1, 0, 1}, Domain::HalfLine)}) {
        ScaleParams a = scale_constants(w, th, kP);
        ScaleParams b = scale_constants(w, th.negated(), kP);
        CHECK(a.s_theta == b.s_theta);
        CHECK(a.c_theta == b.c_theta);
        CHECK(a.k_theta == b.k_theta);
    }
}

TEST_CASE("scale constants: s_theta strictly decreasing in |theta|") {
    WeightSpec h = WeightSpec::hermite();
    HPReal prev = HPReal::one(kP);
    for (int i = 1; i <= 9; ++i) {
        ScaleParams sc = scale_constants(h, Angle::pi_multiple(mpq_class(i, 40)), kP);
        CHECK(sc.s_theta < prev);
        CHECK(sc.s_theta.sign() > 0);
        prev = sc.s_theta;
    }
}

TEST_CASE("polyexp: cos(n theta) < s_theta^n < 1 inside the sector") {
    WeightSpec w = WeightSpec::poly_exp({mpq_class(1, 2), 0, 1}, Domain::HalfLine);  // n = 3
    for (int i = 1; i <= 5; ++i) {
        Angle th = Angle::pi_multiple(mpq_class(i, 36));  // up to 5 pi/36 < pi/6
        ScaleParams sc = scale_constants(w, th, kP);
        HPReal sn = pow_si(sc.s_theta, 3);
        HPReal cn = cos(th.scaled(3).value(kP));
        CHECK(cn < sn);
        CHECK(sn < HPReal::one(kP));
    }
}

TEST_CASE("polyexp sigma = e^{-x^2}: k_theta = 0 at theta = pi/8") {
    // cos(2 theta) < s^2, so the supremum is the r -> 0 limit.
    WeightSpec w = WeightSpec::poly_exp({0, 1}, Domain::HalfLine);
    ScaleParams sc = scale_constants(w, Angle::pi_multiple(mpq_class(1, 8)), kP);
    HPReal s_expect = sqrt(ldexp2(cos(Angle::pi_multiple(mpq_class(1, 4)).value(kP)) + 1, -1));
    CHECK(agreed_digits(sc.s_theta, s_expect) >= 38);
    CHECK(sc.k_theta.is_zero());
    CHECK(sc.c_theta == HPReal::one(kP));
}

TEST_CASE("weight_eval: classical point values and sector boundary") {
    HPComplex one(HPReal::one(kP), HPReal::zero(kP));
    HPComplex sig = weight_eval(WeightSpec::hermite(), one);
    CHECK(agreed_digits(sig.re, exp(HPReal::of(mpq_class(-1, 2), kP))) >= 38);
    CHECK(sig.im.is_zero());

    // |arg(2i)| = pi/2 is not strictly inside the Laguerre sector
    HPComplex two_i(HPReal::zero(kP), HPReal::of(2L, kP));
    CHECK_THROWS_AS(weight_eval(WeightSpec::laguerre(), two_i), SectorViolation);

    // full-line weights accept the reflected cone (evenness)
    HPComplex neg(-HPReal::one(kP), HPReal::of(0.01, kP));
    CHECK_NOTHROW(weight_eval(WeightSpec::hermite(), neg));
    WeightSpec pe_full = WeightSpec::poly_exp({0, 1}, Domain::FullLine);
    HPComplex pos(HPReal::one(kP), -HPReal::of(0.01, kP));
    HPComplex a = weight_eval(pe_full, neg);
    HPComplex b = weight_eval(pe_full, pos);  // neg = -pos
    CHECK(agreed_digits(a.re, b.re) >= 38);
    CHECK(agreed_digits(a.im, b.im) >= 38);
    CHECK_THROWS_AS(weight_eval(WeightSpec::poly_exp({0, 1}, Domain::HalfLine), neg),
                    SectorViolation);
}

TEST_CASE("weight_eval: |sigma(r e^{i theta})| = c_theta sigma(s_theta r) for GammaBeta") {
    WeightSpec w = WeightSpec::gamma_beta(1, 1, 1, Domain::HalfLine);
    Angle th = Angle::radians(mpq_class(2, 5));
    ScaleParams sc = scale_constants(w, th, kP);
    HPReal ct = cos(th.value(kP)), st = sin(th.value(kP));
    for (double rd : {0.05, 0.3, 1.0, 2.5, 9.0}) {
        HPReal r = HPReal::of(rd, kP);
        HPComplex z(r * ct, r * st);
        HPReal lhs = abs(weight_eval(w, z));
        HPReal rhs = sc.c_theta * weight_eval_real(w, sc.s_theta * r);
        CHECK(agreed_digits(lhs, rhs) >= 20);
        // and the direct radial formula r^{1/2} e^{-r cos theta}
        HPReal direct = sqrt(r) * exp(-(r * ct));
        CHECK(agreed_digits(lhs, direct) >= 20);
    }
}

TEST_CASE("basic condition: equality for GammaBeta, inequality for PolyExp") {
    std::vector<double> grid;
    for (int i = 0; i <= 48; ++i) grid.push_back(std::pow(10.0, -3.0 + 6.0 * i / 48.0));

    WeightSpec gb = WeightSpec::gamma_beta(mpq_class(1, 2), 3, 2, Domain::HalfLine);
    auto rep = verify_basic_condition(gb, Angle::pi_multiple(mpq_class(1, 12)), grid, kP);
    CHECK(agreed_digits(rep.min_ratio, HPReal::one(kP)) >= 35);

    WeightSpec pe = WeightSpec::poly_exp({1, 0, 0, 1}, Domain::HalfLine);
    auto rep2 = verify_basic_condition(pe, Angle::pi_multiple(mpq_class(1, 16)), grid, kP);
    HPReal floor_v = HPReal::one(kP) - pow_si(HPReal::of(10L, kP), -35);
    CHECK(rep2.min_ratio >= floor_v);

    auto rep3 = verify_basic_condition(pe, Angle::zero(), grid, kP);
    CHECK(agreed_digits(rep3.min_ratio, HPReal::one(kP)) >= 38);
}

TEST_CASE("angle parsing") {
    CHECK(Angle::parse("0.1pi") == Angle::pi_multiple(mpq_class(1, 10)));
    CHECK(Angle::parse("pi/16") == Angle::pi_multiple(mpq_class(1, 16)));
    CHECK(Angle::parse("-pi/4") == Angle::pi_multiple(mpq_class(-1, 4)));
    CHECK(Angle::parse("0.19635") == Angle::radians(mpq_class(19635, 100000)));
    CHECK(Angle::parse("2*pi") == Angle::pi_multiple(2));
    CHECK_THROWS_AS(Angle::parse("zzz"), DomainError);
    CHECK_THROWS_AS(Angle::parse("pi/0"), DomainError);
    CHECK_THROWS_AS(Angle::parse(""), DomainError);

    // "0.19635" is close to but distinct from pi/16
    Angle a = Angle::parse("0.19635");
    CHECK(std::fabs(a.radians_approx() - 0.19634954084936207) < 1e-5);
    CHECK(abs_strictly_less(a, Angle::pi_multiple(mpq_class(1, 4))));
}
