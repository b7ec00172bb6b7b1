#include "specnorm/weights.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "specnorm/errors.hpp"

namespace specnorm {

namespace {

bool is_even_positive_integer(const mpq_class& q) {
    if (q.get_den() != 1) return false;
    mpz_class n = q.get_num();
    return n > 0 && mpz_even_p(n.get_mpz_t());
}

void require_in_sector(const WeightSpec& spec, const Angle& theta) {
    if (!abs_strictly_less(theta, spec.sector()))
        throw SectorViolation("theta = " + theta.describe() + " outside the sector |theta| < " +
                              spec.sector().describe() + " of " + spec.describe());
}

// sup over r > 0 of g(r) = sum_j d_j r^j, where the leading d_n < 0 and
// g(0) = 0.  Sign-change bisection on g'; the r -> 0 limit contributes 0.
HPReal positive_poly_sup(const std::vector<HPReal>& d, long wp) {
    const long n = static_cast<long>(d.size());  // d[0] is the r^1 coefficient
    bool any_positive = false;
    for (const auto& c : d)
        if (c.sign() > 0) any_positive = true;
    HPReal zero = HPReal::zero(wp);
    if (!any_positive) return zero;

    auto eval = [&](const std::vector<HPReal>& coeff, const HPReal& r) {
        HPReal acc = HPReal::zero(wp);
        for (long j = static_cast<long>(coeff.size()) - 1; j >= 0; --j)
            acc = acc * r + coeff[static_cast<size_t>(j)];
        return acc * r;  // no constant term: polynomials here vanish at 0
    };

    // g'(r)/1 has coefficients e_j = (j+1) d_{j+1} for r^j, j = 0..n-1.
    std::vector<HPReal> e;
    e.reserve(static_cast<size_t>(n));
    for (long j = 1; j <= n; ++j) e.push_back(d[static_cast<size_t>(j - 1)] * j);
    auto dg = [&](const HPReal& r) {
        HPReal acc = HPReal::zero(wp);
        for (long j = n - 1; j >= 0; --j) acc = acc * r + e[static_cast<size_t>(j)];
        return acc;
    };

    // Cauchy bound for the positive roots of g'.
    HPReal lead = abs(e.back());
    HPReal ratio_max = HPReal::zero(wp);
    for (long j = 0; j + 1 < n; ++j) {
        HPReal q = abs(e[static_cast<size_t>(j)]) / lead;
        if (q > ratio_max) ratio_max = q;
    }
    HPReal radius = ratio_max + 1;

    const long grid = std::max<long>(512, 64 * n);
    HPReal best = zero;
    HPReal prev_r = HPReal::zero(wp);
    HPReal prev_s = dg(prev_r);
    for (long i = 1; i <= grid; ++i) {
        HPReal r = radius * i / grid;
        HPReal s = dg(r);
        if ((prev_s.sign() > 0 && s.sign() <= 0) || (prev_s.sign() < 0 && s.sign() >= 0) ||
            prev_s.sign() == 0) {
            HPReal a = prev_r, b = r;
            HPReal fa = prev_s;
            for (long it = 0; it < wp + 16; ++it) {
                HPReal mid = ldexp2(a + b, -1);
                HPReal fm = dg(mid);
                if (fm.sign() == 0) {
                    a = mid;
                    b = mid;
                    break;
                }
                if ((fa.sign() > 0) == (fm.sign() > 0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            HPReal root = ldexp2(a + b, -1);
            HPReal val = eval(d, root);
            if (val > best) best = val;
        }
        prev_r = r;
        prev_s = s;
    }
    return best;
}

}  // namespace

WeightSpec WeightSpec::gamma_beta(const mpq_class& gamma, const mpq_class& beta,
                                  const mpq_class& tau, Domain domain) {
    if (gamma <= -1) throw DomainError("GammaBeta weight requires gamma > -1");
    if (beta <= 0) throw DomainError("GammaBeta weight requires beta > 0");
    if (tau <= 0) throw DomainError("GammaBeta weight requires tau > 0");
    if (domain == Domain::FullLine) {
        // Even symmetry is needed for the moments to exist on the whole line.
        if (!(gamma == 0) || !is_even_positive_integer(beta))
            throw DomainError("full-line GammaBeta weight requires gamma = 0 and even integer beta");
    }
    WeightSpec w;
    w.family_ = Family::GammaBeta;
    w.domain_ = domain;
    w.gamma_ = gamma;
    w.beta_ = beta;
    w.tau_ = tau;
    w.gamma_.canonicalize();
    w.beta_.canonicalize();
    w.tau_.canonicalize();
    return w;
}

WeightSpec WeightSpec::poly_exp(std::vector<mpq_class> coeffs, Domain domain) {
    if (coeffs.empty()) throw DomainError("PolyExp weight needs at least one coefficient");
    if (coeffs.back() <= 0) throw DomainError("PolyExp weight requires a positive leading coefficient");
    if (domain == Domain::FullLine && coeffs.size() % 2 != 0)
        throw DomainError("full-line PolyExp weight requires an even leading index");
    WeightSpec w;
    w.family_ = Family::PolyExp;
    w.domain_ = domain;
    for (auto& c : coeffs) c.canonicalize();
    w.coeffs_ = std::move(coeffs);
    return w;
}

Angle WeightSpec::sector() const {
    if (family_ == Family::GammaBeta) return Angle::pi_multiple(mpq_class(1) / (2 * beta_));
    return Angle::pi_multiple(mpq_class(1, 2 * poly_degree()));
}

std::string WeightSpec::describe() const {
    std::ostringstream os;
    if (family_ == Family::GammaBeta) {
        os << "gammabeta(gamma=" << gamma_.get_str() << ", beta=" << beta_.get_str()
           << ", tau=" << tau_.get_str() << ")";
    } else {
        os << "polyexp(";
        for (size_t i = 0; i < coeffs_.size(); ++i) {
            if (i) os << ",";
            os << coeffs_[i].get_str();
        }
        os << ")";
    }
    os << (domain_ == Domain::FullLine ? " on R" : " on (0,inf)");
    return os.str();
}

ScaleParams scale_constants(const WeightSpec& spec, const Angle& theta, long prec) {
    require_in_sector(spec, theta);
    const long wp = prec + 32;

    if (theta.is_zero()) {
        return ScaleParams{theta, HPReal::one(prec), HPReal::one(prec), HPReal::zero(prec), prec};
    }

    if (spec.family() == WeightSpec::Family::GammaBeta) {
        HPReal cosv = cos(theta.scaled(spec.beta()).value(wp));
        HPReal s = pow_q(cosv, mpq_class(1) / spec.beta());
        HPReal c = pow_q(s, mpq_class(-spec.gamma() / 2));
        return ScaleParams{theta, s.round_to(prec), c.round_to(prec), HPReal::zero(prec), prec};
    }

    const long n = spec.poly_degree();
    HPReal cos_n = cos(theta.scaled(n).value(wp));
    HPReal s = pow_q(ldexp2(cos_n + 1, -1), mpq_class(1, n));

    std::vector<HPReal> d;
    d.reserve(static_cast<size_t>(n));
    for (long j = 1; j <= n; ++j) {
        HPReal cj = cos(theta.scaled(j).value(wp));
        HPReal diff = cj - pow_si(s, j);
        d.push_back(mul_q(diff, spec.coeffs()[static_cast<size_t>(j - 1)]));
    }
    HPReal k = positive_poly_sup(d, wp);
    HPReal c = exp(-k);
    return ScaleParams{theta, s.round_to(prec), c.round_to(prec), k.round_to(prec), prec};
}

HPReal weight_eval_real(const WeightSpec& spec, const HPReal& r) {
    const long wp = r.prec();
    if (r.sign() < 0) throw DomainError("weight_eval_real: negative argument");
    if (spec.family() == WeightSpec::Family::GammaBeta) {
        if (r.is_zero()) {
            if (spec.gamma() < 0) throw DomainError("weight has a pole at 0");
            if (spec.gamma() > 0) return HPReal::zero(wp);
            return HPReal::one(wp);
        }
        HPReal power = pow_q(r, spec.gamma() / 2);
        HPReal decay = exp(-mul_q(pow_q(r, spec.beta()), spec.tau()));
        return power * decay;
    }
    HPReal acc = HPReal::zero(wp);
    const auto& c = spec.coeffs();
    for (long j = static_cast<long>(c.size()); j >= 1; --j) {
        acc = acc * r;
        acc = acc + HPReal::of(c[static_cast<size_t>(j - 1)], wp);
        if (j == 1) acc = acc * r;
    }
    return exp(-acc);
}

HPComplex weight_eval(const WeightSpec& spec, const HPComplex& z) {
    const long wp = z.prec();
    if (z.is_zero()) return HPComplex::from_real(weight_eval_real(spec, HPReal::zero(wp)));

    HPComplex w = z;
    HPReal a = abs(arg(w));
    HPReal sector_v = spec.sector().value(wp);
    if (!(a < sector_v)) {
        bool salvaged = false;
        if (spec.domain() == Domain::FullLine) {
            HPComplex neg = -w;
            if (abs(arg(neg)) < sector_v) {  // evenness: sigma(-z) = sigma(z)
                w = neg;
                salvaged = true;
            }
        }
        if (!salvaged)
            throw SectorViolation("weight_eval: point outside the analyticity sector of " +
                                  spec.describe());
    }

    if (spec.family() == WeightSpec::Family::GammaBeta) {
        HPComplex lw = log(w);
        HPComplex power = exp(lw * HPReal::of(spec.gamma() / 2, wp));
        HPComplex zbeta = exp(lw * HPReal::of(spec.beta(), wp));
        HPComplex decay = exp(-(zbeta * HPReal::of(spec.tau(), wp)));
        return power * decay;
    }
    HPComplex acc(wp);
    const auto& c = spec.coeffs();
    for (long j = static_cast<long>(c.size()); j >= 1; --j) {
        acc = acc * w;
        acc = acc + HPComplex::from_real(HPReal::of(c[static_cast<size_t>(j - 1)], wp));
        if (j == 1) acc = acc * w;
    }
    return exp(-acc);
}

HPReal rotated_weight_sq(const WeightSpec& spec, const Angle& theta, const HPReal& x) {
    require_in_sector(spec, theta);
    const long wp = x.prec();
    if (spec.family() == WeightSpec::Family::GammaBeta) {
        HPReal cosv = cos(theta.scaled(spec.beta()).value(wp));
        HPReal decay = exp(mul_q(pow_q(x, spec.beta()) * cosv, -2 * spec.tau()));
        if (spec.gamma() == 0) return decay;
        return pow_q(x, spec.gamma()) * decay;
    }
    HPReal acc = HPReal::zero(wp);
    const auto& c = spec.coeffs();
    for (long j = static_cast<long>(c.size()); j >= 1; --j) {
        acc = acc * x;
        HPReal cj = cos(theta.scaled(j).value(wp));
        acc = acc + mul_q(cj, c[static_cast<size_t>(j - 1)]);
        if (j == 1) acc = acc * x;
    }
    return exp(-ldexp2(acc, 1));
}

namespace {

// log sigma(r), r > 0 real.
HPReal log_weight_real(const WeightSpec& spec, const HPReal& r) {
    const long wp = r.prec();
    if (spec.family() == WeightSpec::Family::GammaBeta) {
        HPReal v = -mul_q(pow_q(r, spec.beta()), spec.tau());
        if (spec.gamma() != 0) v = v + mul_q(log(r), spec.gamma() / 2);
        return v;
    }
    HPReal acc = HPReal::zero(wp);
    const auto& c = spec.coeffs();
    for (long j = static_cast<long>(c.size()); j >= 1; --j) {
        acc = acc * r;
        acc = acc + HPReal::of(c[static_cast<size_t>(j - 1)], wp);
        if (j == 1) acc = acc * r;
    }
    return -acc;
}

// log |sigma(e^{i theta} r)|.
HPReal log_rotated_weight(const WeightSpec& spec, const Angle& theta, const HPReal& r) {
    const long wp = r.prec();
    if (spec.family() == WeightSpec::Family::GammaBeta) {
        HPReal cosv = cos(theta.scaled(spec.beta()).value(wp));
        HPReal v = -mul_q(pow_q(r, spec.beta()) * cosv, spec.tau());
        if (spec.gamma() != 0) v = v + mul_q(log(r), spec.gamma() / 2);
        return v;
    }
    HPReal acc = HPReal::zero(wp);
    const auto& c = spec.coeffs();
    for (long j = static_cast<long>(c.size()); j >= 1; --j) {
        acc = acc * r;
        acc = acc + mul_q(cos(theta.scaled(j).value(wp)), c[static_cast<size_t>(j - 1)]);
        if (j == 1) acc = acc * r;
    }
    return -acc;
}

}  // namespace

BasicConditionReport verify_basic_condition(const WeightSpec& spec, const Angle& theta,
                                            const std::vector<double>& r_grid, long prec) {
    require_in_sector(spec, theta);
    const long wp = prec + 32;
    ScaleParams sc = scale_constants(spec, theta, wp);

    // The ratio is exp(log num - log den): the decay exponents reach r^beta
    // scales that underflow any fixed floating range, so everything stays in
    // log space until the final exp.
    HPReal min_log(wp);
    double argmin = r_grid.empty() ? 0.0 : r_grid.front();
    bool first = true;
    for (double rd : r_grid) {
        if (rd <= 0) throw DomainError("verify_basic_condition: grid radii must be positive");
        HPReal r = HPReal::of(rd, wp);
        HPReal log_num = log_rotated_weight(spec, theta, r);
        HPReal log_den = log(sc.c_theta) + log_weight_real(spec, sc.s_theta * r);
        HPReal diff = log_num - log_den;
        if (first || diff < min_log) {
            min_log = diff;
            argmin = rd;
            first = false;
        }
    }
    HPReal min_ratio = first ? HPReal::one(wp) : exp(min_log);
    return BasicConditionReport{min_ratio.round_to(prec), argmin, prec};
}

}  // namespace specnorm
