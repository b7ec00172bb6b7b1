#include "specnorm/orthopoly.hpp"

#include <algorithm>
#include <cmath>

#include "specnorm/gamma.hpp"
#include "specnorm/quadrature.hpp"

namespace specnorm {

namespace {

mpz_class factorial(unsigned long n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

Parity domain_parity(int n) { return n % 2 == 0 ? Parity::Even : Parity::Odd; }

// (2 tau)^q as an HPReal for exact rational tau and q.
HPReal two_tau_pow(const mpq_class& tau, const mpq_class& q, long wp) {
    return pow_q(HPReal::of(mpq_class(2 * tau), wp), q);
}

PolyBasis hermite_scaled(int n, const mpq_class& tau, long prec) {
    const long wp = prec + 64;
    std::vector<mpz_class> core = hermite_core(n);
    // k_n = pi^{-1/4} (2^n n!)^{-1/2}
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), 2, static_cast<unsigned long>(n));
    HPReal kn = pow_q(pi(wp), mpq_class(-1, 4)) *
                sqrt(HPReal::of(mpq_class(1, pw * factorial(static_cast<unsigned long>(n))), wp));
    // sigma = e^{-tau x^2}: substitute u = sqrt(2 tau) x.
    HPReal root_scale = two_tau_pow(tau, mpq_class(1, 4), wp);

    std::vector<HPReal> coeffs;
    coeffs.reserve(static_cast<size_t>(n) + 1);
    for (int r = 0; r <= n; ++r) {
        if (core[static_cast<size_t>(r)] == 0) {
            coeffs.push_back(HPReal::zero(prec));
            continue;
        }
        HPReal a = mul_z(kn, core[static_cast<size_t>(r)]);
        a = a * root_scale * two_tau_pow(tau, mpq_class(r, 2), wp);
        coeffs.push_back(a.round_to(prec));
    }
    return PolyBasis{n, std::move(coeffs), domain_parity(n), prec};
}

PolyBasis laguerre_scaled(int n, const mpq_class& tau, long prec) {
    const long wp = prec + 64;
    std::vector<mpq_class> core = laguerre_core(n);
    HPReal root_scale = two_tau_pow(tau, mpq_class(1, 2), wp);
    mpq_class two_tau(2 * tau);
    std::vector<HPReal> coeffs;
    coeffs.reserve(static_cast<size_t>(n) + 1);
    mpq_class scale_r(1);
    for (int r = 0; r <= n; ++r) {
        mpq_class b = core[static_cast<size_t>(r)] * scale_r;
        coeffs.push_back((mul_q(root_scale, b)).round_to(prec));
        scale_r *= two_tau;
    }
    return PolyBasis{n, std::move(coeffs), Parity::None, prec};
}

// One residue-class chain of Gamma((k + gamma + 1)/beta) and
// (2 tau cos)^{-(k + gamma + 1)/beta} values for integer beta.
struct MomentChain {
    std::vector<HPReal> values;  // mu_k for k in this residue class, ascending
};

}  // namespace

std::vector<mpz_class> hermite_core(int n) {
    if (n < 0) throw DomainError("hermite_core: negative degree");
    std::vector<mpz_class> prev{1};  // H_0
    if (n == 0) return prev;
    std::vector<mpz_class> cur{0, 2};  // H_1
    for (int m = 1; m < n; ++m) {
        std::vector<mpz_class> next(static_cast<size_t>(m) + 2, mpz_class(0));
        // H_{m+1} = 2x H_m - 2m H_{m-1}
        for (size_t r = 0; r < cur.size(); ++r) next[r + 1] = 2 * cur[r];
        for (size_t r = 0; r < prev.size(); ++r) next[r] -= 2 * m * prev[r];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

std::vector<mpq_class> laguerre_core(int n) {
    if (n < 0) throw DomainError("laguerre_core: negative degree");
    std::vector<mpq_class> b;
    b.reserve(static_cast<size_t>(n) + 1);
    mpz_class nf = factorial(static_cast<unsigned long>(n));
    for (int r = 0; r <= n; ++r) {
        mpz_class rf = factorial(static_cast<unsigned long>(r));
        mpz_class nrf = factorial(static_cast<unsigned long>(n - r));
        mpq_class v(nf, rf * rf * nrf);
        v.canonicalize();
        if ((n - r) % 2 != 0) v = -v;
        b.push_back(v);
    }
    return b;
}

PolyBasis hermite_coeffs(int n, long prec) { return hermite_scaled(n, mpq_class(1, 2), prec); }

PolyBasis laguerre_coeffs(int n, long prec) { return laguerre_scaled(n, mpq_class(1, 2), prec); }

MomentTable moments_at(const WeightSpec& spec, int k_max, long prec) {
    if (k_max < 0) throw DomainError("moments_at: negative k_max");
    const long wp = prec + 32;
    std::vector<HPReal> mu;
    mu.reserve(static_cast<size_t>(k_max) + 1);

    const bool full = spec.domain() == Domain::FullLine;

    if (spec.family() == WeightSpec::Family::GammaBeta) {
        const mpq_class& beta = spec.beta();
        const mpq_class& gamma = spec.gamma();
        mpq_class two_tau(2 * spec.tau());
        HPReal inv_beta = HPReal::of(mpq_class(1) / beta, wp);

        if (beta.get_den() == 1 && beta.get_num().fits_slong_p()) {
            // Integer beta: Gamma arguments in one residue class differ by 1,
            // so the table builds by upward recursion from beta seeds.
            long b = beta.get_num().get_si();
            HPReal base_pow = pow_q(HPReal::of(two_tau, wp), mpq_class(-1));
            std::vector<HPReal> g_chain, p_chain;
            for (long m = 0; m < b && m <= k_max; ++m) {
                mpq_class a = (mpq_class(m) + gamma + 1) / beta;
                g_chain.push_back(gamma_rational(a, wp));
                p_chain.push_back(pow_q(HPReal::of(two_tau, wp), mpq_class(-a)));
            }
            std::vector<mpq_class> args;
            for (long m = 0; m < b && m <= k_max; ++m)
                args.push_back((mpq_class(m) + gamma + 1) / beta);
            for (long k = 0; k <= k_max; ++k) {
                long cls = k % b;
                if (k >= b) {
                    // advance the chain for this class
                    g_chain[static_cast<size_t>(cls)] =
                        g_chain[static_cast<size_t>(cls)] * HPReal::of(args[static_cast<size_t>(cls)], wp);
                    args[static_cast<size_t>(cls)] += 1;
                    p_chain[static_cast<size_t>(cls)] = p_chain[static_cast<size_t>(cls)] * base_pow;
                }
                HPReal half_line = inv_beta * p_chain[static_cast<size_t>(cls)] *
                                   g_chain[static_cast<size_t>(cls)];
                if (full) {
                    mu.push_back(k % 2 != 0 ? HPReal::zero(prec)
                                            : ldexp2(half_line, 1).round_to(prec));
                } else {
                    mu.push_back(half_line.round_to(prec));
                }
            }
        } else {
            for (long k = 0; k <= k_max; ++k) {
                if (full && k % 2 != 0) {
                    mu.push_back(HPReal::zero(prec));
                    continue;
                }
                mpq_class a = (mpq_class(k) + gamma + 1) / beta;
                HPReal half_line =
                    inv_beta * pow_q(HPReal::of(two_tau, wp), mpq_class(-a)) * gamma_rational(a, wp);
                mu.push_back(full ? ldexp2(half_line, 1).round_to(prec) : half_line.round_to(prec));
            }
        }
        return MomentTable{spec, std::move(mu), prec};
    }

    // PolyExp: quadrature against the squared weight.
    PrecisionPolicy qpol = PrecisionPolicy::with_target(bits_to_digits(prec) + 5);
    for (long k = 0; k <= k_max; ++k) {
        if (full && k % 2 != 0) {
            mu.push_back(HPReal::zero(prec));
            continue;
        }
        auto integrand = [&spec, k](const HPReal& x) {
            HPReal w2 = rotated_weight_sq(spec, Angle::zero(), x);
            return k == 0 ? w2 : pow_si(x, k) * w2;
        };
        CertifiedValue cv =
            tanh_sinh_integrate(integrand, IntegrationDomain::HalfLine, qpol);
        HPReal v = cv.value;
        if (full) v = ldexp2(v, 1);
        mu.push_back(v.round_to(prec));
    }
    return MomentTable{spec, std::move(mu), prec};
}

MomentTable moments(const WeightSpec& spec, int k_max, const PrecisionPolicy& policy) {
    policy.validate();
    return moments_at(spec, k_max, digits_to_bits(policy.target_digits + policy.guard_digits));
}

std::vector<PolyBasis> gram_polys_at(const MomentTable& table, int n_max) {
    if (n_max < 0) throw DomainError("gram_polys_at: negative n_max");
    if (table.k_max() < 2 * n_max)
        throw DomainError("gram_polys_at: moment table must cover k <= 2 n_max");
    const long p = table.prec_bits;
    const size_t n = static_cast<size_t>(n_max) + 1;

    // Cholesky of the Hankel matrix [mu_{i+j}].
    std::vector<std::vector<HPReal>> L(n);
    for (size_t i = 0; i < n; ++i) L[i].assign(i + 1, HPReal::zero(p));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j <= i; ++j) {
            HPReal acc = table.mu[i + j].round_to(p);
            for (size_t k = 0; k < j; ++k) acc = acc - L[i][k] * L[j][k];
            if (j < i) {
                L[i][j] = acc / L[j][j];
            } else {
                if (acc.sign() <= 0)
                    throw PrecisionLoss("gram_polys: Hankel pivot lost at row " + std::to_string(i));
                L[i][i] = sqrt(acc);
            }
        }
    }

    // Coefficient rows A = L^{-1}: p_i(x) = sum_j A[i][j] x^j.
    std::vector<std::vector<HPReal>> A(n);
    for (size_t i = 0; i < n; ++i) A[i].assign(i + 1, HPReal::zero(p));
    for (size_t i = 0; i < n; ++i) {
        A[i][i] = HPReal::one(p) / L[i][i];
        for (size_t j = 0; j < i; ++j) {
            HPReal acc = HPReal::zero(p);
            for (size_t k = j; k < i; ++k) acc = acc - L[i][k] * A[k][j];
            A[i][j] = acc / L[i][i];
        }
    }

    bool parity_table = true;
    for (size_t k = 1; k < table.mu.size(); k += 2)
        if (!table.mu[k].is_zero()) parity_table = false;

    std::vector<PolyBasis> out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        out.push_back(PolyBasis{static_cast<int>(i), std::move(A[i]),
                                parity_table ? domain_parity(static_cast<int>(i)) : Parity::None,
                                p});
    }
    return out;
}

namespace {

long bases_agreement(const std::vector<PolyBasis>& a, const std::vector<PolyBasis>& b) {
    long agreed = bits_to_digits(std::min(a[0].prec_bits, b[0].prec_bits));
    for (size_t i = 0; i < a.size(); ++i) {
        // Coefficients far below the row scale carry no information.
        HPReal scale = HPReal::zero(b[i].prec_bits);
        for (const auto& c : b[i].coeffs) {
            HPReal m = abs(c);
            if (m > scale) scale = m;
        }
        long floor_exp = scale.is_zero() ? 0 : scale.exponent2() - std::min(a[i].prec_bits, b[i].prec_bits) / 2;
        for (size_t j = 0; j < a[i].coeffs.size(); ++j) {
            const HPReal& x = a[i].coeffs[j];
            const HPReal& y = b[i].coeffs[j];
            if (x == y) continue;
            if ((x.is_zero() || x.exponent2() < floor_exp) &&
                (y.is_zero() || y.exponent2() < floor_exp))
                continue;
            agreed = std::min(agreed, agreed_digits(x, y));
        }
    }
    return agreed;
}

}  // namespace

std::vector<PolyBasis> gram_polys(const MomentTable& table, int n_max,
                                  const PrecisionPolicy& policy) {
    policy.validate();
    long d = std::max(policy.target_digits + policy.guard_digits,
                      policy.target_digits + policy.guard_digits + 2L * n_max);
    d = std::min(d, policy.max_digits);
    long best = -1;

    while (true) {
        long p = digits_to_bits(d);
        long p2 = 2 * p;
        bool lost = false;
        std::vector<PolyBasis> lo, hi;
        try {
            if (table.weight) {
                lo = gram_polys_at(moments_at(*table.weight, 2 * n_max, p), n_max);
                hi = gram_polys_at(moments_at(*table.weight, 2 * n_max, p2), n_max);
            } else {
                if (p >= table.prec_bits)
                    throw PrecisionBudgetError(
                        "gram_polys: raw moment table precision exhausted", std::max(best, 0L), d);
                MomentTable tlo{std::nullopt, {}, p};
                for (const auto& m : table.mu) tlo.mu.push_back(m.round_to(p));
                MomentTable thi{std::nullopt, {}, std::min(p2, table.prec_bits)};
                for (const auto& m : table.mu) thi.mu.push_back(m.round_to(thi.prec_bits));
                lo = gram_polys_at(tlo, n_max);
                hi = gram_polys_at(thi, n_max);
            }
        } catch (const PrecisionLoss&) {
            lost = true;
        }

        if (!lost) {
            long agreed = bases_agreement(lo, hi);
            if (agreed >= policy.target_digits) return hi;
            best = std::max(best, agreed);
        }
        if (d >= policy.max_digits)
            throw PrecisionBudgetError("gram_polys: agreement stalled at " +
                                           std::to_string(std::max(best, 0L)) + " digits",
                                       std::max(best, 0L), d);
        d = std::min(d * policy.escalation_factor, policy.max_digits);
    }
}

PolyBasis basis_for(const WeightSpec& spec, int n, long prec) {
    if (spec.is_classical_hermite()) return hermite_scaled(n, spec.tau(), prec);
    if (spec.is_classical_laguerre()) return laguerre_scaled(n, spec.tau(), prec);
    MomentTable table = moments_at(spec, 2 * n, prec);
    std::vector<PolyBasis> ladder = gram_polys_at(table, n);
    return std::move(ladder.back());
}

HPReal orthonormality_residual(const std::vector<PolyBasis>& bases, const MomentTable& table) {
    if (bases.empty()) throw DomainError("orthonormality_residual: no bases");
    long p = table.prec_bits;
    for (const auto& b : bases) p = std::min(p, b.prec_bits);
    int need = 0;
    for (const auto& b : bases) need = std::max(need, 2 * b.degree);
    if (table.k_max() < need)
        throw DomainError("orthonormality_residual: moment table too short");

    HPReal worst = HPReal::zero(p);
    for (size_t i = 0; i < bases.size(); ++i) {
        for (size_t j = i; j < bases.size(); ++j) {
            SumTracker acc(p);
            for (size_t r = 0; r < bases[i].coeffs.size(); ++r) {
                if (bases[i].coeffs[r].is_zero()) continue;
                for (size_t s = 0; s < bases[j].coeffs.size(); ++s) {
                    if (bases[j].coeffs[s].is_zero()) continue;
                    acc.add(bases[i].coeffs[r] * bases[j].coeffs[s] * table.mu[r + s]);
                }
            }
            HPReal inner = std::move(acc).take().value;
            HPReal dev = abs(i == j ? inner - 1 : inner);
            if (dev > worst) worst = dev;
        }
    }
    return worst;
}

}  // namespace specnorm
