#include "specnorm/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "specnorm/sweep.hpp"

namespace specnorm {

namespace {

constexpr double kSlopeDeadband = 1e-6;

// Solve the 3x3 normal equations by Gaussian elimination with partial
// pivoting.  Diagnostic precision only; the fit is not a certified quantity.
std::vector<HPReal> solve3(std::vector<std::vector<HPReal>> A, std::vector<HPReal> b) {
    const size_t n = b.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < n; ++r)
            if (abs(A[r][col]) > abs(A[piv][col])) piv = r;
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        if (A[col][col].is_zero()) throw PrecisionLoss("solve3: singular normal equations");
        for (size_t r = col + 1; r < n; ++r) {
            HPReal f = A[r][col] / A[col][col];
            for (size_t c = col; c < n; ++c) A[r][c] = A[r][c] - f * A[col][c];
            b[r] = b[r] - f * b[col];
        }
    }
    std::vector<HPReal> x(n, HPReal::zero(b[0].prec()));
    for (size_t r = n; r-- > 0;) {
        HPReal acc = b[r];
        for (size_t c = r + 1; c < n; ++c) acc = acc - A[r][c] * x[c];
        x[r] = acc / A[r][r];
    }
    return x;
}

// Least squares of y ~ s*n + (c/2) log n + d over the given points; returns s.
HPReal fit_growth_exponent(const std::vector<std::pair<long, HPReal>>& pts, long prec) {
    if (pts.size() < 3) {
        // Not enough points for the 3-parameter model: fall back to the last
        // per-index exponent.
        if (pts.empty()) return HPReal::zero(prec);
        const auto& [n, y] = pts.back();
        return n > 0 ? y / n : HPReal::zero(prec);
    }
    std::vector<std::vector<HPReal>> ata(3, std::vector<HPReal>(3, HPReal::zero(prec)));
    std::vector<HPReal> atb(3, HPReal::zero(prec));
    for (const auto& [n, y] : pts) {
        HPReal row[3] = {HPReal::of(n, prec), ldexp2(log(HPReal::of(n, prec)), -1),
                         HPReal::one(prec)};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) ata[i][j] = ata[i][j] + row[i] * row[j];
            atb[i] = atb[i] + row[i] * y;
        }
    }
    return solve3(std::move(ata), std::move(atb))[0];
}

// Slope of y against n by ordinary least squares; two or more points.
double fit_slope(const std::vector<std::pair<long, HPReal>>& pts, long prec) {
    if (pts.size() < 2) return 0.0;
    HPReal sx = HPReal::zero(prec), sy = HPReal::zero(prec), sxx = HPReal::zero(prec),
           sxy = HPReal::zero(prec);
    for (const auto& [n, y] : pts) {
        HPReal x = HPReal::of(n, prec);
        sx = sx + x;
        sy = sy + y;
        sxx = sxx + x * x;
        sxy = sxy + x * y;
    }
    long m = static_cast<long>(pts.size());
    HPReal num = sxy * m - sx * sy;
    HPReal den = sxx * m - sx * sx;
    return (num / den).to_double();
}

void require_hermite_sector(const Angle& theta) {
    if (!abs_strictly_less(theta, Angle::pi_multiple(mpq_class(1, 4))))
        throw SectorViolation("|theta| must be < pi/4 for the oscillator family");
}

}  // namespace

HPReal sigma_ratio(const WeightSpec& spec, int n, const Angle& theta,
                   const PrecisionPolicy& policy) {
    if (n < 2) throw DomainError("sigma_ratio: needs n >= 2");
    NormResult hi = projection_norm(spec, n, theta, policy);
    NormResult lo = projection_norm(spec, n - 2, theta, policy);
    return sqrt(hi.norm.value / lo.norm.value);
}

GrowthReport growth_report(const WeightSpec& spec, const Angle& theta, int n_max, int stride,
                           const PrecisionPolicy& policy, bool parallel) {
    policy.validate();
    if (stride < 1) throw DomainError("growth_report: stride must be positive");
    if (n_max < stride) throw DomainError("growth_report: n_max below first grid point");

    std::vector<int> grid;
    for (int n = stride; n <= n_max; n += stride) grid.push_back(n);

    std::vector<NormResult> norms = sweep::map_indexed<NormResult>(
        static_cast<int>(grid.size()),
        [&](int i) { return projection_norm(spec, grid[static_cast<size_t>(i)], theta, policy); },
        parallel);

    // sigma needs the same-parity predecessor; with stride 2 it is the grid
    // neighbour, otherwise computed on demand.
    std::vector<std::optional<HPReal>> sigmas(grid.size());
    if (stride == 2) {
        for (size_t i = 1; i < grid.size(); ++i)
            sigmas[i] = sqrt(norms[i].norm.value / norms[i - 1].norm.value);
    } else {
        for (size_t i = 0; i < grid.size(); ++i) {
            if (grid[i] >= 2) {
                NormResult prev = projection_norm(spec, grid[i] - 2, theta, policy);
                sigmas[i] = sqrt(norms[i].norm.value / prev.norm.value);
            }
        }
    }

    const long rp = digits_to_bits(policy.target_digits + policy.guard_digits);
    std::vector<GrowthEntry> entries;
    std::vector<std::pair<long, HPReal>> fit_pts;
    entries.reserve(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        std::optional<HPReal> expn;
        if (grid[i] > 0) expn = log(norms[i].norm.value).round_to(rp) / grid[i];
        entries.push_back(
            GrowthEntry{grid[i], norms[i].norm, expn, sigmas[i]});
    }
    for (size_t i = grid.size() / 2; i < grid.size(); ++i)
        if (entries[i].exponent)
            fit_pts.emplace_back(grid[i], log(norms[i].norm.value).round_to(rp));

    ScaleParams sc = scale_constants(spec, theta, rp);
    HPReal s_lower = ldexp2(-log(sc.s_theta), 1);
    std::optional<HPReal> s_upper;
    if (spec.is_classical_hermite()) {
        HPReal sec2t = HPReal::one(rp) / cos(theta.scaled(2).value(rp));
        s_upper = log(ldexp2(sec2t, 2));
    }
    HPReal s_est = fit_growth_exponent(fit_pts, rp);
    return GrowthReport{theta, std::move(entries), std::move(s_lower), std::move(s_upper),
                        std::move(s_est), rp};
}

TzBracket tz_bracket(const Angle& theta, long prec) {
    if (theta.is_zero()) return TzBracket{HPReal::zero(prec), HPReal::zero(prec)};
    require_hermite_sector(theta);
    const long wp = prec + 32;
    HPReal cos2t = cos(theta.scaled(2).value(wp));
    HPReal sec2t = HPReal::one(wp) / cos2t;
    HPReal denom = ldexp2(cos2t, 1);
    HPReal lo = log(sec2t) / denom;
    HPReal hi = log(ldexp2(sec2t, 2)) / denom;
    return TzBracket{lo.round_to(prec), hi.round_to(prec)};
}

ExpansionReport expansion_terms(const Angle& theta, const mpq_class& t, int n_max,
                                const PrecisionPolicy& policy, bool parallel) {
    policy.validate();
    if (t < 0) throw DomainError("expansion_terms: t must be >= 0");
    require_hermite_sector(theta);

    WeightSpec spec = WeightSpec::hermite();
    std::vector<int> grid;
    for (int n = 0; n <= n_max; n += 2) grid.push_back(n);

    std::vector<HPReal> terms = sweep::map_indexed<HPReal>(
        static_cast<int>(grid.size()),
        [&](int i) {
            int n = grid[static_cast<size_t>(i)];
            NormResult nr = projection_norm(spec, n, theta, policy);
            const long p = nr.norm.value.prec();
            HPReal cos2t = cos(theta.scaled(2).value(p));
            HPReal expo = mul_q(cos2t * (-(2L * n + 1)), t);
            return exp(expo) * nr.norm.value;
        },
        parallel);

    const long rp = digits_to_bits(policy.target_digits + policy.guard_digits);
    std::vector<ExpansionEntry> entries;
    entries.reserve(grid.size());
    for (size_t i = 0; i < grid.size(); ++i)
        entries.push_back(ExpansionEntry{grid[i], terms[i].round_to(rp)});

    std::vector<std::pair<long, HPReal>> tail;
    size_t start = grid.size() - std::max<size_t>(grid.size() / 4, std::min<size_t>(grid.size(), 3));
    for (size_t i = start; i < grid.size(); ++i)
        tail.emplace_back(grid[i], log(entries[i].term));
    double slope = fit_slope(tail, rp);

    Verdict verdict = Verdict::Indeterminate;
    if (slope > kSlopeDeadband) verdict = Verdict::Divergent;
    if (slope < -kSlopeDeadband) verdict = Verdict::Convergent;

    return ExpansionReport{theta,   t, std::move(entries), verdict, tz_bracket(theta, rp),
                           slope};
}

HPReal semiclassical_mu(const Angle& theta, long prec) {
    require_hermite_sector(theta);
    const long wp = prec + 32;
    return exp(tan(theta.scaled(2).value(wp))).round_to(prec);
}

SemiclassicalParams semiclassical_params(const Angle& theta, int n, long prec) {
    require_hermite_sector(theta);
    if (n < 1) throw DomainError("semiclassical_params: n must be >= 1");
    const long wp = prec + 32;
    HPReal cos2t = cos(theta.scaled(2).value(wp));
    HPReal eta = sqrt(HPReal::of(n, wp) / cos2t);
    HPComplex psi1(HPReal::zero(wp), eta);
    HPReal cos4t = cos(theta.scaled(4).value(wp));
    HPReal sin4t = sin(theta.scaled(4).value(wp));
    HPComplex psi2(sin4t, -cos4t);  // -i e^{4 i theta}
    HPComplex lambda(HPReal::one(wp) + cos4t, sin4t);
    lambda = lambda * (eta * eta);
    return SemiclassicalParams{theta, n, eta, eta, psi1, psi2, lambda};
}

HPReal gaussian_ratio(const HPComplex& psi1, const HPComplex& psi2) {
    if (psi2.re.sign() <= 0)
        throw DomainError("gaussian_ratio: Re(psi2) <= 0 makes the numerator diverge");
    HPReal mod2 = abs(psi2);
    HPReal pref = sqrt(mod2 / psi2.re);
    HPReal re1 = psi1.re;
    HPComplex ratio = (psi1 * psi1) / psi2;
    HPReal expo = re1 * re1 / psi2.re - ratio.re;
    return pref * exp(expo);
}

}  // namespace specnorm
