#include "specnorm/reports.hpp"

#include <cstdio>
#include <sstream>

#include "specnorm/sweep.hpp"

namespace specnorm {

std::vector<Table1Row> table1_rows(int n, const std::vector<mpq_class>& theta_over_pi,
                                   const PrecisionPolicy& policy, bool parallel) {
    policy.validate();
    WeightSpec spec = WeightSpec::hermite();
    const long rp = digits_to_bits(policy.target_digits + policy.guard_digits);

    return sweep::map_indexed<Table1Row>(
        static_cast<int>(theta_over_pi.size()),
        [&](int i) {
            Angle theta = Angle::pi_multiple(theta_over_pi[static_cast<size_t>(i)]);
            NormResult hi = projection_norm(spec, n, theta, policy);
            NormResult lo = projection_norm(spec, n - 2, theta, policy);
            HPReal sigma = sqrt(hi.norm.value / lo.norm.value).round_to(rp);
            long certified = std::min(hi.norm.certified_digits, lo.norm.certified_digits);
            HPReal sec2t = (HPReal::one(rp + 32) / cos(theta.scaled(2).value(rp + 32))).round_to(rp);
            return Table1Row{theta_over_pi[static_cast<size_t>(i)],
                             sec2t,
                             sigma,
                             ldexp2(sec2t, 2),
                             semiclassical_mu(theta, rp),
                             certified};
        },
        parallel);
}

std::string table1_csv(const std::vector<Table1Row>& rows, long digits) {
    std::ostringstream os;
    os << "theta_over_pi,sec_2theta,sigma_n,four_sec_2theta,mu,certified_digits\n";
    for (const auto& r : rows) {
        os << r.theta_over_pi.get_str() << "," << to_string(r.sec_2theta, digits) << ","
           << to_string(r.sigma_n, digits) << "," << to_string(r.four_sec_2theta, digits) << ","
           << to_string(r.mu, digits) << "," << r.certified_digits << "\n";
    }
    return os.str();
}

std::vector<NormResult> bounds_sweep(const WeightSpec& spec, const Angle& theta, int n_max,
                                     int stride, const PrecisionPolicy& policy, bool parallel,
                                     bool include_zero) {
    policy.validate();
    if (stride < 1) throw DomainError("bounds_sweep: stride must be positive");
    std::vector<int> grid;
    for (int n = include_zero ? 0 : stride; n <= n_max; n += stride) grid.push_back(n);
    return sweep::map_indexed<NormResult>(
        static_cast<int>(grid.size()),
        [&](int i) { return projection_norm(spec, grid[static_cast<size_t>(i)], theta, policy); },
        parallel);
}

std::string bounds_csv(const std::vector<NormResult>& rows, long digits) {
    std::ostringstream os;
    os << "n,theta_rad,N,lower,upper,lower_ok,upper_ok,certified_digits,cancellation_log10\n";
    for (const auto& r : rows) {
        os << r.n << "," << to_string(r.theta.value(digits_to_bits(digits + 5)), digits) << ","
           << to_string(r.norm.value, digits) << "," << to_string(r.lower, digits) << ",";
        os << (r.upper ? to_string(*r.upper, digits) : std::string()) << ","
           << bool_str(r.lower_ok) << "," << opt_bool_str(r.upper_ok) << ","
           << r.norm.certified_digits << "," << fmt_double(r.norm.cancellation_magnitude)
           << "\n";
    }
    return os.str();
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    std::string s(buf);
    for (auto& c : s)
        if (c == ',') c = '.';
    return s;
}

std::string bool_str(bool v) { return v ? "true" : "false"; }

std::string opt_bool_str(const std::optional<bool>& v) { return v ? bool_str(*v) : "na"; }

}  // namespace specnorm
