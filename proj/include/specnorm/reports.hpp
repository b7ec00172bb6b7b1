#pragma once

#include <string>
#include <vector>

#include "specnorm/asymptotics.hpp"
#include "specnorm/projnorm.hpp"

namespace specnorm {

/// One row of the sigma_n summary table: analytic columns sec 2 theta,
/// 4 sec 2 theta and mu(theta) = exp(tan 2 theta) around the computed ratio.
struct Table1Row {
    mpq_class theta_over_pi;
    HPReal sec_2theta;
    HPReal sigma_n;
    HPReal four_sec_2theta;
    HPReal mu;
    long certified_digits;
};

std::vector<Table1Row> table1_rows(int n, const std::vector<mpq_class>& theta_over_pi,
                                   const PrecisionPolicy& policy, bool parallel = true);

std::string table1_csv(const std::vector<Table1Row>& rows, long digits);

/// Norms with bounds over the index grid stride, 2*stride, ..., n_max
/// (starting at 0 when include_zero is set).
std::vector<NormResult> bounds_sweep(const WeightSpec& spec, const Angle& theta, int n_max,
                                     int stride, const PrecisionPolicy& policy,
                                     bool parallel = true, bool include_zero = true);

std::string bounds_csv(const std::vector<NormResult>& rows, long digits);

/// Fixed-format double rendering (for cancellation telemetry columns).
std::string fmt_double(double v);

/// "true"/"false"; optional variant renders "na" when absent.
std::string bool_str(bool v);
std::string opt_bool_str(const std::optional<bool>& v);

}  // namespace specnorm
