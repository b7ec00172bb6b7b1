#pragma once

#include <gmpxx.h>

#include <string>

#include "specnorm/hpreal.hpp"

namespace specnorm {

/// An angle kept in exact form: either a rational number of radians or a
/// rational multiple of pi.  Exactness matters because certification
/// re-evaluates everything at several working precisions and each evaluation
/// must start from the same mathematical angle.
class Angle {
  public:
    Angle() : coef_(0), times_pi_(true) {}

    static Angle radians(const mpq_class& q) { return Angle(q, false); }
    static Angle pi_multiple(const mpq_class& q) { return Angle(q, true); }
    static Angle zero() { return Angle(); }

    /// Accepts "0.19635" (radians), "0.1pi" / "-0.25pi" (pi multiples) and
    /// "pi/16" / "-pi/3" (pi fractions).  Throws DomainError otherwise.
    static Angle parse(const std::string& text);

    /// Exact decimal string -> rational ("0.125" -> 1/8).
    static mpq_class decimal_to_mpq(const std::string& text);

    HPReal value(long prec) const {
        if (!times_pi_) return HPReal::of(coef_, prec);
        if (coef_ == 0) return HPReal::zero(prec);
        HPReal wide = mul_q(pi(prec + 32), coef_);
        return wide.round_to(prec);
    }

    bool is_zero() const { return coef_ == 0; }
    bool is_pi_multiple() const { return times_pi_; }
    const mpq_class& coefficient() const { return coef_; }

    Angle abs() const { return Angle(::abs(coef_), times_pi_); }
    Angle negated() const { return Angle(mpq_class(-coef_), times_pi_); }
    /// Exact scaling (used for beta*theta, k*theta, ...).
    Angle scaled(const mpq_class& f) const { return Angle(mpq_class(coef_ * f), times_pi_); }

    double radians_approx() const {
        double c = coef_.get_d();
        return times_pi_ ? c * 3.14159265358979323846 : c;
    }
    double pi_units_approx() const {
        double c = coef_.get_d();
        return times_pi_ ? c : c / 3.14159265358979323846;
    }

    /// theta/pi at working precision (for reports).
    HPReal pi_units(long prec) const {
        if (times_pi_) return HPReal::of(coef_, prec);
        return HPReal::of(coef_, prec + 32).round_to(prec + 32) / pi(prec + 32);
    }

    std::string describe() const;

    bool operator==(const Angle& o) const {
        if (coef_ == 0 && o.coef_ == 0) return true;
        return times_pi_ == o.times_pi_ && coef_ == o.coef_;
    }

  private:
    Angle(mpq_class c, bool tp) : coef_(std::move(c)), times_pi_(tp) { coef_.canonicalize(); }

    mpq_class coef_;
    bool times_pi_;
};

/// Strict |theta| < |bound|.  Exact when the kinds match; otherwise decided
/// numerically at high precision (a rational and a rational multiple of pi
/// can never be equal unless both are zero).
bool abs_strictly_less(const Angle& theta, const Angle& bound);

}  // namespace specnorm
