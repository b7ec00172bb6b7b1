#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "specnorm/angle.hpp"
#include "specnorm/hpcomplex.hpp"

namespace specnorm {

enum class Domain { HalfLine, FullLine };

/// A weight family: either
///   sigma(x) = x^(gamma/2) exp(-tau x^beta)   (GammaBeta), or
///   sigma(x) = exp(-sum_j c_j x^j)            (PolyExp, c_n > 0),
/// on the half-line or the whole line.  Parameters are exact rationals so
/// that every evaluation at every working precision starts from the same
/// mathematical object.
class WeightSpec {
  public:
    enum class Family { GammaBeta, PolyExp };

    static WeightSpec gamma_beta(const mpq_class& gamma, const mpq_class& beta,
                                 const mpq_class& tau, Domain domain);
    static WeightSpec poly_exp(std::vector<mpq_class> coeffs, Domain domain);

    /// The classical instances: sigma = e^{-x^2/2} on R, sigma = e^{-x/2} on (0,inf).
    static WeightSpec hermite() { return gamma_beta(0, 2, mpq_class(1, 2), Domain::FullLine); }
    static WeightSpec laguerre() { return gamma_beta(0, 1, mpq_class(1, 2), Domain::HalfLine); }

    Family family() const { return family_; }
    Domain domain() const { return domain_; }
    const mpq_class& gamma() const { return gamma_; }
    const mpq_class& beta() const { return beta_; }
    const mpq_class& tau() const { return tau_; }
    /// PolyExp coefficients c_1..c_n (index 0 holds c_1).
    const std::vector<mpq_class>& coeffs() const { return coeffs_; }
    long poly_degree() const { return static_cast<long>(coeffs_.size()); }

    /// Half-angle of the analyticity sector: pi/(2 beta), resp. pi/(2n).
    Angle sector() const;

    bool is_classical_hermite() const {
        return family_ == Family::GammaBeta && domain_ == Domain::FullLine && gamma_ == 0 &&
               beta_ == 2;
    }
    bool is_classical_laguerre() const {
        return family_ == Family::GammaBeta && domain_ == Domain::HalfLine && gamma_ == 0 &&
               beta_ == 1;
    }

    std::string describe() const;

  private:
    WeightSpec() = default;

    Family family_ = Family::GammaBeta;
    Domain domain_ = Domain::HalfLine;
    mpq_class gamma_ = 0, beta_ = 1, tau_ = 1;
    std::vector<mpq_class> coeffs_;
};

/// Per-angle constants realizing |sigma(e^{i theta} r)| >= c_theta sigma(s_theta r).
struct ScaleParams {
    Angle theta;
    HPReal s_theta;
    HPReal c_theta;
    HPReal k_theta;  // PolyExp only; c_theta = exp(-k_theta). 0 for GammaBeta.
    long prec_bits;
};

/// s_theta, c_theta (and k_theta for PolyExp) at the given precision.
/// Throws SectorViolation for |theta| >= sector.
ScaleParams scale_constants(const WeightSpec& spec, const Angle& theta, long prec);

/// sigma(z) by principal-branch powers and exponentials.  z must lie in the
/// open sector (full-line weights also accept -z in the sector, evaluating by
/// evenness).  Throws SectorViolation otherwise.
HPComplex weight_eval(const WeightSpec& spec, const HPComplex& z);

/// sigma(r) for real r > 0 (real fast path of weight_eval).
HPReal weight_eval_real(const WeightSpec& spec, const HPReal& r);

/// |sigma(e^{i theta} x)|^2 for real x > 0, computed without complex
/// arithmetic.  This is the rotated-weight density every norm and moment
/// integral uses.
HPReal rotated_weight_sq(const WeightSpec& spec, const Angle& theta, const HPReal& x);

struct BasicConditionReport {
    HPReal min_ratio;  // min over the grid of |sigma(e^{i t} r)| / (c sigma(s r))
    double argmin_r;
    long prec_bits;
};

/// Check the basic inequality on a grid of radii.
BasicConditionReport verify_basic_condition(const WeightSpec& spec, const Angle& theta,
                                            const std::vector<double>& r_grid, long prec);

}  // namespace specnorm
