#ifndef NECROSIM_MODEL_HPP
#define NECROSIM_MODEL_HPP

#include <functional>
#include <string>
#include <vector>

#include "necrosim/errors.hpp"

namespace necrosim {

/// Ignition-type growth rate: constant decay -g_minus below the nutrient
/// threshold, non-negative and non-decreasing at or above it. The value at
/// the threshold itself uses the upper branch.
class GrowthLaw {
public:
    enum class Kind { IgnitionConstant, IgnitionAffine, IgnitionGeneral };

    static GrowthLaw ignition_constant(double g_plus, double g_minus, double c_thresh);
    static GrowthLaw ignition_affine(double g_minus, double slope, double intercept,
                                     double c_thresh);
    /// upper(c) must be positive and non-decreasing for c >= c_thresh;
    /// deriv_bound is the caller-supplied bound on its derivative.
    static GrowthLaw ignition_general(double g_minus, double c_thresh,
                                      std::function<double(double)> upper,
                                      double deriv_bound);

    double operator()(double c) const;

    Kind kind() const { return kind_; }
    double g_minus() const { return g_minus_; }
    double c_thresh() const { return c_thresh_; }
    /// G at the threshold (upper-branch value).
    double value_at_threshold() const { return (*this)(c_thresh_); }
    /// Bound on |G'| over the upper branch (exact for the closed forms).
    double derivative_bound() const { return deriv_bound_; }
    /// g_plus for the constant variant; rejects other variants.
    double g_plus() const;

private:
    GrowthLaw() = default;
    Kind kind_ = Kind::IgnitionConstant;
    double g_plus_ = 1.0;
    double g_minus_ = 1.0;
    double c_thresh_ = 0.5;
    double slope_ = 0.0;
    double intercept_ = 0.0;
    double deriv_bound_ = 0.0;
    std::function<double(double)> upper_;
};

/// Nutrient consumption rate psi(n) on densities n in [0,1].
class ConsumptionLaw {
public:
    enum class Kind { TwoLevel, Linear, GeneralMonotone };

    static ConsumptionLaw two_level(double lambda, double n_c);
    static ConsumptionLaw linear(double coef);
    /// callable must satisfy psi(0) = 0 and be non-decreasing; deriv_bound
    /// is the caller-supplied bound on psi'.
    static ConsumptionLaw general(std::function<double(double)> psi, double deriv_bound);

    /// psi(n); rejects n outside [0,1] (corrupted state).
    double operator()(double n) const;

    Kind kind() const { return kind_; }
    double lambda() const;
    double n_c() const;
    double psi_one() const { return (*this)(1.0); }
    double derivative_bound() const { return deriv_bound_; }

private:
    ConsumptionLaw() = default;
    Kind kind_ = Kind::Linear;
    double lambda_ = 1.0;
    double n_c_ = 0.5;
    double coef_ = 1.0;
    double deriv_bound_ = 1.0;
    std::function<double(double)> psi_;
};

enum class NutrientMode { InVitro, InVivo };

struct ModelParams {
    double c_B = 1.0;
    GrowthLaw growth = GrowthLaw::ignition_constant(1.0, 1.0, 0.5);
    ConsumptionLaw consumption = ConsumptionLaw::two_level(1.0, 0.25);
    NutrientMode nutrient_mode = NutrientMode::InVitro;
};

/// Numerical knobs shared across solvers. psor_omega = 0 selects the
/// grid-size-dependent optimal relaxation factor.
struct NumericsConfig {
    double h = 1e-3;
    double dt = 0.05;
    double psor_omega = 0.0;
    double psor_tol = 1e-8;
    double eps_coincidence = 1e-9;  // relative to max(p); absolute floor 1e-14
    double L_trunc = 20.0;
    double bisect_tol = 1e-12;
    long max_iter = 2000000;
    double ode_dt = 1e-3;

    void validate() const;
};

double eval_growth(const GrowthLaw& law, double c);
double eval_consumption(const ConsumptionLaw& law, double n);

/// Standing-assumption report; informational only.
struct ValidationReport {
    bool c_thresh_below_cB = false;
    bool nc_below_one = true;
    bool psi_zero_at_zero = false;
    bool growth_monotone = false;
    bool consumption_monotone = false;
    bool smallness_condition = false;  // c_B |psi'| |G'| / (e G(c_thresh)) < 1
    double smallness_lhs = 0.0;
    bool tw_invivo_threshold = false;  // c_thresh < c_B / (1 + sqrt(psi(1)))
    std::vector<std::string> notes;

    bool all_hold() const {
        return c_thresh_below_cB && nc_below_one && psi_zero_at_zero &&
               growth_monotone && consumption_monotone && smallness_condition;
    }
};

ValidationReport validate(const ModelParams& params);

}  // namespace necrosim

#endif
