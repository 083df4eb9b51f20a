#include "necrosim/model.hpp"

#include <cmath>

namespace necrosim {

GrowthLaw GrowthLaw::ignition_constant(double g_plus, double g_minus, double c_thresh) {
    if (!(g_plus > 0.0) || !(g_minus > 0.0))
        throw ConfigError("GrowthLaw: rates must be positive");
    GrowthLaw law;
    law.kind_ = Kind::IgnitionConstant;
    law.g_plus_ = g_plus;
    law.g_minus_ = g_minus;
    law.c_thresh_ = c_thresh;
    law.deriv_bound_ = 0.0;
    return law;
}

GrowthLaw GrowthLaw::ignition_affine(double g_minus, double slope, double intercept,
                                     double c_thresh) {
    if (!(g_minus > 0.0) || slope < 0.0 || !(intercept > 0.0))
        throw ConfigError("GrowthLaw: need g_minus > 0, slope >= 0, intercept > 0");
    GrowthLaw law;
    law.kind_ = Kind::IgnitionAffine;
    law.g_minus_ = g_minus;
    law.slope_ = slope;
    law.intercept_ = intercept;
    law.c_thresh_ = c_thresh;
    law.deriv_bound_ = slope;
    return law;
}

GrowthLaw GrowthLaw::ignition_general(double g_minus, double c_thresh,
                                      std::function<double(double)> upper,
                                      double deriv_bound) {
    if (!(g_minus > 0.0) || !upper || deriv_bound < 0.0)
        throw ConfigError("GrowthLaw: bad general-variant arguments");
    GrowthLaw law;
    law.kind_ = Kind::IgnitionGeneral;
    law.g_minus_ = g_minus;
    law.c_thresh_ = c_thresh;
    law.upper_ = std::move(upper);
    law.deriv_bound_ = deriv_bound;
    return law;
}

double GrowthLaw::operator()(double c) const {
    if (c < c_thresh_) return -g_minus_;
    switch (kind_) {
        case Kind::IgnitionConstant: return g_plus_;
        case Kind::IgnitionAffine: return slope_ * (c - c_thresh_) + intercept_;
        case Kind::IgnitionGeneral: return upper_(c);
    }
    return 0.0;
}

double GrowthLaw::g_plus() const {
    if (kind_ != Kind::IgnitionConstant)
        throw ConfigError("GrowthLaw: g_plus only defined for the constant variant");
    return g_plus_;
}

ConsumptionLaw ConsumptionLaw::two_level(double lambda, double n_c) {
    if (!(lambda > 0.0) || !(n_c > 0.0) || !(n_c < 1.0))
        throw ConfigError("ConsumptionLaw: need lambda > 0 and n_c in (0,1)");
    ConsumptionLaw law;
    law.kind_ = Kind::TwoLevel;
    law.lambda_ = lambda;
    law.n_c_ = n_c;
    law.deriv_bound_ = 0.0;  // flat on each level; the jump is noted by validate()
    return law;
}

ConsumptionLaw ConsumptionLaw::linear(double coef) {
    if (!(coef > 0.0)) throw ConfigError("ConsumptionLaw: coef must be positive");
    ConsumptionLaw law;
    law.kind_ = Kind::Linear;
    law.coef_ = coef;
    law.deriv_bound_ = coef;
    return law;
}

ConsumptionLaw ConsumptionLaw::general(std::function<double(double)> psi,
                                       double deriv_bound) {
    if (!psi || deriv_bound < 0.0)
        throw ConfigError("ConsumptionLaw: bad general-variant arguments");
    ConsumptionLaw law;
    law.kind_ = Kind::GeneralMonotone;
    law.psi_ = std::move(psi);
    law.deriv_bound_ = deriv_bound;
    return law;
}

double ConsumptionLaw::operator()(double n) const {
    if (!(n >= 0.0) || !(n <= 1.0))
        throw SolverError("ConsumptionLaw: density outside [0,1]");
    switch (kind_) {
        case Kind::TwoLevel:
            return std::abs(n - 1.0) <= 1e-12 ? lambda_ : lambda_ * n_c_;
        case Kind::Linear:
            return coef_ * n;
        case Kind::GeneralMonotone:
            return psi_(n);
    }
    return 0.0;
}

double ConsumptionLaw::lambda() const {
    if (kind_ != Kind::TwoLevel)
        throw ConfigError("ConsumptionLaw: lambda only defined for the two-level variant");
    return lambda_;
}

double ConsumptionLaw::n_c() const {
    if (kind_ != Kind::TwoLevel)
        throw ConfigError("ConsumptionLaw: n_c only defined for the two-level variant");
    return n_c_;
}

void NumericsConfig::validate() const {
    if (!(h > 0.0) || !(dt > 0.0) || !(psor_tol > 0.0) || !(eps_coincidence > 0.0) ||
        !(L_trunc > 0.0) || !(bisect_tol > 0.0) || max_iter <= 0 || !(ode_dt > 0.0))
        throw ConfigError("NumericsConfig: all quantities must be strictly positive");
    if (psor_omega != 0.0 && !(psor_omega > 0.0 && psor_omega < 2.0))
        throw ConfigError("NumericsConfig: psor_omega must lie in (0,2) or be 0 (auto)");
}

double eval_growth(const GrowthLaw& law, double c) { return law(c); }

double eval_consumption(const ConsumptionLaw& law, double n) { return law(n); }

ValidationReport validate(const ModelParams& params) {
    ValidationReport rep;
    const GrowthLaw& G = params.growth;
    const ConsumptionLaw& psi = params.consumption;

    rep.c_thresh_below_cB = G.c_thresh() < params.c_B;
    if (!rep.c_thresh_below_cB) rep.notes.push_back("c_thresh >= c_B");

    if (psi.kind() == ConsumptionLaw::Kind::TwoLevel) {
        rep.nc_below_one = psi.n_c() < 1.0;
        rep.notes.push_back("two-level psi is discontinuous at n = 1 (not C^1)");
    }

    double psi0 = psi(0.0);
    rep.psi_zero_at_zero = psi0 == 0.0;
    if (!rep.psi_zero_at_zero) rep.notes.push_back("psi(0) != 0");

    // Monotonicity: exact for the closed forms, sampled for callables.
    auto sampled_monotone = [](auto&& f, double lo, double hi) {
        const int n = 512;
        double prev = f(lo);
        for (int i = 1; i <= n; ++i) {
            double v = f(lo + (hi - lo) * i / n);
            if (v < prev - 1e-13) return false;
            prev = v;
        }
        return true;
    };
    rep.growth_monotone =
        G.kind() == GrowthLaw::Kind::IgnitionGeneral
            ? sampled_monotone([&](double c) { return G(c); }, G.c_thresh(),
                               std::max(2.0 * params.c_B, G.c_thresh() + 1.0))
            : true;
    rep.consumption_monotone =
        psi.kind() == ConsumptionLaw::Kind::GeneralMonotone
            ? sampled_monotone([&](double n) { return psi(n); }, 0.0, 1.0)
            : true;

    double g_at_thresh = G.value_at_threshold();
    rep.smallness_lhs =
        params.c_B * psi.derivative_bound() * G.derivative_bound() /
        (std::exp(1.0) * g_at_thresh);
    rep.smallness_condition = rep.smallness_lhs < 1.0;

    rep.tw_invivo_threshold =
        G.c_thresh() < params.c_B / (1.0 + std::sqrt(psi.psi_one()));

    return rep;
}

}  // namespace necrosim
