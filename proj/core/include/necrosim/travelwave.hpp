#ifndef NECROSIM_TRAVELWAVE_HPP
#define NECROSIM_TRAVELWAVE_HPP

#include <vector>

#include "necrosim/grid.hpp"
#include "necrosim/model.hpp"

namespace necrosim {

// Traveling waves in the frame where the necrotic core occupies (-inf, 0],
// the saturated rim (0, R), and the outer region [R, +inf). In vitro the
// nutrient is clamped to c_B outside the bulk; in vivo it is replenished
// there and couples to the outer density, which is handled by shooting.

struct TWConfig {
    double n_R = 0.0;  // outer density trace at the front
    NutrientMode mode = NutrientMode::InVivo;
    ModelParams params;
    NumericsConfig numerics;
};

struct TWResiduals {
    double velocity_law = 0.0;     // |(1-n_R) sigma - integral of G over the rim|
    double pressure_bc = 0.0;      // |p(R)|
    double c_monotone_viol = 0.0;  // largest decrease of c between samples
    double rim_integral = 0.0;     // |int_0^1 s G(gamma) ds| at the returned R
};

struct TWProfiles {
    Grid grid;  // truncated line [-L_trunc, R + L_trunc]
    std::vector<double> n, p, c;
};

struct TWSolution {
    double sigma = 0.0;
    double R = 0.0;
    double c_R = 0.0;        // nutrient at the front
    double c_R_prime = 0.0;  // one-sided nutrient derivative at the front
    double A_sigma = 0.0;    // core slope ratio c'(0)/c(0)
    TWProfiles profiles;
    TWResiduals residuals;
    int sigma_sign_changes = 1;  // sign changes seen on the scanned bracket
};

/// Outcome of one outer-region shot.
struct ShootOutcome {
    enum class Kind { TypeI, TypeII };
    Kind kind = Kind::TypeI;
    double z = 0.0;               // contact position (TypeI)
    double terminal_c_gap = 0.0;  // |c - c_B| at the right end (TypeII)
    bool blow_up = false;         // c left [0, 2 c_B]; treated as TypeII
    std::vector<double> x, c, u, n;  // populated when store_trajectory is set
};

/// Slope ratio A(sigma) = c'(0)/c(0) of the decaying core nutrient, from the
/// Riccati form a' = psi(n(x)) - a^2 with n(x) = exp(g_minus x / sigma).
double riccati_A(double sigma, const ModelParams& params, const NumericsConfig& cfg);

/// Integrates the outer system from the front and classifies the trajectory:
/// Type I if c' reaches zero, Type II if it stays positive to the right end.
ShootOutcome classify_shot(double sigma, double c_R, double c_R_prime, double n_R,
                           double R, const ModelParams& params,
                           const NumericsConfig& cfg, bool store_trajectory = false);

/// Critical front derivative B(sigma, c_R): the Type I / Type II separatrix,
/// located by bisection inside the proven bracket.
double shoot_B(double sigma, double c_R, double n_R, const ModelParams& params,
               const NumericsConfig& cfg);

/// Largest admissible outer density for the in vivo wave.
double threshold_nbar(const ModelParams& params, const NumericsConfig& cfg);

/// Front nutrient value solving the core/outer matching at fixed (sigma, R).
double solve_cR(double sigma, double R, double n_R, const ModelParams& params,
                const NumericsConfig& cfg);

/// Lower rim-width bound R0(n_R) (closed form) and the upper bound R_b
/// (root of the fully-saturated rim integral).
double R0_of_nR(double n_R, const ModelParams& params);
double R_b(const ModelParams& params, const NumericsConfig& cfg);

/// Rim nutrient in the scaled coordinate s in [0,1] (s = 0 at the front).
double gamma_eval(double sigma, double R, double s, double c_R,
                  const ModelParams& params, const NumericsConfig& cfg);

/// Rim width R_sigma closing the pressure boundary condition at fixed sigma.
double solve_Rsigma(double sigma, double n_R, const ModelParams& params,
                    const NumericsConfig& cfg,
                    NutrientMode mode = NutrientMode::InVivo);

/// Full wave construction: speed fixed point, then profile assembly.
TWSolution solve_sigma(const TWConfig& twcfg);

/// In vitro wave. Closed form for the constant-rate/two-level laws, general
/// shooting-free construction otherwise.
TWSolution tw_invitro(const TWConfig& twcfg);

}  // namespace necrosim

#endif
