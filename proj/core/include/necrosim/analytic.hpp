#ifndef NECROSIM_ANALYTIC_HPP
#define NECROSIM_ANALYTIC_HPP

#include <vector>

#include "necrosim/model.hpp"

namespace necrosim {

// Semi-analytic radial solution for the constant-rate growth law and the
// two-level consumption law (in vitro nutrient), on a fixed tumor (-R, R).
// The tumor passes through three regimes as R grows: fully proliferative
// (case 3), nutrient-starved center without a necrotic core (case 2), and
// a true necrotic core (case 1).

struct CriticalRadii {
    double R0 = 0.0;   // nutrient first touches the threshold at the center
    double R1 = 0.0;   // necrotic core onset
    double alpha = 0.0;  // sqrt(g_minus / (g_plus + g_minus))
};

/// Semi-analytic unknowns for a fixed tumor radius R.
struct CoreSolution {
    int case_tag = 3;   // 1: necrotic core, 2: starved center, 3: fully fed
    double R = 0.0;
    double r = 0.0;     // necrotic radius (0 unless case 1)
    double Rbar = 0.0;  // proliferating rim width R - r
    double beta = 0.0;  // sqrt(n_c) tanh(xi r); slope ratio seen by the rim
    double x1 = 0.0;    // threshold crossing, measured from the core edge
    double xi = 0.0;    // sqrt(lambda n_c)
    double cRp = 0.0;   // c'(R), outward nutrient gradient at the boundary
    double c0 = 0.0;    // c at the core interface
    double c0p = 0.0;   // c' at the core interface
};

/// Even piecewise-quadratic pressure on [-R, R].
struct PiecewisePressure {
    int case_tag = 3;
    double R = 0.0;
    double r = 0.0;
    double x1 = 0.0;     // crossing offset from r (case 1) or from 0 (case 2)
    double g_plus = 0.0;
    double g_minus = 0.0;
    double C_of_R = 0.0;  // case-2 additive constant

    double operator()(double x) const;
    double derivative(double x) const;
};

/// Even piecewise-hyperbolic nutrient on [-R, R].
struct PiecewiseNutrient {
    int case_tag = 3;
    double R = 0.0;
    double r = 0.0;
    double sqrt_lambda = 0.0;
    double xi = 0.0;
    double c_B = 0.0;
    double cRp = 0.0;
    double c0 = 0.0;
    double c0p = 0.0;

    double operator()(double x) const;
};

struct RadiusTrajectory {
    std::vector<double> t;
    std::vector<double> R;
    double asymptotic_speed = 0.0;  // slope over the final 10% of the horizon
};

/// Critical radii; requires the constant growth law and two-level psi.
CriticalRadii critical_radii(const ModelParams& params);

/// The rim transcendental: zero when the threshold crossing sits at the
/// position forced by the pressure boundary condition.
double F_eval(double Rbar, double beta, const ModelParams& params);

/// Unique positive root of F(., beta); f(0) = R1 and f is decreasing.
double f_of_beta(double beta, const ModelParams& params,
                 double bisect_tol = 1e-12);

/// Solves the core fixed point h(r) = r + f(beta(r)) = R when R > R1;
/// otherwise returns the degenerate solution for case 2 or 3.
CoreSolution solve_core(double R, const ModelParams& params,
                        double bisect_tol = 1e-12);

PiecewisePressure pressure_profile(double R, const ModelParams& params,
                                   double bisect_tol = 1e-12);

PiecewiseNutrient nutrient_profile(double R, const ModelParams& params,
                                   double bisect_tol = 1e-12);

/// Outward front speed -p'(R) for the current regime.
double boundary_speed(double R, const ModelParams& params,
                      double bisect_tol = 1e-12);

/// RK4 integration of dR/dt = boundary_speed(R).
RadiusTrajectory evolve_radius(double R_init, double t_end,
                               const ModelParams& params, double ode_dt,
                               double bisect_tol = 1e-12);

/// Density seen by a fixed point x under a radius trajectory: 0 before the
/// front arrives, 1 while in the rim, exponential decay once in the core.
std::vector<double> density_history(double x, const RadiusTrajectory& traj,
                                    const ModelParams& params,
                                    double bisect_tol = 1e-12);

}  // namespace necrosim

#endif
