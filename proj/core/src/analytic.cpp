#include "necrosim/analytic.hpp"

#include <cmath>

#include "necrosim/rootfind.hpp"

namespace necrosim {

namespace {

// Parameters and derived constants, unpacked once per entry point. The
// radius ODE evaluates the core fixed point tens of thousands of times, so
// the per-call work must stay transcendental-light.
struct Ctx {
    double g_plus, g_minus, alpha, lambda, sqrt_lambda, n_c, sqrt_nc, xi;
    double c_B, c_thresh, c_ratio;
    double R0 = 0.0, R1 = 0.0, R_sin = 0.0;
    double bisect_tol;

    Ctx(const ModelParams& params, double tol) : bisect_tol(tol) {
        if (params.growth.kind() != GrowthLaw::Kind::IgnitionConstant)
            throw ConfigError("analytic: requires the constant-rate growth law");
        if (params.consumption.kind() != ConsumptionLaw::Kind::TwoLevel)
            throw ConfigError("analytic: requires the two-level consumption law");
        g_plus = params.growth.g_plus();
        g_minus = params.growth.g_minus();
        alpha = std::sqrt(g_minus / (g_plus + g_minus));
        lambda = params.consumption.lambda();
        sqrt_lambda = std::sqrt(lambda);
        n_c = params.consumption.n_c();
        sqrt_nc = std::sqrt(n_c);
        xi = std::sqrt(lambda * n_c);
        c_B = params.c_B;
        c_thresh = params.growth.c_thresh();
        if (!(c_thresh < c_B)) throw ConfigError("analytic: requires c_thresh < c_B");
        c_ratio = c_thresh / c_B;

        R0 = std::acosh(1.0 / c_ratio) / sqrt_lambda;
        // Largest root of the sinh-ratio denominator; zero unless
        // c_ratio < 1 - alpha. Keeps the f_of_beta bracket clear of it.
        if (c_ratio < 1.0 - alpha) {
            auto g = [&](double R) {
                double y = sqrt_lambda * R;
                return c_ratio * std::sinh(y) - std::sinh((1.0 - alpha) * y);
            };
            auto [lo, hi] = expand_bracket_up(g, 1e-8, 1.0);
            R_sin = bisect(g, lo, hi, 1e-13);
        }
        auto fR1 = [&](double R) {
            double y = sqrt_lambda * R;
            return c_ratio - std::cosh((1.0 - alpha) * y) / std::cosh(y);
        };
        auto [lo, hi] = expand_bracket_up(fR1, R0, 2.0 * R0);
        R1 = bisect(fR1, lo, hi, 1e-13);
        if (!(R0 < R1)) throw SolverError("analytic: expected R0 < R1");
    }

    double F(double Rbar, double beta) const {
        double y = sqrt_lambda * Rbar;
        double ym = (1.0 - alpha) * y;
        return c_ratio * (std::cosh(y) + beta * std::sinh(y)) -
               (std::cosh(ym) + beta * std::sinh(ym));
    }

    double f_of_beta(double beta) const {
        auto F1 = [&](double Rbar) { return F(Rbar, beta); };
        double lo = R_sin + 1e-10;
        // F < 0 just above R_sin and F -> +infinity.
        auto [blo, bhi] = expand_bracket_up(F1, lo, std::max(1.0, 2.0 * lo));
        return bisect(F1, blo, bhi, bisect_tol);
    }

    double beta_of_r(double r) const { return sqrt_nc * std::tanh(xi * r); }

    CoreSolution core(double R) const {
        if (!(R > 0.0)) throw ConfigError("solve_core: R must be positive");
        CoreSolution sol;
        sol.R = R;
        sol.xi = xi;
        if (R > R1) {
            sol.case_tag = 1;
            auto h = [&](double r) { return r + f_of_beta(beta_of_r(r)) - R; };
            sol.r = bisect(h, 0.0, R, bisect_tol);
            sol.Rbar = R - sol.r;
            sol.beta = beta_of_r(sol.r);
            sol.x1 = (1.0 - alpha) * sol.Rbar;
            double y = sqrt_lambda * sol.Rbar;
            sol.cRp = c_B * (sol.beta * std::cosh(y) + std::sinh(y)) /
                      (sol.beta * std::sinh(y) + std::cosh(y));
            sol.c0 = c_B * std::cosh(y) - sol.cRp * std::sinh(y);
            sol.c0p = sqrt_lambda * (-c_B * std::sinh(y) + sol.cRp * std::cosh(y));
            return sol;
        }
        sol.r = 0.0;
        sol.Rbar = R;
        sol.beta = 0.0;
        double y = sqrt_lambda * R;
        sol.cRp = c_B * sqrt_lambda * std::tanh(y);
        sol.c0 = c_B / std::cosh(y);
        sol.c0p = 0.0;
        if (R > R0) {
            sol.case_tag = 2;
            sol.x1 = std::acosh(c_ratio * std::cosh(y)) / sqrt_lambda;
        } else {
            sol.case_tag = 3;
            sol.x1 = 0.0;
        }
        return sol;
    }

    double speed(double R) const {
        CoreSolution sol = core(R);
        switch (sol.case_tag) {
            case 1:
                return (std::sqrt((g_plus + g_minus) * g_minus) - g_minus) * sol.Rbar;
            case 2:
                return g_plus * (R - sol.x1) - g_minus * sol.x1;
            default:
                return g_plus * R;
        }
    }
};

}  // namespace

CriticalRadii critical_radii(const ModelParams& params) {
    Ctx ctx(params, 1e-13);
    return CriticalRadii{ctx.R0, ctx.R1, ctx.alpha};
}

double F_eval(double Rbar, double beta, const ModelParams& params) {
    return Ctx(params, 1e-12).F(Rbar, beta);
}

double f_of_beta(double beta, const ModelParams& params, double bisect_tol) {
    return Ctx(params, bisect_tol).f_of_beta(beta);
}

CoreSolution solve_core(double R, const ModelParams& params, double bisect_tol) {
    return Ctx(params, bisect_tol).core(R);
}

double PiecewisePressure::operator()(double x) const {
    double ax = std::abs(x);
    if (ax >= R) return 0.0;
    switch (case_tag) {
        case 1: {
            if (ax <= r) return 0.0;
            double z = ax - r;
            if (z <= x1) return 0.5 * g_minus * z * z;
            double w = z - x1;
            return -0.5 * g_plus * w * w + g_minus * x1 * w + 0.5 * g_minus * x1 * x1;
        }
        case 2: {
            if (ax <= x1) return 0.5 * g_minus * ax * ax + C_of_R;
            double w = ax - x1;
            return -0.5 * g_plus * w * w + g_minus * x1 * w +
                   0.5 * g_minus * x1 * x1 + C_of_R;
        }
        default:
            return 0.5 * g_plus * (R * R - ax * ax);
    }
}

double PiecewisePressure::derivative(double x) const {
    double ax = std::abs(x);
    double sgn = x < 0.0 ? -1.0 : 1.0;
    if (ax > R) return 0.0;
    double d;
    switch (case_tag) {
        case 1: {
            if (ax <= r) return 0.0;
            double z = ax - r;
            d = (z <= x1) ? g_minus * z : -g_plus * (z - x1) + g_minus * x1;
            break;
        }
        case 2:
            d = (ax <= x1) ? g_minus * ax : -g_plus * (ax - x1) + g_minus * x1;
            break;
        default:
            d = -g_plus * ax;
            break;
    }
    return sgn * d;
}

PiecewisePressure pressure_profile(double R, const ModelParams& params,
                                   double bisect_tol) {
    Ctx ctx(params, bisect_tol);
    CoreSolution core = ctx.core(R);
    PiecewisePressure p;
    p.case_tag = core.case_tag;
    p.R = R;
    p.r = core.r;
    p.x1 = core.x1;
    p.g_plus = ctx.g_plus;
    p.g_minus = ctx.g_minus;
    if (core.case_tag == 2) {
        double w = R - core.x1;
        p.C_of_R = 0.5 * ctx.g_plus * w * w - ctx.g_minus * core.x1 * w -
                   0.5 * ctx.g_minus * core.x1 * core.x1;
    }
    return p;
}

double PiecewiseNutrient::operator()(double x) const {
    double ax = std::abs(x);
    if (case_tag != 1) {
        return c_B * std::cosh(sqrt_lambda * ax) / std::cosh(sqrt_lambda * R);
    }
    if (ax >= r) {
        double z = ax - R;  // offset from the outer boundary, z in [-(R-r), 0]
        return c_B * std::cosh(sqrt_lambda * z) + cRp * std::sinh(sqrt_lambda * z);
    }
    double z = ax - r;  // core side: C^1 continuation, even in x
    return c0 * std::cosh(xi * z) + (c0p / xi) * std::sinh(xi * z);
}

PiecewiseNutrient nutrient_profile(double R, const ModelParams& params,
                                   double bisect_tol) {
    Ctx ctx(params, bisect_tol);
    CoreSolution core = ctx.core(R);
    PiecewiseNutrient c;
    c.case_tag = core.case_tag;
    c.R = R;
    c.r = core.r;
    c.sqrt_lambda = ctx.sqrt_lambda;
    c.xi = ctx.xi;
    c.c_B = ctx.c_B;
    c.cRp = core.cRp;
    c.c0 = core.c0;
    c.c0p = core.c0p;
    return c;
}

double boundary_speed(double R, const ModelParams& params, double bisect_tol) {
    return Ctx(params, bisect_tol).speed(R);
}

RadiusTrajectory evolve_radius(double R_init, double t_end,
                               const ModelParams& params, double ode_dt,
                               double bisect_tol) {
    if (!(R_init > 0.0)) throw ConfigError("evolve_radius: R_init must be positive");
    Ctx ctx(params, bisect_tol);
    RadiusTrajectory traj;
    long steps = static_cast<long>(std::ceil(t_end / ode_dt));
    double dt = t_end / static_cast<double>(steps);
    traj.t.reserve(steps + 1);
    traj.R.reserve(steps + 1);
    double R = R_init;
    traj.t.push_back(0.0);
    traj.R.push_back(R);
    for (long i = 0; i < steps; ++i) {
        double k1 = ctx.speed(R);
        double k2 = ctx.speed(R + 0.5 * dt * k1);
        double k3 = ctx.speed(R + 0.5 * dt * k2);
        double k4 = ctx.speed(R + dt * k3);
        R += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        traj.t.push_back(dt * static_cast<double>(i + 1));
        traj.R.push_back(R);
    }
    std::size_t tail = traj.t.size() > 10 ? traj.t.size() / 10 : 1;
    std::size_t i0 = traj.t.size() - 1 - tail;
    traj.asymptotic_speed =
        (traj.R.back() - traj.R[i0]) / (traj.t.back() - traj.t[i0]);
    return traj;
}

std::vector<double> density_history(double x, const RadiusTrajectory& traj,
                                    const ModelParams& params, double bisect_tol) {
    Ctx ctx(params, bisect_tol);
    double ax = std::abs(x);
    // Crossing times of the outer front and of the core radius, linearly
    // interpolated between trajectory samples.
    double t0 = ax <= traj.R.front() ? 0.0 : -1.0;
    double t1 = -1.0;
    double prev_r = ctx.core(traj.R.front()).r;
    if (ax <= prev_r && ax > 0.0) t1 = 0.0;
    for (std::size_t i = 1; i < traj.t.size(); ++i) {
        if (t0 < 0.0 && traj.R[i] >= ax) {
            double f = (ax - traj.R[i - 1]) / (traj.R[i] - traj.R[i - 1]);
            t0 = traj.t[i - 1] + f * (traj.t[i] - traj.t[i - 1]);
        }
        if (t1 < 0.0) {
            double r = ctx.core(traj.R[i]).r;
            if (r >= ax && ax > 0.0) {
                double f = (ax - prev_r) / (r - prev_r);
                t1 = traj.t[i - 1] + f * (traj.t[i] - traj.t[i - 1]);
            }
            prev_r = r;
        }
        if (t0 >= 0.0 && t1 >= 0.0) break;
    }
    std::vector<double> n(traj.t.size(), 0.0);
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        double t = traj.t[i];
        if (t0 < 0.0 || t < t0) {
            n[i] = 0.0;
        } else if (t1 < 0.0 || t <= t1) {
            n[i] = 1.0;
        } else {
            n[i] = std::exp(-ctx.g_minus * (t - t1));
        }
    }
    return n;
}

}  // namespace necrosim
