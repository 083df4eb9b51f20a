#include "necrosim/travelwave.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "necrosim/analytic.hpp"
#include "necrosim/rootfind.hpp"

namespace necrosim {

namespace {

using GaussRule = boost::math::quadrature::gauss<double, 64>;

// Working tolerances. The sigma fixed point nests four bracketed solves
// (shoot -> B -> c_R -> R -> sigma); the inner tolerance is laddered with
// the width of the outer sigma bracket so early iterations stay cheap.
struct WorkTols {
    double shoot_step = 5e-3;
    double inner_tol = 1e-11;
};

struct TwCtx {
    const ModelParams& params;
    const NumericsConfig& cfg;
    double psi1, sq1, c_B, cbar, g_minus, L;
    WorkTols tols;

    TwCtx(const ModelParams& p, const NumericsConfig& c) : params(p), cfg(c) {
        psi1 = p.consumption.psi_one();
        sq1 = std::sqrt(psi1);
        c_B = p.c_B;
        cbar = p.growth.c_thresh();
        g_minus = p.growth.g_minus();
        L = c.L_trunc;
        tols.shoot_step = L / 4000.0;
        tols.inner_tol = std::max(1e-13, std::min(1e-11, c.bisect_tol * 10.0));
    }

    double G(double c) const { return params.growth(c); }
    double psi(double n) const { return params.consumption(n); }
};

// a' = psi(n(x)) - a^2 with n = exp(g_minus x / sigma), integrated from -L
// (where a = 0) to 0 by RK4. Optionally records the running integral of a,
// from which the core nutrient is rebuilt as c(x) = c(0) exp(I(x) - I(0));
// reconstructing through the slope ratio avoids the unstable backward sweep.
double riccati_impl(const TwCtx& ctx, double sigma, double step,
                    std::vector<double>* xs, std::vector<double>* Is) {
    const double L = ctx.L;
    // Keep the density ramp (width sigma / g_minus) resolved.
    step = std::min(step, sigma / ctx.g_minus / 16.0);
    long nsteps = static_cast<long>(std::ceil(L / step));
    step = L / static_cast<double>(nsteps);
    auto f = [&](double x, double a) {
        // The core density stays strictly below saturation; evaluating the
        // consumption at the x = 0 endpoint must use its interior branch.
        double n = std::min(std::exp(ctx.g_minus * x / sigma), 1.0 - 1e-11);
        return ctx.psi(n) - a * a;
    };
    double x = -L, a = 0.0, I = 0.0;
    if (xs) {
        xs->push_back(x);
        Is->push_back(I);
    }
    for (long i = 0; i < nsteps; ++i) {
        double k1 = f(x, a);
        double k2 = f(x + 0.5 * step, a + 0.5 * step * k1);
        double k3 = f(x + 0.5 * step, a + 0.5 * step * k2);
        double k4 = f(x + step, a + step * k3);
        double a_new = a + step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        I += 0.5 * step * (a + a_new);
        a = a_new;
        x = -L + step * static_cast<double>(i + 1);
        if (xs) {
            xs->push_back(x);
            Is->push_back(I);
        }
    }
    return a;
}

// Relative closeness to c_B required before a surviving shot counts as
// Type II; separates true Type II from slow Type I on the truncated range.
constexpr double kTruncTol = 1e-4;

ShootOutcome shoot_impl(const TwCtx& ctx, double sigma, double c_R, double cRp,
                        double n_R, double R, double step, bool store) {
    ShootOutcome out;
    long nsteps = static_cast<long>(std::ceil(ctx.L / step));
    step = ctx.L / static_cast<double>(nsteps);
    double c = c_R, u = cRp, w = 0.0;
    auto record = [&](double x) {
        if (!store) return;
        out.x.push_back(x);
        out.c.push_back(c);
        out.u.push_back(u);
        out.n.push_back(std::clamp(n_R * std::exp(-w), 0.0, 1.0));
    };
    record(R);
    if (u <= 0.0) {
        out.kind = ShootOutcome::Kind::TypeI;
        out.z = R;
        return out;
    }
    struct D {
        double c, u, w;
    };
    auto deriv = [&](double c_, double u_, double w_) {
        double n = std::clamp(n_R * std::exp(-w_), 0.0, 1.0);
        return D{u_, (c_ - ctx.c_B) + ctx.psi(n) * c_, ctx.G(c_) / sigma};
    };
    for (long i = 0; i < nsteps; ++i) {
        double x = R + step * static_cast<double>(i);
        double up = u;
        D k1 = deriv(c, u, w);
        D k2 = deriv(c + 0.5 * step * k1.c, u + 0.5 * step * k1.u, w + 0.5 * step * k1.w);
        D k3 = deriv(c + 0.5 * step * k2.c, u + 0.5 * step * k2.u, w + 0.5 * step * k2.w);
        D k4 = deriv(c + step * k3.c, u + step * k3.u, w + step * k3.w);
        c += step / 6.0 * (k1.c + 2.0 * k2.c + 2.0 * k3.c + k4.c);
        u += step / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u);
        w += step / 6.0 * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w);
        record(x + step);
        if (c < 0.0 || c > 2.0 * ctx.c_B) {
            out.kind = ShootOutcome::Kind::TypeII;
            out.blow_up = true;
            out.terminal_c_gap = std::abs(c - ctx.c_B);
            return out;
        }
        if (u <= 0.0) {
            out.kind = ShootOutcome::Kind::TypeI;
            out.z = x + step * up / (up - u);
            return out;
        }
    }
    if (std::abs(c - ctx.c_B) < kTruncTol * ctx.c_B) {
        out.kind = ShootOutcome::Kind::TypeII;
        out.terminal_c_gap = std::abs(c - ctx.c_B);
    } else {
        // Survived the window without approaching c_B: a slow Type I.
        out.kind = ShootOutcome::Kind::TypeI;
        out.z = R + ctx.L;
    }
    return out;
}

double shoot_B_impl(const TwCtx& ctx, double sigma, double c_R, double n_R) {
    double psiR = ctx.psi(n_R);
    double upper = ctx.c_B - c_R;
    if (psiR == 0.0) return upper;  // both Lemma bounds coincide
    double sq = std::sqrt(1.0 + psiR);
    double lower = std::max(0.0, ctx.c_B / sq - sq * c_R);
    auto type_I = [&](double cRp) {
        return shoot_impl(ctx, sigma, c_R, cRp, n_R, 0.0, ctx.tols.shoot_step, false)
                   .kind == ShootOutcome::Kind::TypeI;
    };
    if (!type_I(lower) || type_I(upper)) {
        std::ostringstream os;
        os << "shoot_B: bracket endpoints classify identically (sigma=" << sigma
           << ", c_R=" << c_R << ", n_R=" << n_R << ")";
        throw SolverError(os.str());
    }
    double lo = lower, hi = upper;
    while (hi - lo > ctx.tols.inner_tol) {
        double mid = 0.5 * (lo + hi);
        (type_I(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Core-matching ratios, scaled by e^{-y} so large rims cannot overflow.
double rho_of(double A, double R, double sq1) {
    double y = sq1 * R;
    double e2 = std::exp(-2.0 * y);
    return (A * (1.0 + e2) + sq1 * (1.0 - e2)) /
           (A * (1.0 - e2) + sq1 * (1.0 + e2));
}

double gamma_tilde(double A, double R, double s, double sq1) {
    double y = sq1 * R;
    double y1 = y * (1.0 - s);
    double t1 = std::exp(y1 - y), t2 = std::exp(-y1 - y);
    double num = A * (t1 - t2) + sq1 * (t1 + t2);
    double den = A * (1.0 - std::exp(-2.0 * y)) + sq1 * (1.0 + std::exp(-2.0 * y));
    return num / den;
}

// int_0^1 s^w G(c_R gamma_tilde(s)) ds with the ignition kink split out of
// the quadrature; G jumps at the threshold and a panel straddling it would
// wreck the monotonicity the bisections rely on.
double rim_integral(const TwCtx& ctx, double A, double R, double c_R,
                    bool s_weighted) {
    auto gam = [&](double s) { return c_R * gamma_tilde(A, R, s, ctx.sq1); };
    auto f = [&](double s) {
        double g = ctx.G(gam(s));
        return s_weighted ? s * g : g;
    };
    double split = -1.0;
    if (gam(0.0) > ctx.cbar && gam(1.0) < ctx.cbar)
        split = bisect([&](double s) { return gam(s) - ctx.cbar; }, 0.0, 1.0, 1e-15);
    if (split < 0.0) return GaussRule::integrate(f, 0.0, 1.0);
    return GaussRule::integrate(f, 0.0, split) + GaussRule::integrate(f, split, 1.0);
}

double R0_impl(const TwCtx& ctx, double n_R) {
    if (n_R == 0.0) return 0.0;
    double q = ctx.psi(n_R) / ctx.sq1;
    if (q >= 1.0)
        throw ConfigError("R0_of_nR: psi(n_R) >= sqrt(psi(1)), no admissible width");
    return std::atanh(q) / ctx.sq1;
}

double R_b_impl(const TwCtx& ctx) {
    if (!(ctx.cbar < ctx.c_B)) throw ConfigError("R_b: requires c_thresh < c_B");
    auto Phi = [&](double R) {
        auto f = [&](double s) { return s * ctx.G(ctx.c_B / std::cosh(ctx.sq1 * R * s)); };
        double s_star = std::acosh(ctx.c_B / ctx.cbar) / (ctx.sq1 * R);
        if (s_star >= 1.0) return GaussRule::integrate(f, 0.0, 1.0);
        return GaussRule::integrate(f, 0.0, s_star) +
               GaussRule::integrate(f, s_star, 1.0);
    };
    auto [lo, hi] = expand_bracket_up(Phi, 1e-8, 1.0);
    return bisect(Phi, lo, hi, ctx.cfg.bisect_tol);
}

// Root of B(sigma, c_R)/sqrt(psi1) = c_R rho in c_R. Rather than locating
// B for every iterate, shoot once per iterate along the matching line
// c'_R = sqrt(psi1) rho c_R: the shot is Type I exactly when the line is
// still below the separatrix (B decreases in c_R while the line grows), so
// the classification itself bisects the same root at one shot per step.
double solve_cR_impl(const TwCtx& ctx, double A, double sigma, double R, double n_R) {
    double rho = rho_of(A, R, ctx.sq1);
    double hi_end = ctx.c_B / (1.0 + ctx.psi(n_R));
    if (!(hi_end > ctx.cbar))
        throw SolverError("solve_cR: admissible front-nutrient interval is empty");
    double lo = ctx.cbar * (1.0 + 1e-12) + 1e-15;
    double hi = hi_end * (1.0 - 1e-12);
    auto below_B = [&](double c_R) {
        return shoot_impl(ctx, sigma, c_R, ctx.sq1 * rho * c_R, n_R, 0.0,
                          ctx.tols.shoot_step, false)
                   .kind == ShootOutcome::Kind::TypeI;
    };
    if (!below_B(lo) || below_B(hi)) {
        std::ostringstream os;
        os << "solve_cR: no sign change on (" << lo << ", " << hi
           << ") (sigma=" << sigma << ", R=" << R << ", n_R=" << n_R << ")";
        throw SolverError(os.str());
    }
    while (hi - lo > ctx.tols.inner_tol) {
        double mid = 0.5 * (lo + hi);
        (below_B(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

struct RimSolve {
    double R = 0.0;
    double c_R = 0.0;
};

RimSolve solve_R_impl(const TwCtx& ctx, double A, double sigma, double n_R,
                      NutrientMode mode) {
    auto c_R_at = [&](double R) {
        return mode == NutrientMode::InVitro ? ctx.c_B
                                             : solve_cR_impl(ctx, A, sigma, R, n_R);
    };
    auto Phi = [&](double R) { return rim_integral(ctx, A, R, c_R_at(R), true); };
    double lo = mode == NutrientMode::InVitro
                    ? 1e-6
                    : R0_impl(ctx, n_R) * (1.0 + 1e-4) + 1e-8;
    double hi = R_b_impl(ctx);
    if (!(Phi(lo) > 0.0))
        throw SolverError(
            "solve_Rsigma: rim integral not positive at the lower bound "
            "(outside the existence regime)");
    double phi_hi = Phi(hi);
    int guard = 0;
    while (phi_hi > 0.0 && guard++ < 4) {
        hi *= 2.0;
        phi_hi = Phi(hi);
    }
    if (phi_hi > 0.0) throw SolverError("solve_Rsigma: no sign change up to 16 R_b");
    RimSolve out;
    out.R = bisect(Phi, lo, hi, ctx.tols.inner_tol);
    out.c_R = c_R_at(out.R);
    return out;
}

struct SigmaEval {
    double psi_value = 0.0;  // (1 - n_R) sigma - R int_0^1 G(gamma) ds
    RimSolve rim;
    double A = 0.0;
};

SigmaEval eval_sigma(const TwCtx& ctx, double sigma, double n_R, NutrientMode mode,
                     double riccati_step) {
    SigmaEval ev;
    ev.A = riccati_impl(ctx, sigma, riccati_step, nullptr, nullptr);
    ev.rim = solve_R_impl(ctx, ev.A, sigma, n_R, mode);
    double I = rim_integral(ctx, ev.A, ev.rim.R, ev.rim.c_R, false);
    ev.psi_value = (1.0 - n_R) * sigma - ev.rim.R * I;
    return ev;
}

double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t i = static_cast<std::size_t>(it - xs.begin());
    double f = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ys[i - 1] + f * (ys[i] - ys[i - 1]);
}

TWSolution assemble(const TwCtx& ctx, const TWConfig& twcfg, double sigma,
                    const RimSolve& rim, double A, int sign_changes) {
    const double n_R = twcfg.n_R;
    const bool invivo = twcfg.mode == NutrientMode::InVivo;
    const double R = rim.R;
    const double c_R = rim.c_R;
    const double ctilde = c_R * rho_of(A, R, ctx.sq1);  // sinh coefficient
    const double cRp = ctx.sq1 * ctilde;                // derivative at the front
    const double c0 = c_R * gamma_tilde(A, R, 1.0, ctx.sq1);

    TWSolution sol;
    sol.sigma = sigma;
    sol.R = R;
    sol.c_R = c_R;
    sol.c_R_prime = cRp;
    sol.A_sigma = A;
    sol.sigma_sign_changes = sign_changes;

    std::vector<double> core_x, core_I;
    riccati_impl(ctx, sigma, ctx.cfg.ode_dt, &core_x, &core_I);
    const double I0 = core_I.back();

    // Outer region: integrate the critical shot, then continue with the
    // linearized decaying mode past its closest approach to (c_B, 0) -- the
    // shot itself diverges exponentially beyond that point.
    ShootOutcome outer;
    double x_star = R, c_star = c_R, n_star = n_R;
    if (invivo) {
        outer = shoot_impl(ctx, sigma, c_R, cRp, n_R, R, ctx.tols.shoot_step, true);
        double best = 1e300;
        std::size_t i_star = 0;
        for (std::size_t i = 0; i < outer.x.size(); ++i) {
            double d = std::abs(ctx.c_B - outer.c[i]) + std::abs(outer.u[i]);
            if (d < best) {
                best = d;
                i_star = i;
            }
        }
        x_star = outer.x[i_star];
        c_star = outer.c[i_star];
        n_star = outer.n[i_star];
        outer.x.resize(i_star + 1);
        outer.c.resize(i_star + 1);
        outer.u.resize(i_star + 1);
        outer.n.resize(i_star + 1);
    }
    const double G_cB = ctx.G(ctx.c_B);

    auto c_rim = [&](double x) {
        double y = ctx.sq1 * (x - R);
        return c_R * std::cosh(y) + ctilde * std::sinh(y);
    };
    double z1 = -1.0;
    if (c_rim(0.0) < ctx.cbar && c_rim(R) > ctx.cbar)
        z1 = bisect([&](double x) { return c_rim(x) - ctx.cbar; }, 0.0, R,
                    ctx.cfg.bisect_tol);

    auto p_rim = [&](double x) {
        // p(x) = -int_0^x (x - z) G(c(z)) dz, split at the threshold kink.
        auto f = [&](double z) { return (x - z) * ctx.G(c_rim(z)); };
        if (z1 < 0.0) return -GaussRule::integrate(f, 0.0, x);
        if (x <= z1) return 0.5 * ctx.g_minus * x * x;
        return ctx.g_minus * (x * z1 - 0.5 * z1 * z1) - GaussRule::integrate(f, z1, x);
    };

    const double L = ctx.L;
    Grid grid = Grid::with_spacing(-L, R + L,
                                   std::max(ctx.cfg.h, (R + 2.0 * L) / 200000.0));
    sol.profiles.grid = grid;
    sol.profiles.n.resize(grid.n_nodes);
    sol.profiles.p.resize(grid.n_nodes);
    sol.profiles.c.resize(grid.n_nodes);
    for (std::size_t i = 0; i < grid.n_nodes; ++i) {
        double x = grid.x(i);
        double n, p = 0.0, c;
        if (x <= 0.0) {
            n = std::exp(ctx.g_minus * x / sigma);
            c = c0 * std::exp(interp(core_x, core_I, x) - I0);
        } else if (x < R) {
            n = 1.0;
            p = std::max(0.0, p_rim(x));
            c = c_rim(x);
        } else if (invivo) {
            if (x <= x_star) {
                n = interp(outer.x, outer.n, x);
                c = interp(outer.x, outer.c, x);
            } else {
                n = n_star * std::exp(-G_cB * (x - x_star) / sigma);
                c = ctx.c_B - (ctx.c_B - c_star) * std::exp(-(x - x_star));
            }
        } else {
            n = n_R * std::exp(-G_cB * (x - R) / sigma);
            c = ctx.c_B;
        }
        sol.profiles.n[i] = n;
        sol.profiles.p[i] = p;
        sol.profiles.c[i] = c;
    }

    double int_G;
    if (z1 < 0.0) {
        int_G = GaussRule::integrate([&](double z) { return ctx.G(c_rim(z)); }, 0.0, R);
    } else {
        int_G = -ctx.g_minus * z1 +
                GaussRule::integrate([&](double z) { return ctx.G(c_rim(z)); }, z1, R);
    }
    sol.residuals.velocity_law = std::abs((1.0 - n_R) * sigma - int_G);
    sol.residuals.pressure_bc = std::abs(p_rim(R));
    sol.residuals.rim_integral = std::abs(rim_integral(ctx, A, R, c_R, true));
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < grid.n_nodes; ++i) {
        if (!invivo && grid.x(i + 1) > R) break;  // in vitro c is flat outside
        worst = std::max(worst, sol.profiles.c[i] - sol.profiles.c[i + 1]);
    }
    sol.residuals.c_monotone_viol = std::max(0.0, worst);
    return sol;
}

TWSolution solve_wave(const TWConfig& twcfg, NutrientMode mode) {
    const ModelParams& params = twcfg.params;
    const NumericsConfig& cfg = twcfg.numerics;
    cfg.validate();
    if (!(twcfg.n_R >= 0.0) || !(twcfg.n_R < 1.0))
        throw ConfigError("travelwave: n_R must lie in [0,1)");
    TwCtx ctx(params, cfg);
    if (mode == NutrientMode::InVivo) {
        if (params.consumption(0.0) != 0.0)
            throw ConfigError("travelwave: in vivo waves require psi(0) = 0");
        if (!(ctx.cbar < ctx.c_B / (1.0 + ctx.sq1)))
            throw ConfigError("travelwave: requires c_thresh < c_B/(1+sqrt(psi(1)))");
        if (twcfg.n_R > 0.0) {
            double nbar = threshold_nbar(params, cfg);
            if (twcfg.n_R >= nbar) {
                std::ostringstream os;
                os << "travelwave: n_R = " << twcfg.n_R
                   << " is not below the admissible threshold " << nbar;
                throw ConfigError(os.str());
            }
        }
    }

    // Coarse pass: cheap tolerances to scan the velocity-law curve.
    TwCtx coarse(params, cfg);
    coarse.tols.shoot_step = ctx.L / 400.0;
    coarse.tols.inner_tol = 1e-6;
    const double riccati_coarse = 8.0 * cfg.ode_dt;
    auto psi_coarse = [&](double s) {
        return eval_sigma(coarse, s, twcfg.n_R, mode, riccati_coarse).psi_value;
    };

    double slo = 1e-3;
    double flo = psi_coarse(slo);
    int guard = 0;
    while (flo > 0.0 && guard++ < 12) {
        slo *= 0.25;
        flo = psi_coarse(slo);
    }
    if (flo > 0.0)
        throw SolverError(
            "solve_sigma: velocity-law curve stays positive as sigma -> 0; "
            "no wave found");
    int sign_changes = 0;
    double shi = std::max(2.0 * slo, 0.05);
    double prev_s = slo, prev_f = flo;
    double blo = 0.0, bhi = 0.0;
    guard = 0;
    while (guard++ < 40) {
        double f = psi_coarse(shi);
        if ((f > 0.0) != (prev_f > 0.0)) {
            ++sign_changes;
            if (sign_changes == 1) {
                blo = prev_s;
                bhi = shi;
            }
        }
        if (f > 0.0) break;
        prev_s = shi;
        prev_f = f;
        shi *= 2.0;
    }
    if (sign_changes == 0)
        throw SolverError(
            "solve_sigma: no sign change of the velocity-law curve on the "
            "scanned bracket");
    double s_coarse = bisect(psi_coarse, blo, bhi, 1e-5);

    // Tight pass: full-precision bisection around the coarse root.
    auto psi_tight = [&](double s) {
        return eval_sigma(ctx, s, twcfg.n_R, mode, cfg.ode_dt).psi_value;
    };
    double wlo = std::max(1e-9, s_coarse - 5e-4), whi = s_coarse + 5e-4;
    double fwlo = psi_tight(wlo), fwhi = psi_tight(whi);
    guard = 0;
    while ((fwlo > 0.0) == (fwhi > 0.0) && guard++ < 8) {
        wlo = std::max(1e-9, wlo - 4e-3);
        whi += 4e-3;
        fwlo = psi_tight(wlo);
        fwhi = psi_tight(whi);
    }
    if ((fwlo > 0.0) == (fwhi > 0.0))
        throw SolverError("solve_sigma: tight pass lost the sigma bracket");
    while (whi - wlo > 1e-10) {
        double mid = 0.5 * (wlo + whi);
        double fm = psi_tight(mid);
        if ((fm > 0.0) == (fwlo > 0.0)) {
            wlo = mid;
            fwlo = fm;
        } else {
            whi = mid;
        }
    }
    double sigma = 0.5 * (wlo + whi);

    SigmaEval final_ev = eval_sigma(ctx, sigma, twcfg.n_R, mode, cfg.ode_dt);
    return assemble(ctx, twcfg, sigma, final_ev.rim, final_ev.A, sign_changes);
}

}  // namespace

double riccati_A(double sigma, const ModelParams& params, const NumericsConfig& cfg) {
    if (!(sigma > 0.0)) throw ConfigError("riccati_A: sigma must be positive");
    TwCtx ctx(params, cfg);
    double A = riccati_impl(ctx, sigma, cfg.ode_dt, nullptr, nullptr);
    if (A < -1e-12 || A > ctx.sq1 * (1.0 + 1e-9))
        throw SolverError(
            "riccati_A: slope ratio escaped [0, sqrt(psi(1))]; increase L_trunc", A);
    return A;
}

ShootOutcome classify_shot(double sigma, double c_R, double c_R_prime, double n_R,
                           double R, const ModelParams& params,
                           const NumericsConfig& cfg, bool store_trajectory) {
    TwCtx ctx(params, cfg);
    return shoot_impl(ctx, sigma, c_R, c_R_prime, n_R, R, ctx.tols.shoot_step,
                      store_trajectory);
}

double shoot_B(double sigma, double c_R, double n_R, const ModelParams& params,
               const NumericsConfig& cfg) {
    TwCtx ctx(params, cfg);
    if (!(c_R > ctx.cbar) || !(c_R < ctx.c_B / (1.0 + ctx.psi(n_R))))
        throw ConfigError("shoot_B: c_R outside (c_thresh, c_B/(1+psi(n_R)))");
    return shoot_B_impl(ctx, sigma, c_R, n_R);
}

double threshold_nbar(const ModelParams& params, const NumericsConfig& cfg) {
    TwCtx ctx(params, cfg);
    if (!(ctx.cbar < ctx.c_B / (1.0 + ctx.sq1)))
        throw ConfigError("threshold_nbar: requires c_thresh < c_B/(1+sqrt(psi(1)))");
    auto feasible = [&](double n) {
        double pn = ctx.psi(n);
        double sq = std::sqrt(1.0 + pn);
        if (!(ctx.c_B / sq - ctx.cbar * sq > ctx.cbar * ctx.sq1)) return false;
        double q = pn / ctx.sq1;
        if (q >= 1.0) return false;  // tanh range; such n is inadmissible
        double C = ctx.c_B / (sq * (sq + ctx.sq1));
        double es = std::sqrt((1.0 + q) / (1.0 - q));  // e^{artanh q}
        return C > ctx.cbar * es;
    };
    if (feasible(1.0)) return 1.0;
    const double step = 1.0 / 128.0;
    double lo = -1.0, hi = 1.0;
    for (double n = 1.0 - step; n > 0.0; n -= step) {
        if (feasible(n)) {
            lo = n;
            hi = n + step;
            break;
        }
    }
    if (lo < 0.0)
        throw SolverError("threshold_nbar: no feasible density found above 1/128");
    while (hi - lo > 1e-9) {
        double mid = 0.5 * (lo + hi);
        (feasible(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double solve_cR(double sigma, double R, double n_R, const ModelParams& params,
                const NumericsConfig& cfg) {
    TwCtx ctx(params, cfg);
    double A = riccati_impl(ctx, sigma, cfg.ode_dt, nullptr, nullptr);
    return solve_cR_impl(ctx, A, sigma, R, n_R);
}

double R0_of_nR(double n_R, const ModelParams& params) {
    NumericsConfig cfg;
    TwCtx ctx(params, cfg);
    return R0_impl(ctx, n_R);
}

double R_b(const ModelParams& params, const NumericsConfig& cfg) {
    TwCtx ctx(params, cfg);
    return R_b_impl(ctx);
}

double gamma_eval(double sigma, double R, double s, double c_R,
                  const ModelParams& params, const NumericsConfig& cfg) {
    if (s < 0.0 || s > 1.0) throw ConfigError("gamma_eval: s outside [0,1]");
    TwCtx ctx(params, cfg);
    double A = riccati_impl(ctx, sigma, cfg.ode_dt, nullptr, nullptr);
    return c_R * gamma_tilde(A, R, s, ctx.sq1);
}

double solve_Rsigma(double sigma, double n_R, const ModelParams& params,
                    const NumericsConfig& cfg, NutrientMode mode) {
    TwCtx ctx(params, cfg);
    double A = riccati_impl(ctx, sigma, cfg.ode_dt, nullptr, nullptr);
    return solve_R_impl(ctx, A, sigma, n_R, mode).R;
}

TWSolution solve_sigma(const TWConfig& twcfg) { return solve_wave(twcfg, twcfg.mode); }

TWSolution tw_invitro(const TWConfig& twcfg) {
    const ModelParams& params = twcfg.params;
    if (params.growth.kind() != GrowthLaw::Kind::IgnitionConstant ||
        params.consumption.kind() != ConsumptionLaw::Kind::TwoLevel)
        return solve_wave(twcfg, NutrientMode::InVitro);

    // Closed-form path: the rim width is the large-radius limit of the
    // radial solution; the outer density only rescales the wave speed, so
    // the bulk profiles are computed independently of n_R.
    twcfg.numerics.validate();
    if (!(twcfg.n_R >= 0.0) || !(twcfg.n_R < 1.0))
        throw ConfigError("travelwave: n_R must lie in [0,1)");
    TwCtx ctx(params, twcfg.numerics);
    double g_plus = params.growth.g_plus();
    double g_minus = params.growth.g_minus();
    double lambda = params.consumption.lambda();
    double n_c = params.consumption.n_c();
    double sl = std::sqrt(lambda);
    double beta = std::sqrt(n_c);
    double R = f_of_beta(beta, params, twcfg.numerics.bisect_tol);
    double sigma0 = (std::sqrt((g_plus + g_minus) * g_minus) - g_minus) * R;
    double sigma = sigma0 / (1.0 - twcfg.n_R);
    double y = sl * R;
    double cRp_coef = params.c_B * (beta * std::cosh(y) + std::sinh(y)) /
                      (beta * std::sinh(y) + std::cosh(y));
    double x1 = (1.0 - std::sqrt(g_minus / (g_plus + g_minus))) * R;
    double xi = std::sqrt(lambda * n_c);
    double c0 = params.c_B * std::cosh(y) - cRp_coef * std::sinh(y);

    TWSolution sol;
    sol.sigma = sigma;
    sol.R = R;
    sol.c_R = params.c_B;
    sol.c_R_prime = sl * cRp_coef;
    sol.A_sigma = xi;  // two-level core: the slope ratio saturates at xi
    const double L = ctx.L;
    Grid grid = Grid::with_spacing(-L, R + L, twcfg.numerics.h);
    sol.profiles.grid = grid;
    sol.profiles.n.resize(grid.n_nodes);
    sol.profiles.p.resize(grid.n_nodes);
    sol.profiles.c.resize(grid.n_nodes);
    const double G_cB = params.growth(params.c_B);
    for (std::size_t i = 0; i < grid.n_nodes; ++i) {
        double x = grid.x(i);
        double n, p = 0.0, c;
        if (x <= 0.0) {
            n = std::exp(g_minus * x / sigma);
            c = c0 * std::exp(xi * x);
        } else if (x < R) {
            n = 1.0;
            double z = x - R;
            c = params.c_B * std::cosh(sl * z) + cRp_coef * std::sinh(sl * z);
            if (x <= x1) {
                p = 0.5 * g_minus * x * x;
            } else {
                double w = x - x1;
                p = -0.5 * g_plus * w * w + g_minus * x1 * w + 0.5 * g_minus * x1 * x1;
            }
        } else {
            n = twcfg.n_R * std::exp(-G_cB * (x - R) / sigma);
            c = params.c_B;
        }
        sol.profiles.n[i] = n;
        sol.profiles.p[i] = p;
        sol.profiles.c[i] = c;
    }
    double w = R - x1;
    sol.residuals.pressure_bc =
        std::abs(-0.5 * g_plus * w * w + g_minus * x1 * w + 0.5 * g_minus * x1 * x1);
    sol.residuals.velocity_law = std::abs((1.0 - twcfg.n_R) * sigma - sigma0);
    sol.residuals.rim_integral = std::abs(rim_integral(ctx, xi, R, params.c_B, true));
    sol.residuals.c_monotone_viol = 0.0;
    return sol;
}

}  // namespace necrosim
