#include "necrosim/elliptic.hpp"

#include <algorithm>
#include <cmath>

namespace necrosim {

namespace {

// In-place Thomas elimination for a tridiagonal system. sub[0] and
// sup[n-1] are ignored.
void thomas(std::vector<double>& sub, std::vector<double>& diag,
            std::vector<double>& sup, std::vector<double>& rhs,
            std::vector<double>& out) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        double m = sub[i] / diag[i - 1];
        diag[i] -= m * sup[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    out.resize(n);
    out[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        out[i] = (rhs[i] - sup[i] * out[i + 1]) / diag[i];
    }
}

double psor_omega_for(std::size_t interior, double requested) {
    if (requested > 0.0) return requested;
    return 2.0 / (1.0 + std::sin(M_PI / static_cast<double>(interior + 1)));
}

}  // namespace

Profile solve_poisson_dirichlet(const Grid& grid, const Profile& source,
                                double left_bc, double right_bc) {
    if (source.grid.n_nodes != grid.n_nodes)
        throw ConfigError("solve_poisson_dirichlet: source not on grid");
    const std::size_t n = grid.n_nodes;
    const double h2 = grid.h() * grid.h();
    const std::size_t m = n - 2;
    std::vector<double> sub(m, -1.0), diag(m, 2.0), sup(m, -1.0), rhs(m), u;
    for (std::size_t i = 0; i < m; ++i) rhs[i] = h2 * source[i + 1];
    rhs[0] += left_bc;
    rhs[m - 1] += right_bc;
    thomas(sub, diag, sup, rhs, u);
    Profile out(grid);
    out[0] = left_bc;
    out[n - 1] = right_bc;
    for (std::size_t i = 0; i < m; ++i) out[i + 1] = u[i];
    return out;
}

ObstacleSolution solve_obstacle(const Grid& grid, const Profile& source,
                                const NumericsConfig& cfg,
                                const Profile* initial_guess) {
    if (source.grid.n_nodes != grid.n_nodes)
        throw ConfigError("solve_obstacle: source not on grid");
    const std::size_t n = grid.n_nodes;
    const std::size_t m = n - 2;
    const double h2 = grid.h() * grid.h();
    const double omega = psor_omega_for(m, cfg.psor_omega);

    std::vector<double> p(n, 0.0);
    if (initial_guess && initial_guess->size() == n) {
        for (std::size_t i = 1; i + 1 < n; ++i)
            p[i] = std::max(0.0, initial_guess->values[i]);
    } else {
        // Projected unconstrained solve: cheap and close wherever the
        // constraint is inactive.
        Profile pois = solve_poisson_dirichlet(grid, source, 0.0, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) p[i] = std::max(0.0, pois[i]);
    }

    const double* s = source.values.data();
    const bool adaptive = cfg.psor_omega == 0.0;
    double om = omega;
    double resid = 0.0;
    long iter = 0;
    for (; iter < cfg.max_iter; ++iter) {
        if (adaptive && iter % 50 == 0 && iter > 0) {
            // Once the coincidence set locks in, convergence is governed by
            // the longest free run, not the full grid; retune omega to it.
            std::size_t longest = 1, run = 0;
            for (std::size_t i = 1; i + 1 < n; ++i) {
                if (p[i] > 0.0) {
                    ++run;
                    longest = std::max(longest, run);
                } else {
                    run = 0;
                }
            }
            om = psor_omega_for(longest, 0.0);
        }
        for (std::size_t i = 1; i + 1 < n; ++i) {
            double gs = 0.5 * (p[i - 1] + p[i + 1] + h2 * s[i]);
            double cand = p[i] + om * (gs - p[i]);
            p[i] = cand > 0.0 ? cand : 0.0;
        }
        resid = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            double lap = (p[i - 1] - 2.0 * p[i] + p[i + 1]) / h2;
            double r = std::min(p[i], -lap - s[i]);
            resid = std::max(resid, std::abs(r));
        }
        if (resid <= cfg.psor_tol) break;
    }
    if (resid > cfg.psor_tol)
        throw SolverError("solve_obstacle: PSOR iteration cap exceeded", resid);

    ObstacleSolution sol;
    sol.p = Profile(grid, std::move(p));
    sol.iterations = iter + 1;
    sol.residual_max = resid;
    double pmax = 0.0;
    for (double v : sol.p.values) pmax = std::max(pmax, v);
    const double eps = cfg.eps_coincidence * pmax + 1e-14;
    sol.coincidence.resize(n);
    for (std::size_t i = 0; i < n; ++i) sol.coincidence[i] = sol.p[i] < eps;
    return sol;
}

ComplementarityResidual complementarity_residual(const ObstacleSolution& sol,
                                                 const Profile& source) {
    if (sol.p.grid.n_nodes != source.grid.n_nodes)
        throw ConfigError("complementarity_residual: grids differ");
    const std::size_t n = sol.p.grid.n_nodes;
    const double h2 = sol.p.grid.h() * sol.p.grid.h();
    ComplementarityResidual out;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double pi = sol.p[i];
        double lap = (sol.p[i - 1] - 2.0 * pi + sol.p[i + 1]) / h2;
        out.max_viol_nonneg = std::max(out.max_viol_nonneg, -pi);
        out.max_viol_supersol = std::max(out.max_viol_supersol, lap + source[i]);
        out.max_viol_compl =
            std::max(out.max_viol_compl, std::abs(pi * (lap + source[i])));
    }
    out.max_viol_nonneg = std::max(out.max_viol_nonneg, 0.0);
    out.max_viol_supersol = std::max(out.max_viol_supersol, 0.0);
    return out;
}

Profile solve_nutrient_invitro(const Grid& grid, const Profile& psi_field, double c_B) {
    if (psi_field.grid.n_nodes != grid.n_nodes)
        throw ConfigError("solve_nutrient_invitro: psi not on grid");
    const std::size_t n = grid.n_nodes;
    const double h2 = grid.h() * grid.h();
    const std::size_t m = n - 2;
    std::vector<double> sub(m, -1.0), diag(m), sup(m, -1.0), rhs(m, 0.0), u;
    for (std::size_t i = 0; i < m; ++i) {
        if (psi_field[i + 1] < 0.0)
            throw ConfigError("solve_nutrient_invitro: psi must be non-negative");
        diag[i] = 2.0 + h2 * psi_field[i + 1];
    }
    rhs[0] += c_B;
    rhs[m - 1] += c_B;
    thomas(sub, diag, sup, rhs, u);
    Profile out(grid);
    out[0] = c_B;
    out[n - 1] = c_B;
    for (std::size_t i = 0; i < m; ++i) out[i + 1] = u[i];
    return out;
}

Profile solve_nutrient_invivo(const Grid& grid, double omega_lo, double omega_hi,
                              const Profile& psi_field, double c_B, double L_trunc) {
    if (psi_field.grid.n_nodes != grid.n_nodes)
        throw ConfigError("solve_nutrient_invivo: psi not on grid");
    if (!(omega_hi > omega_lo)) throw ConfigError("solve_nutrient_invivo: empty tumor interval");
    if (!(omega_hi < grid.b) || (omega_hi <= grid.a))
        throw ConfigError("solve_nutrient_invivo: omega_hi must lie inside the grid");
    if (grid.b - omega_hi < L_trunc)
        throw SolverError("solve_nutrient_invivo: right truncation margin too small");
    const bool left_outside = omega_lo > grid.a;
    if (left_outside && omega_lo - grid.a < L_trunc)
        throw SolverError("solve_nutrient_invivo: left truncation margin too small");

    const std::size_t n = grid.n_nodes;
    const double h = grid.h();
    const double h2 = h * h;
    std::vector<double> sub(n, -1.0), diag(n), sup(n, -1.0), rhs(n, 0.0), u;
    for (std::size_t i = 0; i < n; ++i) {
        double x = grid.x(i);
        bool outside = (x >= omega_hi) || (left_outside && x <= omega_lo);
        double psi = psi_field[i];
        if (psi < 0.0) throw ConfigError("solve_nutrient_invivo: psi must be non-negative");
        diag[i] = 2.0 + h2 * (psi + (outside ? 1.0 : 0.0));
        rhs[i] = outside ? h2 * c_B : 0.0;
    }
    // Left end: Robin c' = sqrt(psi) c via a centered ghost node,
    // matching the exponential decay of the solution for frozen psi.
    double root_psi = std::sqrt(std::max(0.0, psi_field[0]));
    diag[0] += 2.0 * h * root_psi;
    sup[0] = -2.0;
    // Right end: Dirichlet c = c_B.
    sub[n - 1] = 0.0;
    diag[n - 1] = 1.0;
    rhs[n - 1] = c_B;
    thomas(sub, diag, sup, rhs, u);
    return Profile(grid, std::move(u));
}

}  // namespace necrosim
