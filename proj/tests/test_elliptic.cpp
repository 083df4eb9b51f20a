#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "necrosim/analytic.hpp"
#include "necrosim/elliptic.hpp"
#include "necrosim/sampling.hpp"

using namespace necrosim;

namespace {

Profile constant_source(const Grid& g, double v) { return Profile(g, std::vector<double>(g.n_nodes, v)); }

double sup_diff(const Profile& u, auto&& exact) {
    double err = 0.0;
    for (std::size_t i = 0; i < u.grid.n_nodes; ++i)
        err = std::max(err, std::abs(u[i] - exact(u.grid.x(i))));
    return err;
}

}  // namespace

TEST_CASE("poisson: unit source parabola") {
    Grid g(0.0, 1.0, 201);
    Profile u = solve_poisson_dirichlet(g, constant_source(g, 1.0), 0.0, 0.0);
    // Piecewise-quadratic solution: the three-point scheme is exact.
    CHECK(sup_diff(u, [](double x) { return 0.5 * x * (1.0 - x); }) < 1e-13);
    double umax = *std::max_element(u.values.begin(), u.values.end());
    CHECK(umax == doctest::Approx(0.125).epsilon(1e-10));
}

TEST_CASE("poisson: zero source, sign flip") {
    Grid g(0.0, 1.0, 101);
    Profile z = solve_poisson_dirichlet(g, constant_source(g, 0.0), 0.0, 0.0);
    for (double v : z.values) CHECK(v == doctest::Approx(0.0).epsilon(1e-14));
    Profile m = solve_poisson_dirichlet(g, constant_source(g, -1.0), 0.0, 0.0);
    CHECK(sup_diff(m, [](double x) { return -0.5 * x * (1.0 - x); }) < 1e-13);
    CHECK(*std::min_element(m.values.begin(), m.values.end()) < 0.0);
}

TEST_CASE("obstacle: fully negative source forces full contact") {
    Grid g(0.0, 1.0, 201);
    NumericsConfig cfg;
    ObstacleSolution sol = solve_obstacle(g, constant_source(g, -1.0), cfg);
    for (std::size_t i = 0; i < g.n_nodes; ++i) {
        CHECK(sol.p[i] == 0.0);
        CHECK(static_cast<bool>(sol.coincidence[i]));
    }
}

TEST_CASE("obstacle: positive source never touches the obstacle") {
    Grid g(0.0, 1.0, 201);
    NumericsConfig cfg;
    ObstacleSolution sol = solve_obstacle(g, constant_source(g, 1.0), cfg);
    Profile pois = solve_poisson_dirichlet(g, constant_source(g, 1.0), 0.0, 0.0);
    for (std::size_t i = 1; i + 1 < g.n_nodes; ++i) {
        CHECK(sol.p[i] == doctest::Approx(pois[i]).epsilon(1e-9));
        CHECK_FALSE(static_cast<bool>(sol.coincidence[i]));
    }
}

TEST_CASE("complementarity residual: converged, contact, corrupted") {
    Grid g(0.0, 1.0, 201);
    NumericsConfig cfg;
    ObstacleSolution sol = solve_obstacle(g, constant_source(g, 1.0), cfg);
    ComplementarityResidual r = complementarity_residual(sol, constant_source(g, 1.0));
    CHECK(r.max_viol_nonneg <= cfg.psor_tol);
    CHECK(r.max_viol_supersol <= cfg.psor_tol);
    CHECK(r.max_viol_compl <= cfg.psor_tol);

    ObstacleSolution zero;
    zero.p = Profile(g, 0.0);
    zero.coincidence.assign(g.n_nodes, 1);
    ComplementarityResidual rz = complementarity_residual(zero, constant_source(g, -1.0));
    CHECK(rz.max_viol_nonneg == 0.0);
    CHECK(rz.max_viol_supersol == 0.0);
    CHECK(rz.max_viol_compl == 0.0);

    ObstacleSolution bad = sol;
    bad.p[g.n_nodes / 2] = -1e-3;
    ComplementarityResidual rb = complementarity_residual(bad, constant_source(g, 1.0));
    CHECK(rb.max_viol_nonneg >= 1e-3);
}

TEST_CASE("nutrient in vitro: zero consumption and cosh profile") {
    Grid g(-1.0, 1.0, 401);
    Profile zero_psi(g, 0.0);
    Profile c0 = solve_nutrient_invitro(g, zero_psi, 1.0);
    for (double v : c0.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));

    double lambda = 1.0, R = 1.0;
    Profile psi(g, lambda);
    Profile c = solve_nutrient_invitro(g, psi, 1.0);
    double h = g.h();
    double err = sup_diff(c, [&](double x) {
        return std::cosh(std::sqrt(lambda) * x) / std::cosh(std::sqrt(lambda) * R);
    });
    CHECK(err <= 5.0 * h * h);
    for (double v : c.values) {
        CHECK(v > 0.0);
        CHECK(v <= 1.0 + 1e-14);
    }
}

TEST_CASE("nutrient in vitro: piecewise core consumption matches the closed form") {
    ModelParams p = testutil::section3_params();
    double R = 2.0 * testutil::kR1;
    CoreSolution core = solve_core(R, p);
    PiecewiseNutrient exact = nutrient_profile(R, p);
    Grid g = Grid::with_spacing(-R, R, 2e-3);
    Profile psi = sample_cell_averaged(
        g, [&](double x) { return std::abs(x) < core.r ? 0.25 : 1.0; },
        {-core.r, core.r});
    Profile c = solve_nutrient_invitro(g, psi, p.c_B);
    double h = g.h();
    CHECK(sup_diff(c, exact) <= 5.0 * h * h);
}

TEST_CASE("nutrient in vivo: no cells means equilibrium everywhere") {
    Grid g(-5.0, 5.0, 801);
    Profile psi(g, 0.0);
    Profile c = solve_nutrient_invivo(g, -1.0, 1.0, psi, 1.0, 3.0);
    for (double v : c.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("nutrient in vivo: truncation margins are enforced") {
    Grid g(-5.0, 5.0, 801);
    Profile psi(g, 0.0);
    CHECK_THROWS_AS(solve_nutrient_invivo(g, -1.0, 4.5, psi, 1.0, 3.0), SolverError);
    CHECK_THROWS_AS(solve_nutrient_invivo(g, -4.5, 1.0, psi, 1.0, 3.0), SolverError);
}

TEST_CASE("nutrient in vivo: insensitive to doubling the left truncation") {
    // Necrotic-tail style field: the tumor spills past the left edge.
    double sigma = 0.8, g_minus = 2.0, R = 1.5;
    auto psi_of = [&](double x) {
        return x < R ? std::min(1.0, std::exp(g_minus * x / sigma)) : 0.0;
    };
    double h = 5e-3;
    Grid g1 = Grid::with_spacing(-10.0, 10.0, h);
    Grid g2 = Grid::with_spacing(-20.0, 10.0, h);
    Profile psi1 = sample_cell_averaged(g1, psi_of, {R});
    Profile psi2 = sample_cell_averaged(g2, psi_of, {R});
    Profile c1 = solve_nutrient_invivo(g1, -11.0, R, psi1, 1.0, 8.0);
    Profile c2 = solve_nutrient_invivo(g2, -21.0, R, psi2, 1.0, 8.0);
    std::size_t off = g2.n_nodes - g1.n_nodes;
    CHECK(std::abs(c2[off] - c1[0]) < 1e-8);
}

TEST_CASE("obstacle comparison principle on random piecewise-constant sources") {
    Grid g(0.0, 1.0, 201);
    NumericsConfig cfg;
    std::uniform_real_distribution<double> base(-2.0, 2.0), bump(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        Profile s2(g), s1(g);
        const int blocks = 8;
        double v2[blocks], v1[blocks];
        for (int b = 0; b < blocks; ++b) {
            v2[b] = base(testutil::rng());
            v1[b] = v2[b] + bump(testutil::rng());
        }
        for (std::size_t i = 0; i < g.n_nodes; ++i) {
            int b = std::min<int>(blocks - 1,
                                  static_cast<int>(g.x(i) * blocks));
            s2[i] = v2[b];
            s1[i] = v1[b];
        }
        ObstacleSolution p1 = solve_obstacle(g, s1, cfg);
        ObstacleSolution p2 = solve_obstacle(g, s2, cfg);
        for (std::size_t i = 0; i < g.n_nodes; ++i)
            CHECK(p1.p[i] >= p2.p[i] - 1e-10);
    }
}

TEST_CASE("nutrient comparison: heavier consumption lowers the profile") {
    Grid g(-1.0, 1.0, 201);
    std::uniform_real_distribution<double> base(0.0, 1.5), bump(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        Profile psi1(g), psi2(g);
        for (std::size_t i = 0; i < g.n_nodes; ++i) {
            psi1[i] = base(testutil::rng());
            psi2[i] = psi1[i] + bump(testutil::rng());
        }
        Profile c1 = solve_nutrient_invitro(g, psi1, 1.0);
        Profile c2 = solve_nutrient_invitro(g, psi2, 1.0);
        for (std::size_t i = 0; i < g.n_nodes; ++i)
            CHECK(c1[i] >= c2[i] - 1e-13);
    }
}

TEST_CASE("mesh refinement is second order against closed forms") {
    NumericsConfig cfg;
    auto obstacle_err = [&](double h) {
        Grid g = Grid::with_spacing(0.0, 1.0, h);
        Profile s(g);
        for (std::size_t i = 0; i < g.n_nodes; ++i)
            s[i] = M_PI * M_PI * std::sin(M_PI * g.x(i));
        ObstacleSolution sol = solve_obstacle(g, s, cfg);
        return sup_diff(sol.p, [](double x) { return std::sin(M_PI * x); });
    };
    double r_obstacle = obstacle_err(5e-3) / obstacle_err(2.5e-3);
    CHECK(r_obstacle >= 3.2);
    CHECK(r_obstacle <= 4.8);

    auto nutrient_err = [&](double h) {
        Grid g = Grid::with_spacing(-1.0, 1.0, h);
        Profile psi(g, 2.0);
        Profile c = solve_nutrient_invitro(g, psi, 1.0);
        return sup_diff(c, [&](double x) {
            return std::cosh(std::sqrt(2.0) * x) / std::cosh(std::sqrt(2.0));
        });
    };
    double r_nutrient = nutrient_err(5e-3) / nutrient_err(2.5e-3);
    CHECK(r_nutrient >= 3.2);
    CHECK(r_nutrient <= 4.8);
}

TEST_CASE("obstacle: converged output satisfies the complementarity bounds") {
    Grid g(0.0, 1.0, 301);
    NumericsConfig cfg;
    std::uniform_real_distribution<double> dist(-1.5, 1.5);
    for (int trial = 0; trial < 20; ++trial) {
        Profile s(g);
        for (std::size_t i = 0; i < g.n_nodes; ++i) {
            int b = std::min(5, static_cast<int>(g.x(i) * 6));
            if (i == 0 || b != std::min(5, static_cast<int>(g.x(i - 1) * 6)))
                s[i] = dist(testutil::rng());
            else
                s[i] = s[i - 1];
        }
        ObstacleSolution sol = solve_obstacle(g, s, cfg);
        ComplementarityResidual r = complementarity_residual(sol, s);
        double scale = 1.0 + 1.5;  // |p| (max source) slack on the product form
        CHECK(r.max_viol_nonneg <= cfg.psor_tol);
        CHECK(r.max_viol_supersol <= cfg.psor_tol * scale);
        CHECK(r.max_viol_compl <= cfg.psor_tol * scale);
    }
}
