#include "necrosim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace necrosim {

namespace {

constexpr double kDensityCap = 1.0 - 1e-9;  // outside/core densities stay below 1

// Derivative of the quadratic through (x0,y0),(x1,y1),(x2,y2) at xq.
double quad_fit_derivative(double x0, double y0, double x1, double y1, double x2,
                           double y2, double xq) {
    double d0 = y0 * (2.0 * xq - x1 - x2) / ((x0 - x1) * (x0 - x2));
    double d1 = y1 * (2.0 * xq - x0 - x2) / ((x1 - x0) * (x1 - x2));
    double d2 = y2 * (2.0 * xq - x0 - x1) / ((x2 - x0) * (x2 - x1));
    return d0 + d1 + d2;
}

struct Layout {
    std::size_t iL = 0, iR = 0;  // first/last node strictly inside (a, b)
    bool left_virtual = false;   // bulk extends past the left grid edge
};

Layout layout_of(const SimState& state) {
    const Grid& g = state.n.grid;
    const long n = static_cast<long>(g.n_nodes);
    const double h = g.h();
    Layout lay;
    lay.left_virtual = state.a < g.a;

    long iL = 0;
    if (!lay.left_virtual) {
        iL = static_cast<long>(std::floor((state.a - g.a) / h)) + 1;
        iL = std::clamp(iL, 0L, n - 1);
        while (iL > 0 && g.x(iL - 1) > state.a) --iL;
        while (iL < n && g.x(iL) <= state.a) ++iL;
    }
    long iR = static_cast<long>(std::ceil((state.b - g.a) / h)) - 1;
    iR = std::clamp(iR, 0L, n - 1);
    while (iR + 1 < n && g.x(iR + 1) < state.b) ++iR;
    while (iR >= 0 && g.x(iR) >= state.b) --iR;
    if (iR < iL + 2)
        throw SolverError("simulator: tumor bulk thinner than three grid nodes");
    lay.iL = static_cast<std::size_t>(iL);
    lay.iR = static_cast<std::size_t>(iR);
    return lay;
}

}  // namespace

double OuterDensitySpec::eval(double x) const {
    if (tabulated) {
        if (table_x.empty()) return 0.0;
        if (x <= table_x.front()) return table_n.front();
        if (x >= table_x.back()) return table_n.back();
        auto it = std::upper_bound(table_x.begin(), table_x.end(), x);
        std::size_t i = static_cast<std::size_t>(it - table_x.begin());
        double f = (x - table_x[i - 1]) / (table_x[i] - table_x[i - 1]);
        return table_n[i - 1] + f * (table_n[i] - table_n[i - 1]);
    }
    if (amplitude == 0.0) return 0.0;
    return amplitude * std::exp(-decay * (std::abs(x - center) - offset));
}

SimState init_from_config(const SimConfig& cfg) {
    cfg.numerics.validate();
    if (!(cfg.patch_lo < cfg.patch_hi))
        throw ConfigError("simulator: patch_lo must be below patch_hi");
    if (cfg.patch_lo < cfg.grid_lo || cfg.patch_hi > cfg.grid_hi)
        throw ConfigError("simulator: initial patch must lie inside the grid");
    Grid grid = Grid::with_spacing(cfg.grid_lo, cfg.grid_hi, cfg.numerics.h);
    SimState st;
    st.t = 0.0;
    st.a = cfg.patch_lo;
    st.b = cfg.patch_hi;
    st.n = Profile(grid);
    st.p = Profile(grid);
    st.c = Profile(grid);
    for (std::size_t i = 0; i < grid.n_nodes; ++i) {
        double x = grid.x(i);
        if (x >= cfg.patch_lo && x <= cfg.patch_hi) {
            st.n[i] = 1.0;
        } else {
            double v = cfg.outer.eval(x);
            if (v < 0.0) throw ConfigError("simulator: outer density must be >= 0");
            if (v >= 1.0)
                throw ConfigError(
                    "simulator: outer density reaches 1; saturated islands cannot "
                    "form outside the bulk");
            st.n[i] = v;
        }
    }
    return st;
}

SimState step(const SimState& state, const SimConfig& cfg, double dt) {
    const Grid& grid = state.n.grid;
    const std::size_t N = grid.n_nodes;
    const ModelParams& mp = cfg.params;
    if (!(state.a < state.b)) throw SolverError("simulator: fronts collided");
    if (state.b >= grid.b - 2.0 * grid.h())
        throw SolverError("simulator: right front reached the domain boundary");

    Layout lay = layout_of(state);
    if (!lay.left_virtual && state.a <= grid.a + 2.0 * grid.h())
        throw SolverError("simulator: left front reached the domain boundary");

    SimState next = state;
    next.psor_iterations = 0;

    // (1) Nutrient solve.
    if (mp.nutrient_mode == NutrientMode::InVitro) {
        if (lay.left_virtual)
            throw ConfigError(
                "simulator: in vitro runs need both fronts inside the grid");
        std::size_t jL = lay.iL - 1, jR = lay.iR + 1;
        Grid sub(grid.x(jL), grid.x(jR), jR - jL + 1);
        Profile psi(sub);
        for (std::size_t i = jL; i <= jR; ++i)
            psi[i - jL] = mp.consumption(state.n[i]);
        Profile csub = solve_nutrient_invitro(sub, psi, mp.c_B);
        for (std::size_t i = 0; i < N; ++i) next.c[i] = mp.c_B;
        for (std::size_t i = jL; i <= jR; ++i) next.c[i] = csub[i - jL];
    } else {
        Profile psi(grid);
        for (std::size_t i = 0; i < N; ++i) psi[i] = mp.consumption(state.n[i]);
        double omega_lo = lay.left_virtual ? grid.a - 1.0 : state.a;
        next.c = solve_nutrient_invivo(grid, omega_lo, state.b, psi, mp.c_B,
                                       cfg.numerics.L_trunc);
    }

    // (2) Obstacle solve for the pressure on the bulk.
    std::size_t jL = lay.left_virtual ? 0 : lay.iL - 1;
    std::size_t jR = lay.iR + 1;
    Grid sub(grid.x(jL), grid.x(jR), jR - jL + 1);
    Profile source(sub);
    for (std::size_t i = jL; i <= jR; ++i)
        source[i - jL] = mp.growth(next.c[i]);
    Profile warm(sub);
    for (std::size_t i = jL; i <= jR; ++i) warm[i - jL] = state.p[i];
    ObstacleSolution ob = solve_obstacle(sub, source, cfg.numerics, &warm);
    next.psor_iterations = ob.iterations;
    for (std::size_t i = 0; i < N; ++i) next.p[i] = 0.0;
    for (std::size_t i = jL; i <= jR; ++i) next.p[i] = ob.p[i - jL];

    // (3) Necrotic core: maximal coincidence runs of at least two interior
    // nodes (single-node runs are grid chatter).
    next.core.clear();
    {
        std::size_t m = sub.n_nodes;
        std::size_t i = 1;
        while (i + 1 < m) {
            if (ob.coincidence[i]) {
                std::size_t j = i;
                while (j + 1 < m - 1 && ob.coincidence[j + 1]) ++j;
                if (j - i + 1 >= 2) {
                    bool at_left = (i == 1);
                    bool at_right = (j == m - 2);
                    if ((at_left && !lay.left_virtual) || at_right) {
                        throw SolverError(
                            "simulator: necrotic core touched the bulk boundary; "
                            "the model assumes the core stays interior");
                    }
                    next.core.push_back({sub.x(i), sub.x(j)});
                }
                i = j + 1;
            } else {
                ++i;
            }
        }
    }

    // (4) Density update outside the saturated rim, then re-pin the rim.
    auto in_core = [&](double x) {
        for (const auto& iv : next.core)
            if (x >= iv.lo && x <= iv.hi) return true;
        return false;
    };
    for (std::size_t i = 0; i < N; ++i) {
        double x = grid.x(i);
        bool inside = (lay.left_virtual || x > state.a) && x < state.b;
        if (inside && !in_core(x)) {
            next.n[i] = 1.0;
        } else {
            double v = state.n[i] + dt * mp.growth(next.c[i]) * state.n[i];
            next.n[i] = std::clamp(v, 0.0, kDensityCap);
        }
    }

    // (5) Front speeds via a quadratic fit through the three interior nodes
    // nearest each front, with the outer-density trace taken at the first
    // node strictly outside.
    {
        std::size_t i2 = lay.iR, i1 = lay.iR - 1, i0 = lay.iR - 2;
        double dp = quad_fit_derivative(grid.x(i0), next.p[i0], grid.x(i1),
                                        next.p[i1], grid.x(i2), next.p[i2], state.b);
        std::size_t k = lay.iR + 1;
        while (k < N && grid.x(k) <= state.b) ++k;
        double n_out = k < N ? next.n[k] : 0.0;
        next.speed_right = -dp / (1.0 - n_out);
    }
    if (!lay.left_virtual) {
        std::size_t i0 = lay.iL, i1 = lay.iL + 1, i2 = lay.iL + 2;
        double dp = quad_fit_derivative(grid.x(i0), next.p[i0], grid.x(i1),
                                        next.p[i1], grid.x(i2), next.p[i2], state.a);
        long k = static_cast<long>(lay.iL) - 1;
        while (k >= 0 && grid.x(k) >= state.a) --k;
        double n_out = k >= 0 ? next.n[static_cast<std::size_t>(k)] : 0.0;
        next.speed_left = dp / (1.0 - n_out);
    } else {
        next.speed_left = 0.0;
    }

    // (6)-(7) Advance the fronts; newly invaded nodes saturate, nodes left
    // behind by a retreating front drop just below saturation.
    double a_new = lay.left_virtual ? state.a : state.a - next.speed_left * dt;
    double b_new = state.b + next.speed_right * dt;
    if (!(a_new < b_new)) throw SolverError("simulator: fronts collided");
    for (std::size_t i = 0; i < N; ++i) {
        double x = grid.x(i);
        bool was_inside = (lay.left_virtual || x > state.a) && x < state.b;
        bool now_inside = (lay.left_virtual || x > a_new) && x < b_new;
        if (!was_inside && now_inside) next.n[i] = 1.0;
        if (was_inside && !now_inside)
            next.n[i] = std::min(next.n[i], kDensityCap);
    }
    next.a = a_new;
    next.b = b_new;
    next.t = state.t + dt;
    return next;
}

Trajectory run(const SimConfig& cfg) {
    Trajectory traj;
    SimState st = init_from_config(cfg);
    const double dt = cfg.numerics.dt;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    auto sample_density = [&](const SimState& s, double x) {
        const Grid& g = s.n.grid;
        if (x <= g.a) return s.n[0];
        if (x >= g.b) return s.n[g.n_nodes - 1];
        auto i = static_cast<std::size_t>((x - g.a) / g.h());
        if (i + 1 >= g.n_nodes) i = g.n_nodes - 2;
        double f = (x - g.x(i)) / g.h();
        return s.n[i] + f * (s.n[i + 1] - s.n[i]);
    };
    auto record_row = [&](const SimState& s) {
        TrajectoryRow row;
        row.t = s.t;
        row.a = s.a;
        row.b = s.b;
        row.core_lo = s.core.empty() ? nan : s.core.front().lo;
        row.core_hi = s.core.empty() ? nan : s.core.back().hi;
        row.speed_left = s.speed_left;
        row.speed_right = s.speed_right;
        for (double x : cfg.probes) row.probe_n.push_back(sample_density(s, x));
        traj.rows.push_back(row);
    };
    auto record_snapshot = [&](const SimState& s) {
        traj.snapshots.push_back({s.t, s.n, s.p, s.c});
    };

    record_row(st);
    record_snapshot(st);
    double next_snapshot = cfg.snapshot_every > 0.0
                               ? cfg.snapshot_every
                               : std::numeric_limits<double>::infinity();
    long steps = static_cast<long>(std::ceil(cfg.t_end / dt - 1e-9));
    for (long k = 0; k < steps; ++k) {
        st = step(st, cfg, dt);
        record_row(st);
        if (st.t >= next_snapshot - 1e-12) {
            record_snapshot(st);
            next_snapshot += cfg.snapshot_every;
        }
    }
    for (double x : cfg.probes) traj.events.push_back(detect_events(traj, x));
    return traj;
}

EventRecord detect_events(const Trajectory& traj, double x) {
    EventRecord ev;
    ev.probe_x = x;
    if (traj.rows.empty()) return ev;
    const auto& rows = traj.rows;
    if (x >= rows[0].a && x <= rows[0].b) ev.t0 = 0.0;
    for (std::size_t i = 1; i < rows.size() && !ev.t0; ++i) {
        const auto& q = rows[i - 1];
        const auto& r = rows[i];
        if (q.b < x && r.b >= x) {
            ev.t0 = q.t + (r.t - q.t) * (x - q.b) / (r.b - q.b);
        } else if (q.a > x && r.a <= x) {
            ev.t0 = q.t + (r.t - q.t) * (q.a - x) / (q.a - r.a);
        }
    }
    for (std::size_t i = 0; i < rows.size() && !ev.t1; ++i) {
        const auto& r = rows[i];
        if (std::isnan(r.core_lo) || x < r.core_lo || x > r.core_hi) continue;
        if (i == 0) {
            ev.t1 = rows[0].t;
            break;
        }
        const auto& q = rows[i - 1];
        if (!std::isnan(q.core_lo) && x >= q.core_lo && x <= q.core_hi) {
            ev.t1 = q.t;  // already covered at the previous row
        } else if (!std::isnan(q.core_hi) && x > q.core_hi && r.core_hi > q.core_hi) {
            ev.t1 = q.t + (r.t - q.t) * (x - q.core_hi) / (r.core_hi - q.core_hi);
        } else if (!std::isnan(q.core_lo) && x < q.core_lo && r.core_lo < q.core_lo) {
            ev.t1 = q.t + (r.t - q.t) * (q.core_lo - x) / (q.core_lo - r.core_lo);
        } else {
            ev.t1 = r.t;  // core just appeared over the probe
        }
    }
    return ev;
}

}  // namespace necrosim
