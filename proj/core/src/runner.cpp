#include "necrosim/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include <json.hpp>

#include "necrosim/analytic.hpp"
#include "necrosim/csv.hpp"
#include "necrosim/svg.hpp"
#include "necrosim/travelwave.hpp"

namespace necrosim {

namespace {

namespace fs = std::filesystem;

std::string opt_cell(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

void run_simulate(const RunConfig& cfg, const fs::path& dir, bool svg) {
    SimConfig sc = to_sim_config(cfg);
    Trajectory traj = run(sc);

    {
        CsvWriter w((dir / "trajectory.csv").string(),
                    {"t", "a", "b", "core_lo", "core_hi", "speed_left", "speed_right"});
        for (const auto& r : traj.rows)
            w.write_row({r.t, r.a, r.b, r.core_lo, r.core_hi, r.speed_left,
                         r.speed_right});
    }
    if (!cfg.probes.empty()) {
        std::vector<std::string> header{"t"};
        for (double x : cfg.probes) header.push_back("n_at_" + format_double(x));
        CsvWriter w((dir / "probes.csv").string(), header);
        for (const auto& r : traj.rows) {
            std::vector<double> row{r.t};
            row.insert(row.end(), r.probe_n.begin(), r.probe_n.end());
            w.write_row(row);
        }
        CsvWriter e((dir / "events.csv").string(), {"probe_x", "t0", "t1"});
        for (const auto& ev : traj.events)
            e.write_row_mixed({format_double(ev.probe_x), opt_cell(ev.t0),
                               opt_cell(ev.t1)});
    } else {
        CsvWriter e((dir / "events.csv").string(), {"probe_x", "t0", "t1"});
    }
    for (const auto& snap : traj.snapshots) {
        CsvWriter w((dir / ("profiles_t" + format_double(snap.t) + ".csv")).string(),
                    {"x", "n", "p", "c"});
        const Grid& g = snap.n.grid;
        for (std::size_t i = 0; i < g.n_nodes; ++i)
            w.write_row({g.x(i), snap.n[i], snap.p[i], snap.c[i]});
    }
    if (svg) {
        for (const auto& snap : traj.snapshots) {
            const Grid& g = snap.n.grid;
            SvgSeries sn{"n", {}, {}}, sp{"p", {}, {}}, scs{"c", {}, {}};
            for (std::size_t i = 0; i < g.n_nodes; ++i) {
                double x = g.x(i);
                sn.x.push_back(x);
                sn.y.push_back(snap.n[i]);
                sp.x.push_back(x);
                sp.y.push_back(snap.p[i]);
                scs.x.push_back(x);
                scs.y.push_back(snap.c[i]);
            }
            write_line_chart(
                (dir / ("profiles_t" + format_double(snap.t) + ".svg")).string(),
                "profiles at t = " + format_double(snap.t), "x", "value",
                {sn, sp, scs});
        }
        SvgSeries sa{"a", {}, {}}, sb{"b", {}, {}}, slo{"core_lo", {}, {}},
            shi{"core_hi", {}, {}};
        for (const auto& r : traj.rows) {
            sa.x.push_back(r.t);
            sa.y.push_back(r.a);
            sb.x.push_back(r.t);
            sb.y.push_back(r.b);
            slo.x.push_back(r.t);
            slo.y.push_back(r.core_lo);
            shi.x.push_back(r.t);
            shi.y.push_back(r.core_hi);
        }
        write_line_chart((dir / "boundaries.svg").string(), "bulk and core boundaries",
                         "t", "x", {sa, sb, slo, shi});
        if (!cfg.probes.empty()) {
            std::vector<SvgSeries> series;
            for (std::size_t k = 0; k < cfg.probes.size(); ++k) {
                SvgSeries s{"x = " + format_double(cfg.probes[k]), {}, {}};
                for (const auto& r : traj.rows) {
                    s.x.push_back(r.t);
                    s.y.push_back(r.probe_n[k]);
                }
                series.push_back(std::move(s));
            }
            write_line_chart((dir / "probes.svg").string(), "density at probes", "t",
                             "n", series);
        }
    }
}

void run_analytic(const RunConfig& cfg, const fs::path& dir, bool svg) {
    CriticalRadii crit = critical_radii(cfg.params);
    {
        CsvWriter w((dir / "criticals.csv").string(), {"R0", "R1", "alpha"});
        w.write_row({crit.R0, crit.R1, crit.alpha});
    }
    CsvWriter w((dir / "analytic_summary.csv").string(),
                {"R", "case", "r", "Rbar", "beta", "x1", "speed", "C_R", "above_R0",
                 "above_R1"});
    std::vector<double> Rs = cfg.analytic.R_values;
    for (double R : Rs) {
        CoreSolution core = solve_core(R, cfg.params, cfg.numerics.bisect_tol);
        PiecewisePressure p = pressure_profile(R, cfg.params, cfg.numerics.bisect_tol);
        double speed = boundary_speed(R, cfg.params, cfg.numerics.bisect_tol);
        w.write_row({R, static_cast<double>(core.case_tag), core.r, core.Rbar,
                     core.beta, core.x1, speed, p.C_of_R,
                     R > crit.R0 ? 1.0 : 0.0, R > crit.R1 ? 1.0 : 0.0});
    }
    if (svg && !Rs.empty()) {
        SvgSeries sv{"speed", {}, {}};
        for (double R : Rs) {
            sv.x.push_back(R);
            sv.y.push_back(boundary_speed(R, cfg.params, cfg.numerics.bisect_tol));
        }
        write_line_chart((dir / "speed_vs_R.svg").string(), "front speed", "R",
                         "dR/dt", {sv});
        double R = Rs.back();
        PiecewisePressure pp = pressure_profile(R, cfg.params, cfg.numerics.bisect_tol);
        PiecewiseNutrient cc = nutrient_profile(R, cfg.params, cfg.numerics.bisect_tol);
        SvgSeries sp{"p", {}, {}}, scs{"c", {}, {}};
        int npts = 801;
        for (int i = 0; i < npts; ++i) {
            double x = -R + 2.0 * R * i / (npts - 1);
            sp.x.push_back(x);
            sp.y.push_back(pp(x));
            scs.x.push_back(x);
            scs.y.push_back(cc(x));
        }
        write_line_chart((dir / "profiles_R_last.svg").string(),
                         "profiles at R = " + format_double(R), "x", "value",
                         {sp, scs});
    }
}

void run_radius_evolve(const RunConfig& cfg, const fs::path& dir, bool svg) {
    RadiusTrajectory traj =
        evolve_radius(cfg.radius_evolve.R_init, cfg.radius_evolve.t_end, cfg.params,
                      cfg.numerics.ode_dt, cfg.numerics.bisect_tol);
    // Decimate the core map so event interpolation stays cheap.
    std::size_t stride = std::max<std::size_t>(1, traj.t.size() / 2000);
    std::vector<double> ts, Rs, rs;
    for (std::size_t i = 0; i < traj.t.size(); i += stride) {
        ts.push_back(traj.t[i]);
        Rs.push_back(traj.R[i]);
        rs.push_back(solve_core(traj.R[i], cfg.params, cfg.numerics.bisect_tol).r);
    }
    {
        CsvWriter w((dir / "radius_trajectory.csv").string(),
                    {"t", "R", "speed", "r", "Rbar", "case"});
        for (std::size_t i = 0; i < ts.size(); ++i) {
            CoreSolution core = solve_core(Rs[i], cfg.params, cfg.numerics.bisect_tol);
            w.write_row({ts[i], Rs[i],
                         boundary_speed(Rs[i], cfg.params, cfg.numerics.bisect_tol),
                         core.r, core.Rbar, static_cast<double>(core.case_tag)});
        }
    }
    {
        CsvWriter e((dir / "events.csv").string(), {"probe_x", "t0", "t1"});
        auto crossing = [&](const std::vector<double>& vals, double x)
            -> std::optional<double> {
            if (vals.front() >= x) return ts.front();
            for (std::size_t i = 1; i < vals.size(); ++i) {
                if (vals[i] >= x) {
                    double f = (x - vals[i - 1]) / (vals[i] - vals[i - 1]);
                    return ts[i - 1] + f * (ts[i] - ts[i - 1]);
                }
            }
            return std::nullopt;
        };
        for (double x : cfg.probes)
            e.write_row_mixed({format_double(x), opt_cell(crossing(Rs, x)),
                               opt_cell(crossing(rs, x))});
    }
    if (svg) {
        SvgSeries sR{"R", ts, Rs}, sr{"r", ts, rs};
        write_line_chart((dir / "radius.svg").string(), "radius evolution", "t", "R",
                         {sR, sr});
        if (!cfg.probes.empty()) {
            std::vector<SvgSeries> series;
            for (double x : cfg.probes) {
                std::vector<double> n =
                    density_history(x, traj, cfg.params, cfg.numerics.bisect_tol);
                SvgSeries s{"x = " + format_double(x), traj.t, n};
                series.push_back(std::move(s));
            }
            write_line_chart((dir / "probes.svg").string(), "density at probes", "t",
                             "n", series);
        }
    }
}

void run_travelwave(const RunConfig& cfg, const fs::path& dir, bool svg) {
    CsvWriter w((dir / "tw_summary.csv").string(),
                {"n_R", "sigma", "R", "c_R", "c_R_prime", "resid_vlaw"});
    for (double n_R : cfg.travelwave.n_R) {
        TWConfig tw;
        tw.n_R = n_R;
        tw.mode = cfg.travelwave.mode;
        tw.params = cfg.params;
        tw.numerics = cfg.numerics;
        TWSolution sol = cfg.travelwave.mode == NutrientMode::InVitro
                             ? tw_invitro(tw)
                             : solve_sigma(tw);
        w.write_row({n_R, sol.sigma, sol.R, sol.c_R, sol.c_R_prime,
                     sol.residuals.velocity_law});
        std::string tag = "tw_profile_nR" + format_double(n_R);
        CsvWriter pw((dir / (tag + ".csv")).string(), {"x", "n", "p", "c"});
        const Grid& g = sol.profiles.grid;
        for (std::size_t i = 0; i < g.n_nodes; ++i)
            pw.write_row({g.x(i), sol.profiles.n[i], sol.profiles.p[i],
                          sol.profiles.c[i]});
        if (svg) {
            SvgSeries sn{"n", {}, {}}, sp{"p", {}, {}}, scs{"c", {}, {}};
            for (std::size_t i = 0; i < g.n_nodes; ++i) {
                double x = g.x(i);
                sn.x.push_back(x);
                sn.y.push_back(sol.profiles.n[i]);
                sp.x.push_back(x);
                sp.y.push_back(sol.profiles.p[i]);
                scs.x.push_back(x);
                scs.y.push_back(sol.profiles.c[i]);
            }
            write_line_chart((dir / (tag + ".svg")).string(),
                             "traveling wave, n_R = " + format_double(n_R), "x",
                             "value", {sn, sp, scs});
        }
    }
}

void run_sweep(const RunConfig& cfg, const fs::path& dir, bool svg) {
    nlohmann::ordered_json base =
        nlohmann::ordered_json::parse(serialize_config(cfg));
    base.erase("sweep");
    std::string path = "/" + cfg.sweep.parameter;
    std::replace(path.begin(), path.end(), '.', '/');
    nlohmann::ordered_json::json_pointer ptr(path);
    for (double v : cfg.sweep.values) {
        nlohmann::ordered_json doc = base;
        doc[ptr] = v;
        doc["mode"] = to_string(cfg.sweep.run_mode);
        RunConfig sub = parse_config(doc.dump());
        std::string leaf = "value_" + format_double(v);
        run_command(sub, (dir / leaf).string(), svg);
    }
}

}  // namespace

void run_command(const RunConfig& cfg, const std::string& out_dir, bool force_svg) {
    fs::path dir = out_dir.empty() ? fs::path(cfg.output.csv_dir) : fs::path(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("runner: cannot create output directory " + dir.string());
    bool svg = cfg.output.svg || force_svg;
    switch (cfg.mode) {
        case RunMode::Simulate: run_simulate(cfg, dir, svg); break;
        case RunMode::Analytic: run_analytic(cfg, dir, svg); break;
        case RunMode::RadiusEvolve: run_radius_evolve(cfg, dir, svg); break;
        case RunMode::TravelWave: run_travelwave(cfg, dir, svg); break;
        case RunMode::Sweep: run_sweep(cfg, dir, svg); break;
    }
}

}  // namespace necrosim
