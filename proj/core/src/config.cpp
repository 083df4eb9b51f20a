#include "necrosim/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

namespace necrosim {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError("config: " + path + ": " + what);
}

void reject_unknown(const json& obj, const std::string& path,
                    const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) fail(path + "." + it.key(), "unknown key");
    }
}

double need_number(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) fail(path + "." + key, "required field missing");
    if (!obj[key].is_number()) fail(path + "." + key, "expected a number");
    return obj[key].get<double>();
}

double opt_number(const json& obj, const char* key, double fallback,
                  const std::string& path) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) fail(path + "." + key, "expected a number");
    return obj[key].get<double>();
}

std::string need_string(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) fail(path + "." + key, "required field missing");
    if (!obj[key].is_string()) fail(path + "." + key, "expected a string");
    return obj[key].get<std::string>();
}

std::vector<double> number_list(const json& arr, const std::string& path) {
    if (!arr.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& v : arr) {
        if (!v.is_number()) fail(path, "expected an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

GrowthLaw parse_growth(const json& obj, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    std::string type = need_string(obj, path, "type");
    if (type == "ignition_constant") {
        reject_unknown(obj, path, {"type", "g_plus", "g_minus", "c_thresh"});
        return GrowthLaw::ignition_constant(need_number(obj, path, "g_plus"),
                                            need_number(obj, path, "g_minus"),
                                            need_number(obj, path, "c_thresh"));
    }
    if (type == "ignition_affine") {
        reject_unknown(obj, path, {"type", "g_minus", "slope", "intercept", "c_thresh"});
        return GrowthLaw::ignition_affine(need_number(obj, path, "g_minus"),
                                          need_number(obj, path, "slope"),
                                          need_number(obj, path, "intercept"),
                                          need_number(obj, path, "c_thresh"));
    }
    fail(path + ".type", "expected ignition_constant or ignition_affine");
}

json growth_to_json(const GrowthLaw& g) {
    json j;
    switch (g.kind()) {
        case GrowthLaw::Kind::IgnitionConstant:
            j["type"] = "ignition_constant";
            j["g_plus"] = g.g_plus();
            j["g_minus"] = g.g_minus();
            j["c_thresh"] = g.c_thresh();
            break;
        case GrowthLaw::Kind::IgnitionAffine:
            j["type"] = "ignition_affine";
            j["g_minus"] = g.g_minus();
            j["slope"] = g.derivative_bound();
            j["intercept"] = g.value_at_threshold();
            j["c_thresh"] = g.c_thresh();
            break;
        case GrowthLaw::Kind::IgnitionGeneral:
            throw ConfigError("config: general growth laws are not serializable");
    }
    return j;
}

ConsumptionLaw parse_consumption(const json& obj, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    std::string type = need_string(obj, path, "type");
    if (type == "two_level") {
        reject_unknown(obj, path, {"type", "lambda", "n_c"});
        return ConsumptionLaw::two_level(need_number(obj, path, "lambda"),
                                         need_number(obj, path, "n_c"));
    }
    if (type == "linear") {
        reject_unknown(obj, path, {"type", "coef"});
        return ConsumptionLaw::linear(need_number(obj, path, "coef"));
    }
    fail(path + ".type", "expected two_level or linear");
}

json consumption_to_json(const ConsumptionLaw& c) {
    json j;
    switch (c.kind()) {
        case ConsumptionLaw::Kind::TwoLevel:
            j["type"] = "two_level";
            j["lambda"] = c.lambda();
            j["n_c"] = c.n_c();
            break;
        case ConsumptionLaw::Kind::Linear:
            j["type"] = "linear";
            j["coef"] = c(1.0);
            break;
        case ConsumptionLaw::Kind::GeneralMonotone:
            throw ConfigError("config: general consumption laws are not serializable");
    }
    return j;
}

double max_growth_magnitude(const ModelParams& p) {
    return std::max(p.growth.g_minus(), std::abs(p.growth(p.c_B)));
}

}  // namespace

std::string to_string(RunMode mode) {
    switch (mode) {
        case RunMode::Simulate: return "simulate";
        case RunMode::Analytic: return "analytic";
        case RunMode::RadiusEvolve: return "radius-evolve";
        case RunMode::TravelWave: return "travelwave";
        case RunMode::Sweep: return "sweep";
    }
    return "simulate";
}

RunMode run_mode_from_string(const std::string& s) {
    if (s == "simulate") return RunMode::Simulate;
    if (s == "analytic") return RunMode::Analytic;
    if (s == "radius-evolve") return RunMode::RadiusEvolve;
    if (s == "travelwave") return RunMode::TravelWave;
    if (s == "sweep") return RunMode::Sweep;
    throw ConfigError("config: unknown mode '" + s + "'");
}

RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: malformed JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config: top level must be an object");
    reject_unknown(root, "$",
                   {"mode", "params", "numerics", "domain", "t_end", "probes",
                    "output", "analytic", "radius_evolve", "travelwave", "sweep"});
    RunConfig cfg;
    cfg.mode = run_mode_from_string(need_string(root, "$", "mode"));

    if (!root.contains("params")) fail("$.params", "required field missing");
    {
        const json& p = root["params"];
        reject_unknown(p, "$.params", {"c_B", "nutrient_mode", "growth", "consumption"});
        cfg.params.c_B = need_number(p, "$.params", "c_B");
        if (!(cfg.params.c_B > 0.0)) fail("$.params.c_B", "must be positive");
        std::string nm = p.contains("nutrient_mode")
                             ? need_string(p, "$.params", "nutrient_mode")
                             : "in_vitro";
        if (nm == "in_vitro") cfg.params.nutrient_mode = NutrientMode::InVitro;
        else if (nm == "in_vivo") cfg.params.nutrient_mode = NutrientMode::InVivo;
        else fail("$.params.nutrient_mode", "expected in_vitro or in_vivo");
        if (!p.contains("growth")) fail("$.params.growth", "required field missing");
        cfg.params.growth = parse_growth(p["growth"], "$.params.growth");
        if (!p.contains("consumption"))
            fail("$.params.consumption", "required field missing");
        cfg.params.consumption =
            parse_consumption(p["consumption"], "$.params.consumption");
        if (!(cfg.params.growth.c_thresh() < cfg.params.c_B))
            fail("$.params", "c_thresh must be below c_B");
    }

    const bool sim_like = cfg.mode == RunMode::Simulate || cfg.mode == RunMode::Sweep;
    cfg.numerics.h = sim_like ? 2e-3 : 1e-3;
    if (root.contains("numerics")) {
        const json& n = root["numerics"];
        reject_unknown(n, "$.numerics",
                       {"h", "dt", "psor_omega", "psor_tol", "eps_coincidence",
                        "L_trunc", "bisect_tol", "max_iter", "ode_dt"});
        cfg.numerics.h = opt_number(n, "h", cfg.numerics.h, "$.numerics");
        if (n.contains("dt")) {
            cfg.numerics.dt = need_number(n, "$.numerics", "dt");
            cfg.dt_given = true;
        }
        cfg.numerics.psor_omega =
            opt_number(n, "psor_omega", cfg.numerics.psor_omega, "$.numerics");
        cfg.numerics.psor_tol =
            opt_number(n, "psor_tol", cfg.numerics.psor_tol, "$.numerics");
        cfg.numerics.eps_coincidence = opt_number(n, "eps_coincidence",
                                                  cfg.numerics.eps_coincidence,
                                                  "$.numerics");
        cfg.numerics.L_trunc =
            opt_number(n, "L_trunc", cfg.numerics.L_trunc, "$.numerics");
        cfg.numerics.bisect_tol =
            opt_number(n, "bisect_tol", cfg.numerics.bisect_tol, "$.numerics");
        cfg.numerics.max_iter = static_cast<long>(opt_number(
            n, "max_iter", static_cast<double>(cfg.numerics.max_iter), "$.numerics"));
        cfg.numerics.ode_dt = opt_number(n, "ode_dt", cfg.numerics.ode_dt, "$.numerics");
    }
    if (!cfg.dt_given) cfg.numerics.dt = 0.1 / max_growth_magnitude(cfg.params);
    cfg.numerics.validate();

    if (root.contains("domain")) {
        const json& d = root["domain"];
        reject_unknown(d, "$.domain", {"lo", "hi", "patch_lo", "patch_hi", "outer"});
        cfg.grid_lo = need_number(d, "$.domain", "lo");
        cfg.grid_hi = need_number(d, "$.domain", "hi");
        if (!(cfg.grid_lo < cfg.grid_hi)) fail("$.domain", "lo must be below hi");
        cfg.patch_lo = need_number(d, "$.domain", "patch_lo");
        cfg.patch_hi = need_number(d, "$.domain", "patch_hi");
        if (!(cfg.patch_lo < cfg.patch_hi))
            fail("$.domain", "patch_lo must be below patch_hi");
        if (cfg.patch_lo < cfg.grid_lo || cfg.patch_hi > cfg.grid_hi)
            fail("$.domain", "patch must lie inside [lo, hi]");
        if (d.contains("outer")) {
            const json& o = d["outer"];
            if (o.contains("table_x") || o.contains("table_n")) {
                reject_unknown(o, "$.domain.outer", {"table_x", "table_n"});
                cfg.outer.tabulated = true;
                cfg.outer.table_x = number_list(o["table_x"], "$.domain.outer.table_x");
                cfg.outer.table_n = number_list(o["table_n"], "$.domain.outer.table_n");
                if (cfg.outer.table_x.size() != cfg.outer.table_n.size() ||
                    cfg.outer.table_x.size() < 2)
                    fail("$.domain.outer", "table_x and table_n need equal length >= 2");
                if (!std::is_sorted(cfg.outer.table_x.begin(), cfg.outer.table_x.end()))
                    fail("$.domain.outer.table_x", "must be sorted");
            } else {
                reject_unknown(o, "$.domain.outer",
                               {"amplitude", "decay", "offset", "center"});
                cfg.outer.amplitude = need_number(o, "$.domain.outer", "amplitude");
                cfg.outer.decay = need_number(o, "$.domain.outer", "decay");
                cfg.outer.offset = need_number(o, "$.domain.outer", "offset");
                cfg.outer.center = opt_number(o, "center",
                                              0.5 * (cfg.patch_lo + cfg.patch_hi),
                                              "$.domain.outer");
            }
        }
    } else if (cfg.mode == RunMode::Simulate) {
        fail("$.domain", "required field missing");
    }

    if (root.contains("t_end")) {
        cfg.t_end = need_number(root, "$", "t_end");
        if (!(cfg.t_end > 0.0)) fail("$.t_end", "must be positive");
    } else if (cfg.mode == RunMode::Simulate) {
        fail("$.t_end", "required field missing");
    }

    if (root.contains("probes")) {
        cfg.probes = number_list(root["probes"], "$.probes");
        if (root.contains("domain")) {
            for (double x : cfg.probes)
                if (x < cfg.grid_lo || x > cfg.grid_hi)
                    fail("$.probes", "probe position outside the grid");
        }
    }

    if (root.contains("output")) {
        const json& o = root["output"];
        reject_unknown(o, "$.output", {"csv_dir", "svg", "snapshot_every"});
        if (o.contains("csv_dir")) cfg.output.csv_dir = need_string(o, "$.output", "csv_dir");
        if (o.contains("svg")) {
            if (!o["svg"].is_boolean()) fail("$.output.svg", "expected a boolean");
            cfg.output.svg = o["svg"].get<bool>();
        }
        cfg.output.snapshot_every =
            opt_number(o, "snapshot_every", cfg.output.snapshot_every, "$.output");
    }

    if (root.contains("analytic")) {
        const json& a = root["analytic"];
        reject_unknown(a, "$.analytic", {"R_values", "R_from", "R_to", "R_count"});
        if (a.contains("R_values")) {
            cfg.analytic.R_values = number_list(a["R_values"], "$.analytic.R_values");
        } else {
            double from = need_number(a, "$.analytic", "R_from");
            double to = need_number(a, "$.analytic", "R_to");
            auto count = static_cast<long>(need_number(a, "$.analytic", "R_count"));
            if (count < 2 || !(from < to)) fail("$.analytic", "need R_from < R_to, R_count >= 2");
            for (long i = 0; i < count; ++i)
                cfg.analytic.R_values.push_back(
                    from + (to - from) * static_cast<double>(i) /
                               static_cast<double>(count - 1));
        }
    } else if (cfg.mode == RunMode::Analytic) {
        fail("$.analytic", "required field missing");
    }

    if (root.contains("radius_evolve")) {
        const json& r = root["radius_evolve"];
        reject_unknown(r, "$.radius_evolve", {"R_init", "t_end"});
        cfg.radius_evolve.R_init = need_number(r, "$.radius_evolve", "R_init");
        cfg.radius_evolve.t_end = need_number(r, "$.radius_evolve", "t_end");
    } else if (cfg.mode == RunMode::RadiusEvolve) {
        fail("$.radius_evolve", "required field missing");
    }

    if (root.contains("travelwave")) {
        const json& t = root["travelwave"];
        reject_unknown(t, "$.travelwave", {"n_R", "mode"});
        if (!t.contains("n_R")) fail("$.travelwave.n_R", "required field missing");
        if (t["n_R"].is_number()) {
            cfg.travelwave.n_R = {t["n_R"].get<double>()};
        } else {
            cfg.travelwave.n_R = number_list(t["n_R"], "$.travelwave.n_R");
        }
        std::string m = t.contains("mode") ? need_string(t, "$.travelwave", "mode")
                                           : "in_vitro";
        if (m == "in_vitro") cfg.travelwave.mode = NutrientMode::InVitro;
        else if (m == "in_vivo") cfg.travelwave.mode = NutrientMode::InVivo;
        else fail("$.travelwave.mode", "expected in_vitro or in_vivo");
        for (double v : cfg.travelwave.n_R)
            if (v < 0.0 || v >= 1.0) fail("$.travelwave.n_R", "values must lie in [0,1)");
    } else if (cfg.mode == RunMode::TravelWave) {
        fail("$.travelwave", "required field missing");
    }

    if (root.contains("sweep")) {
        const json& s = root["sweep"];
        reject_unknown(s, "$.sweep", {"parameter", "values", "run_mode"});
        cfg.sweep.parameter = need_string(s, "$.sweep", "parameter");
        if (!s.contains("values")) fail("$.sweep.values", "required field missing");
        cfg.sweep.values = number_list(s["values"], "$.sweep.values");
        cfg.sweep.run_mode =
            run_mode_from_string(need_string(s, "$.sweep", "run_mode"));
        if (cfg.sweep.run_mode == RunMode::Sweep)
            fail("$.sweep.run_mode", "nested sweeps are not supported");
        // The swept parameter must resolve inside this document.
        json::json_pointer ptr("/" + [&] {
            std::string p = cfg.sweep.parameter;
            std::replace(p.begin(), p.end(), '.', '/');
            return p;
        }());
        if (!root.contains(ptr))
            fail("$.sweep.parameter", "path '" + cfg.sweep.parameter +
                                          "' does not exist in the configuration");
    } else if (cfg.mode == RunMode::Sweep) {
        fail("$.sweep", "required field missing");
    }

    return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
    json root;
    root["mode"] = to_string(cfg.mode);
    root["params"]["c_B"] = cfg.params.c_B;
    root["params"]["nutrient_mode"] =
        cfg.params.nutrient_mode == NutrientMode::InVitro ? "in_vitro" : "in_vivo";
    root["params"]["growth"] = growth_to_json(cfg.params.growth);
    root["params"]["consumption"] = consumption_to_json(cfg.params.consumption);
    json& n = root["numerics"];
    n["h"] = cfg.numerics.h;
    n["dt"] = cfg.numerics.dt;
    n["psor_omega"] = cfg.numerics.psor_omega;
    n["psor_tol"] = cfg.numerics.psor_tol;
    n["eps_coincidence"] = cfg.numerics.eps_coincidence;
    n["L_trunc"] = cfg.numerics.L_trunc;
    n["bisect_tol"] = cfg.numerics.bisect_tol;
    n["max_iter"] = cfg.numerics.max_iter;
    n["ode_dt"] = cfg.numerics.ode_dt;
    json& d = root["domain"];
    d["lo"] = cfg.grid_lo;
    d["hi"] = cfg.grid_hi;
    d["patch_lo"] = cfg.patch_lo;
    d["patch_hi"] = cfg.patch_hi;
    if (cfg.outer.tabulated) {
        d["outer"]["table_x"] = cfg.outer.table_x;
        d["outer"]["table_n"] = cfg.outer.table_n;
    } else {
        d["outer"]["amplitude"] = cfg.outer.amplitude;
        d["outer"]["decay"] = cfg.outer.decay;
        d["outer"]["offset"] = cfg.outer.offset;
        d["outer"]["center"] = cfg.outer.center;
    }
    root["t_end"] = cfg.t_end;
    root["probes"] = cfg.probes;
    root["output"]["csv_dir"] = cfg.output.csv_dir;
    root["output"]["svg"] = cfg.output.svg;
    root["output"]["snapshot_every"] = cfg.output.snapshot_every;
    root["analytic"]["R_values"] = cfg.analytic.R_values;
    root["radius_evolve"]["R_init"] = cfg.radius_evolve.R_init;
    root["radius_evolve"]["t_end"] = cfg.radius_evolve.t_end;
    root["travelwave"]["n_R"] = cfg.travelwave.n_R;
    root["travelwave"]["mode"] =
        cfg.travelwave.mode == NutrientMode::InVitro ? "in_vitro" : "in_vivo";
    if (!cfg.sweep.parameter.empty()) {
        root["sweep"]["parameter"] = cfg.sweep.parameter;
        root["sweep"]["values"] = cfg.sweep.values;
        root["sweep"]["run_mode"] = to_string(cfg.sweep.run_mode);
    }
    return root.dump(2) + "\n";
}

SimConfig to_sim_config(const RunConfig& cfg) {
    SimConfig sc;
    sc.params = cfg.params;
    sc.numerics = cfg.numerics;
    sc.grid_lo = cfg.grid_lo;
    sc.grid_hi = cfg.grid_hi;
    sc.patch_lo = cfg.patch_lo;
    sc.patch_hi = cfg.patch_hi;
    sc.outer = cfg.outer;
    sc.t_end = cfg.t_end;
    sc.snapshot_every = cfg.output.snapshot_every;
    sc.probes = cfg.probes;
    return sc;
}

}  // namespace necrosim
