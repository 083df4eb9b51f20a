#ifndef NECROSIM_CONFIG_HPP
#define NECROSIM_CONFIG_HPP

#include <string>
#include <vector>

#include "necrosim/model.hpp"
#include "necrosim/simulator.hpp"

namespace necrosim {

enum class RunMode { Simulate, Analytic, RadiusEvolve, TravelWave, Sweep };

std::string to_string(RunMode mode);
RunMode run_mode_from_string(const std::string& s);

struct OutputSpec {
    std::string csv_dir = "out";
    bool svg = false;
    double snapshot_every = 0.0;
};

struct AnalyticSpec {
    std::vector<double> R_values;
};

struct RadiusEvolveSpec {
    double R_init = 1.0;
    double t_end = 10.0;
};

struct TravelwaveSpec {
    std::vector<double> n_R{0.0};
    NutrientMode mode = NutrientMode::InVitro;
};

/// One parameter swept over a value list; the remaining fields of the
/// enclosing RunConfig act as the base configuration for every run.
struct SweepSpec {
    std::string parameter;  // dotted path into the config document
    std::vector<double> values;
    RunMode run_mode = RunMode::Simulate;
};

struct RunConfig {
    RunMode mode = RunMode::Simulate;
    ModelParams params;
    NumericsConfig numerics;
    bool dt_given = false;  // absent dt is refilled from the growth bound
    double grid_lo = 0.0;
    double grid_hi = 1.0;
    double patch_lo = 0.25;
    double patch_hi = 0.75;
    OuterDensitySpec outer;
    double t_end = 1.0;
    std::vector<double> probes;
    OutputSpec output;
    AnalyticSpec analytic;
    RadiusEvolveSpec radius_evolve;
    TravelwaveSpec travelwave;
    SweepSpec sweep;
};

/// Strict parse: unknown keys are rejected with their field path, missing
/// required fields reported, numeric defaults filled (grid spacing by mode,
/// time step from the growth-rate bound).
RunConfig parse_config(const std::string& text);

/// Canonical serialization; parse(serialize(cfg)) reproduces cfg.
std::string serialize_config(const RunConfig& cfg);

SimConfig to_sim_config(const RunConfig& cfg);

}  // namespace necrosim

#endif
