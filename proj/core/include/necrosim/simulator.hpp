#ifndef NECROSIM_SIMULATOR_HPP
#define NECROSIM_SIMULATOR_HPP

#include <optional>
#include <vector>

#include "necrosim/elliptic.hpp"
#include "necrosim/grid.hpp"
#include "necrosim/model.hpp"

namespace necrosim {

/// Initial sub-saturated density outside the patch: either
/// amplitude * exp(-decay (|x - center| - offset)) or a tabulated profile.
struct OuterDensitySpec {
    double amplitude = 0.0;
    double decay = 0.0;
    double offset = 0.0;
    double center = 0.0;
    bool tabulated = false;
    std::vector<double> table_x, table_n;

    double eval(double x) const;
};

struct SimConfig {
    ModelParams params;
    NumericsConfig numerics;
    double grid_lo = 0.0;
    double grid_hi = 1.0;
    double patch_lo = 0.25;
    double patch_hi = 0.75;
    OuterDensitySpec outer;
    double t_end = 1.0;
    double snapshot_every = 0.0;  // 0: only the initial snapshot
    std::vector<double> probes;
};

struct CoreInterval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Full simulation state on the fixed Eulerian grid. The tumor bulk is the
/// tracked interval (a, b); nodes at or beyond the fronts count as outside.
/// a < grid.a means the bulk extends past the left edge of the grid (used
/// for waves truncated on the left); that side then has no tracked front.
struct SimState {
    double t = 0.0;
    double a = 0.0;
    double b = 0.0;
    Profile n, p, c;
    std::vector<CoreInterval> core;
    double speed_left = 0.0;
    double speed_right = 0.0;
    long psor_iterations = 0;
};

struct EventRecord {
    double probe_x = 0.0;
    std::optional<double> t0;  // bulk arrival
    std::optional<double> t1;  // necrotic-core arrival
};

struct TrajectoryRow {
    double t = 0.0, a = 0.0, b = 0.0;
    double core_lo = 0.0, core_hi = 0.0;  // NaN while the core is empty
    double speed_left = 0.0, speed_right = 0.0;
    std::vector<double> probe_n;  // density sampled at each configured probe
};

struct Snapshot {
    double t = 0.0;
    Profile n, p, c;
};

struct Trajectory {
    std::vector<TrajectoryRow> rows;
    std::vector<Snapshot> snapshots;
    std::vector<EventRecord> events;
};

SimState init_from_config(const SimConfig& cfg);

/// One operator-split step: nutrient solve, obstacle solve, core extraction,
/// density update, front advance.
SimState step(const SimState& state, const SimConfig& cfg, double dt);

Trajectory run(const SimConfig& cfg);

/// Crossing times of the probe by the bulk front (t0) and by the necrotic
/// core (t1), linearly interpolated between recorded rows.
EventRecord detect_events(const Trajectory& traj, double x);

}  // namespace necrosim

#endif
