#ifndef NECROSIM_ELLIPTIC_HPP
#define NECROSIM_ELLIPTIC_HPP

#include <vector>

#include "necrosim/grid.hpp"
#include "necrosim/model.hpp"

namespace necrosim {

/// Solution of the discrete obstacle problem p >= 0, -Lap_h p >= source,
/// complementarity, with homogeneous Dirichlet ends.
struct ObstacleSolution {
    Profile p;
    std::vector<char> coincidence;  // per node: p below the coincidence threshold
    double residual_max = 0.0;
    long iterations = 0;
};

struct ComplementarityResidual {
    double max_viol_nonneg = 0.0;    // (-p)_+
    double max_viol_supersol = 0.0;  // (Lap_h p + source)_+
    double max_viol_compl = 0.0;     // |p (Lap_h p + source)|
};

/// -u'' = source on the grid interior, endpoints pinned to the given values.
/// Direct tridiagonal elimination.
Profile solve_poisson_dirichlet(const Grid& grid, const Profile& source,
                                double left_bc, double right_bc);

/// Projected SOR for the obstacle problem with p = 0 at both ends.
/// Converged when max_i |min(p_i, -Lap_h p_i - source_i)| <= cfg.psor_tol.
/// initial_guess, when given, seeds the iteration (warm start).
ObstacleSolution solve_obstacle(const Grid& grid, const Profile& source,
                                const NumericsConfig& cfg,
                                const Profile* initial_guess = nullptr);

ComplementarityResidual complementarity_residual(const ObstacleSolution& sol,
                                                 const Profile& source);

/// -c'' + psi c = 0 with c = c_B at both ends (in vitro nutrient).
Profile solve_nutrient_invitro(const Grid& grid, const Profile& psi_field, double c_B);

/// In vivo nutrient on a truncated line: -c'' + psi c = 1_{outside}(c_B - c),
/// Dirichlet c = c_B at the right end, Robin c' = sqrt(psi) c at the left end.
/// The tumor interval is (omega_lo, omega_hi); a node is outside iff its
/// coordinate is <= omega_lo or >= omega_hi. omega_lo <= grid.a means the
/// tumor extends past the left truncation (no outside nodes there).
Profile solve_nutrient_invivo(const Grid& grid, double omega_lo, double omega_hi,
                              const Profile& psi_field, double c_B, double L_trunc);

}  // namespace necrosim

#endif
