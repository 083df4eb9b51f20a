#ifndef NECROSIM_SAMPLING_HPP
#define NECROSIM_SAMPLING_HPP

#include <algorithm>
#include <vector>

#include "necrosim/grid.hpp"

namespace necrosim {

/// Samples f onto the grid by cell averaging: node i carries the mean of f
/// over (x_i - h/2, x_i + h/2), computed piecewise against the supplied
/// breakpoints (midpoint rule per smooth sub-piece). Plain nodal sampling of
/// a discontinuous field is only first-order accurate; cell averaging keeps
/// the downstream three-point solvers second order.
template <typename F>
Profile sample_cell_averaged(const Grid& grid, F&& f,
                             const std::vector<double>& breakpoints = {}) {
    Profile out(grid);
    const double h = grid.h();
    std::vector<double> cuts;
    for (std::size_t i = 0; i < grid.n_nodes; ++i) {
        const double x = grid.x(i);
        const double lo = (i == 0) ? x : x - 0.5 * h;
        const double hi = (i + 1 == grid.n_nodes) ? x : x + 0.5 * h;
        if (hi <= lo) {
            out[i] = f(x);
            continue;
        }
        cuts.clear();
        cuts.push_back(lo);
        for (double bp : breakpoints)
            if (bp > lo && bp < hi) cuts.push_back(bp);
        cuts.push_back(hi);
        std::sort(cuts.begin(), cuts.end());
        double acc = 0.0;
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            const double len = cuts[k + 1] - cuts[k];
            acc += f(0.5 * (cuts[k] + cuts[k + 1])) * len;
        }
        out[i] = acc / (hi - lo);
    }
    return out;
}

}  // namespace necrosim

#endif
