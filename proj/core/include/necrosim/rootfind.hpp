#ifndef NECROSIM_ROOTFIND_HPP
#define NECROSIM_ROOTFIND_HPP

#include <cmath>
#include <utility>

#include "necrosim/errors.hpp"

namespace necrosim {

/// Bracketed bisection. Requires f(lo) and f(hi) of opposite (non-strict)
/// sign; returns the midpoint of the final bracket of width <= tol.
template <typename F>
double bisect(F&& f, double lo, double hi, double tol, int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw SolverError("bisect: endpoints do not bracket a root");
    for (int it = 0; it < max_iter && (hi - lo) > tol; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Expands hi geometrically until f changes sign relative to f(lo).
/// Returns the bracket (lo kept fixed).
template <typename F>
std::pair<double, double> expand_bracket_up(F&& f, double lo, double hi0,
                                            double hi_cap = 1e12) {
    double flo = f(lo);
    double hi = hi0;
    while (hi < hi_cap) {
        double fhi = f(hi);
        if (fhi == 0.0 || (fhi > 0.0) != (flo > 0.0)) return {lo, hi};
        hi *= 2.0;
    }
    throw SolverError("expand_bracket_up: no sign change found");
}

}  // namespace necrosim

#endif
