#ifndef NECROSIM_GRID_HPP
#define NECROSIM_GRID_HPP

#include <cstddef>
#include <vector>

#include "necrosim/errors.hpp"

namespace necrosim {

/// Uniform 1D grid with n_nodes nodes spanning [a, b] inclusive.
struct Grid {
    double a = 0.0;
    double b = 1.0;
    std::size_t n_nodes = 3;

    Grid() = default;
    Grid(double a_, double b_, std::size_t n_nodes_) : a(a_), b(b_), n_nodes(n_nodes_) {
        if (!(a < b) || n_nodes < 3) throw ConfigError("Grid: need a < b and n_nodes >= 3");
    }

    /// Grid from a target spacing; the actual spacing divides [a,b] exactly.
    static Grid with_spacing(double a, double b, double h) {
        if (!(h > 0.0)) throw ConfigError("Grid: h must be positive");
        auto n = static_cast<std::size_t>(std::max(2.0, (b - a) / h + 0.5)) + 1;
        return Grid(a, b, n);
    }

    double h() const { return (b - a) / static_cast<double>(n_nodes - 1); }
    double x(std::size_t i) const { return a + h() * static_cast<double>(i); }

    bool operator==(const Grid&) const = default;
};

/// Nodal samples of a scalar field on a grid.
struct Profile {
    Grid grid;
    std::vector<double> values;

    Profile() = default;
    explicit Profile(const Grid& g, double fill = 0.0)
        : grid(g), values(g.n_nodes, fill) {}
    Profile(const Grid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
        if (values.size() != grid.n_nodes)
            throw ConfigError("Profile: values length must equal n_nodes");
    }

    double operator[](std::size_t i) const { return values[i]; }
    double& operator[](std::size_t i) { return values[i]; }
    std::size_t size() const { return values.size(); }
};

}  // namespace necrosim

#endif
