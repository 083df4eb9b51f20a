#ifndef NECROSIM_ERRORS_HPP
#define NECROSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace necrosim {

/// Invalid or inconsistent configuration (bad parameters, malformed input).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical procedure failed to produce a solution (non-convergence,
/// missing sign change, blow-up). Carries the last residual when known.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what, double residual = 0.0)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

}  // namespace necrosim

#endif
