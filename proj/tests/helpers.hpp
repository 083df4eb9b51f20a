#ifndef NECROSIM_TESTS_HELPERS_HPP
#define NECROSIM_TESTS_HELPERS_HPP

#include <cmath>
#include <random>

#include "necrosim/model.hpp"

namespace testutil {

// Radial parameter set used throughout: lambda = 1, n_c = 0.25,
// c_thresh/c_B = 0.5, g+ = g- = 1 (in vitro).
inline necrosim::ModelParams section3_params() {
    necrosim::ModelParams p;
    p.c_B = 1.0;
    p.growth = necrosim::GrowthLaw::ignition_constant(1.0, 1.0, 0.5);
    p.consumption = necrosim::ConsumptionLaw::two_level(1.0, 0.25);
    p.nutrient_mode = necrosim::NutrientMode::InVitro;
    return p;
}

// Benchmark configuration of the dynamic model: affine growth above the
// threshold 0.9, linear consumption (in vitro).
inline necrosim::ModelParams figure3_params() {
    necrosim::ModelParams p;
    p.c_B = 1.0;
    p.growth = necrosim::GrowthLaw::ignition_affine(2.0, 0.2, 1.2, 0.9);
    p.consumption = necrosim::ConsumptionLaw::linear(1.0);
    p.nutrient_mode = necrosim::NutrientMode::InVitro;
    return p;
}

// In vivo wave family: psi(n) = n, c_B = 1, threshold 0.2, g- = 2.
inline necrosim::ModelParams invivo_params() {
    necrosim::ModelParams p;
    p.c_B = 1.0;
    p.growth = necrosim::GrowthLaw::ignition_affine(2.0, 0.2, 1.2, 0.2);
    p.consumption = necrosim::ConsumptionLaw::linear(1.0);
    p.nutrient_mode = necrosim::NutrientMode::InVivo;
    return p;
}

// Frozen reference values for the section3_params() family, computed from
// independent bisection oracles (see the oracle blocks in the suites).
inline constexpr double kR0 = 1.316957896924817;    // acosh(2)
inline constexpr double kR1 = 1.411751555032452;
inline constexpr double kRbarStar = 1.155578562522791;   // f(sqrt(n_c))
inline constexpr double kAsymptoticSpeed = 0.478656312984546;
inline constexpr double kCoreRadiusAtR10 = 8.844361828959784;

inline std::mt19937& rng() {
    static std::mt19937 gen(0x5eed);
    return gen;
}

}  // namespace testutil

#endif
