#ifndef NECROSIM_RUNNER_HPP
#define NECROSIM_RUNNER_HPP

#include <string>

#include "necrosim/config.hpp"

namespace necrosim {

/// Executes a parsed configuration and writes its CSV (and optional SVG)
/// artifacts under out_dir (cfg.output.csv_dir when out_dir is empty).
void run_command(const RunConfig& cfg, const std::string& out_dir = "",
                 bool force_svg = false);

}  // namespace necrosim

#endif
