#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "necrosim/errors.hpp"
#include "necrosim/runner.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw necrosim::ConfigError("cannot open config file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"necrosim: free-boundary tumor growth toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    bool svg = false;
    const char* modes[] = {"simulate", "analytic", "radius-evolve", "travelwave",
                           "sweep"};
    for (const char* m : modes) {
        auto* sub = app.add_subcommand(m);
        sub->add_option("--config", config_path, "configuration file (JSON)")
            ->required();
        sub->add_option("--out", out_dir, "output directory (overrides config)");
        sub->add_flag("--svg", svg, "also emit SVG charts");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        necrosim::RunConfig cfg = necrosim::parse_config(slurp(config_path));
        std::string mode = app.get_subcommands().front()->get_name();
        if (necrosim::to_string(cfg.mode) != mode)
            throw necrosim::ConfigError("config mode '" + necrosim::to_string(cfg.mode) +
                                        "' does not match subcommand '" + mode + "'");
        necrosim::run_command(cfg, out_dir, svg);
    } catch (const necrosim::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const necrosim::SolverError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
