// fracns: command-line driver for the simulation and verification suites.
//
// Exit codes: 0 pass, 1 criterion failed, 2 invalid configuration or usage,
// 3 unexpected error. Every run writes resolved_config.json and report.json
// into the output directory.

#include "fracns/app.hpp"
#include "fracns/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"Fractional compressible Navier-Stokes toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    std::vector<std::string> overrides;

    for (const auto& name : fracns::command_names()) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON configuration file (defaults when omitted)");
        sub->add_option("--seed", seed, "seed for initial data and randomized suites");
        sub->add_option("--out", out_dir, "output directory (default: output.dir)");
        sub->add_option("--override", overrides, "dot-path override key=value, repeatable")->take_all();
    }
    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    fracns::RunConfig config;
    try {
        if (seed)
            overrides.push_back("seed=" + std::to_string(*seed));
        config = config_path.empty() ? fracns::resolve_config(nlohmann::json::object(), overrides)
                                     : fracns::parse_config(config_path, overrides);
    } catch (const fracns::ConfigError& e) {
        std::cerr << nlohmann::json{{"error", "config"}, {"field", e.field()}, {"message", e.what()}}.dump()
                  << '\n';
        return 2;
    }

    try {
        const auto outcome = fracns::run_command(command, config, out_dir.empty() ? config.out_dir : out_dir);
        std::cout << outcome.report.dump(2) << '\n';
        return outcome.pass ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"error", "runtime"}, {"message", e.what()}}.dump() << '\n';
        return 3;
    }
}
