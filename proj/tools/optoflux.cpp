// optoflux: batch runner for isolation spectra, flux maps, tuning and
// steady-state drive planning.
//
//   optoflux run [config.json] [--preset table1] [--set key=value]... [--out path] [--format csv|json]

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "optoflux/scenario.hpp"

int main(int argc, char** argv) {
    namespace cli = optoflux::cli;

    CLI::App app{"Nonreciprocal phonon transport and photon-phonon conversion in coupled optomechanical cavities"};
    app.require_subcommand(1);

    std::string config;
    std::string preset;
    std::vector<std::string> overrides;
    std::string out_path;
    std::string format;
    bool print_config = false;

    auto* run = app.add_subcommand("run", "Execute a scenario");
    run->add_option("config", config, "JSON scenario file");
    run->add_option("--preset", preset, "Parameter preset")->check(CLI::IsMember({"table1"}));
    run->add_option("--set", overrides, "Override key=value (dotted path; bare keys go to params)");
    run->add_option("--out", out_path, "Output file (default: stdout)");
    run->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    run->add_flag("--print-config", print_config, "Print the resolved scenario as JSON and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : cli::exit_code::config;
    }

    cli::Scenario scenario;
    try {
        nlohmann::json doc = config.empty() ? nlohmann::json::object() : cli::load_json_file(config);
        if (!preset.empty()) cli::apply_override(doc, "params.preset=\"" + preset + "\"");
        for (const auto& o : overrides) cli::apply_override(doc, o);
        if (!out_path.empty()) doc["output"]["path"] = out_path;
        if (!format.empty()) doc["output"]["format"] = format;
        scenario = cli::scenario_from_json(doc);
    } catch (const optoflux::ConfigError& e) {
        std::cerr << "config error [" << e.key() << "]: " << e.what() << '\n';
        return cli::exit_code::config;
    } catch (const optoflux::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return cli::exit_code::io;
    }

    if (print_config) {
        std::cout << cli::scenario_to_json(scenario).dump(2) << '\n';
        return cli::exit_code::ok;
    }
    return cli::run(scenario);
}
