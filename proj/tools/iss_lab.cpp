#include "isslab/scenario.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int with_config(const std::string& path,
                const std::function<int(const isslab::ScenarioConfig&)>& body) {
    try {
        return body(isslab::ScenarioConfig::from_file(path));
    } catch (const isslab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for L^q-ISS estimates of boundary-controlled "
                 "parabolic systems"};
    app.require_subcommand(1);

    std::string run_config, scan_config, validate_config;
    int jobs = 1;
    std::string only;

    CLI::App* run = app.add_subcommand("run", "Run a scenario from a JSON config");
    run->add_option("config", run_config, "Path to config.json")->required();

    CLI::App* scan = app.add_subcommand("scan", "Run only the gain scan of a config");
    scan->add_option("config", scan_config, "Path to config.json")->required();

    CLI::App* repro =
        app.add_subcommand("reproduce-all", "Run every acceptance experiment and report");
    repro->add_option("--jobs", jobs, "Parallel criterion evaluations")
        ->check(CLI::Range(1, 64));
    repro->add_option("--only", only, "Restrict to a single criterion id");

    CLI::App* validate = app.add_subcommand("validate", "Parse and validate a config");
    validate->add_option("config", validate_config, "Path to config.json")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitConfig : kExitOk;
    }

    try {
        if (run->parsed()) {
            return with_config(run_config, [](const isslab::ScenarioConfig& cfg) {
                isslab::RunResult res = isslab::run_scenario(cfg);
                if (res.status != 0) {
                    std::cerr << "numerical failure: " << res.message << "\n";
                    return kExitNumerical;
                }
                std::cout << "wrote " << res.artifacts.size() << " artifacts to "
                          << isslab::resolve_output_dir(cfg) << "\n";
                return kExitOk;
            });
        }
        if (scan->parsed()) {
            return with_config(scan_config, [](const isslab::ScenarioConfig& cfg) {
                isslab::RunResult res = isslab::run_scan(cfg);
                if (res.status != 0) {
                    std::cerr << "numerical failure: " << res.message << "\n";
                    return kExitNumerical;
                }
                std::cout << "wrote " << res.artifacts.size() << " artifacts to "
                          << isslab::resolve_output_dir(cfg) << "\n";
                return kExitOk;
            });
        }
        if (repro->parsed()) {
            const auto rows = isslab::run_acceptance(jobs, only);
            return isslab::print_acceptance(rows) ? kExitOk : kExitNumerical;
        }
        if (validate->parsed()) {
            return with_config(validate_config, [](const isslab::ScenarioConfig& cfg) {
                std::cout << "ok: " << cfg.scenario << "\n";
                return kExitOk;
            });
        }
    } catch (const isslab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}
