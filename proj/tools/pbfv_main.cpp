// Batch front-end: pbfv <run|convergence|probe-flux|probe-germ> CONFIG --out DIR
#include <iostream>

#include <CLI11.hpp>

#include "pbfv/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Finite-volume Burgers flow coupled to a drag particle"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    using Command = int (*)(const pbfv::ExperimentConfig&, const std::filesystem::path&, std::ostream&);
    Command chosen = nullptr;

    auto add = [&](const char* name, const char* help, Command cmd) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("config", config_path, "configuration file (key = value lines)")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory")->capture_default_str();
        sub->callback([&chosen, cmd] { chosen = cmd; });
    };
    add("run", "simulate and write particle.csv and u_<t>.csv snapshots", pbfv::cmd_run);
    add("convergence", "mesh-refinement study, writes convergence.csv", pbfv::cmd_convergence);
    add("probe-flux", "dissipativity probe of the interface fluxes", pbfv::cmd_probe_flux);
    add("probe-germ", "maximality probe of the germ", pbfv::cmd_probe_germ);

    CLI11_PARSE(app, argc, argv);

    try {
        const pbfv::ExperimentConfig cfg = pbfv::load_config(config_path);
        return chosen(cfg, out_dir, std::cout);
    } catch (const pbfv::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
