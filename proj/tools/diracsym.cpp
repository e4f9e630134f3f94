// Batch front end: diracsym <command> [--config PATH] [--out DIR] [--seed N] [--threads N]

#include "diracsym/config.hpp"
#include "diracsym/errors.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <optional>

int main(int argc, char** argv) {
    CLI::App app{"Spin and pseudospin symmetry checks and bound-state spectra for Dirac Hamiltonians"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::optional<std::string> dimension;
    bool dump = false;
    app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "random seed for the algebra sweep");
    app.add_option("--threads", threads, "worker threads for independent channels")->check(CLI::PositiveNumber);
    app.add_option("--dimension", dimension, "3d, 2d or 1d (overrides the config)");
    app.add_flag("--dump-config", dump, "print the effective configuration and exit");

    for (const char* name : {"verify-algebra", "spectrum", "doublets", "scan-breaking"})
        app.add_subcommand(name, std::string("run ") + name);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        diracsym::RunConfig cfg = config_path.empty() ? diracsym::RunConfig{} : diracsym::load_config(config_path);
        cfg.command = diracsym::command_from_string(app.get_subcommands().front()->get_name());
        if (out_dir) cfg.out_dir = *out_dir;
        if (seed) cfg.seed = *seed;
        if (threads) cfg.threads = *threads;
        if (dimension) cfg.dimension = *dimension;
        if (dump) {
            std::cout << diracsym::dump_config(cfg);
            return 0;
        }
        const auto res = diracsym::run(cfg);
        for (const auto& f : res.files) std::cout << "wrote " << f << "\n";
        std::cout << res.summary.dump() << "\n";
        return res.exit_code;
    } catch (const diracsym::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const diracsym::Error& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
