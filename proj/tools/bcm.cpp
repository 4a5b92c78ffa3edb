#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "bcm/cli/commands.hpp"
#include "bcm/cli/config.hpp"
#include "bcm/cli/emit.hpp"

namespace {

enum Exit { ok = 0, check_failed = 1, config_error = 2, io_error = 3, runtime_error = 4 };

// Registers the run-parameter flags; values given on the command line end up
// in `flags` keyed like the config file.
void add_override_flags(CLI::App* cmd, bcm::cli::KeyValues& flags) {
    for (const char* key : {"noise", "seed", "N", "dx", "dt", "T", "threads"}) {
        cmd->add_option_function<std::string>(std::string("--") + key,
                                              [&flags, key](const std::string& v) { flags[key] = v; },
                                              std::string("override ") + key);
    }
}

void print_summary(const bcm::cli::ExperimentOutcome& o, const bcm::cli::RunConfig& cfg) {
    std::printf("experiment %d: rel_l2 = %.4e, linf = %.4e, imag leakage = %.2e, %.1f s -> %s\n", cfg.experiment,
                o.result.rel_l2, o.result.linf, o.result.imag_leakage, o.runtime_seconds, cfg.out_dir.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boundary control reconstruction of a damping perturbation in the 1D wave equation"};
    app.require_subcommand(1);

    bcm::cli::KeyValues exp_flags;
    std::string exp_id, exp_out;
    auto* experiment = app.add_subcommand("experiment", "run one of the three preset experiments");
    experiment->add_option("--id", exp_id, "experiment id (1, 2 or 3)")->required();
    experiment->add_option("--out", exp_out, "output directory")->required();
    add_override_flags(experiment, exp_flags);

    bcm::cli::KeyValues rec_flags;
    std::string rec_config, rec_out;
    auto* reconstruct = app.add_subcommand("reconstruct", "run from a key = value config file");
    reconstruct->add_option("--config", rec_config, "config file")->required();
    reconstruct->add_option("--out", rec_out, "output directory")->required();
    add_override_flags(reconstruct, rec_flags);

    std::string check_kind;
    auto* check = app.add_subcommand("check", "verification suites");
    check->add_option("kind", check_kind, "identity | control | convergence")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*check) return bcm::cli::run_check(check_kind, std::cout);

        bcm::cli::RunConfig cfg;
        if (*experiment) {
            exp_flags["experiment"] = exp_id;
            bcm::cli::apply(cfg, exp_flags);
            cfg.out_dir = exp_out;
        } else {
            bcm::cli::apply(cfg, bcm::cli::read_config_file(rec_config));
            bcm::cli::apply(cfg, rec_flags);
            cfg.out_dir = rec_out;
        }
        const auto outcome = bcm::cli::run_experiment(cfg);
        print_summary(outcome, cfg);
        return ok;
    } catch (const bcm::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return config_error;
    } catch (const bcm::cli::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return io_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return runtime_error;
    }
}
