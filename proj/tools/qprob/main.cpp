#include <CLI11.hpp>

#include "commands.hpp"
#include "qprob/version.hpp"
#include "verify.hpp"

int main(int argc, char** argv) {
    CLI::App app{"conditional expectation, absolute and conditional probability "
                 "for quantum observables"};
    app.set_version_flag("--version", std::string(qprob::k_tool_name) + " " +
                                          qprob::k_tool_version);
    app.require_subcommand(1);

    qprob::cli::Options opt;

    const auto add_run_subcommand = [&](const char* name, const char* kind,
                                        const char* help) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", opt.config_path, "JSON run configuration")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", opt.out_path, "output file (default: stdout)");
        sub->add_option("--format", opt.format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--seed", opt.seed, "seed recorded in the report envelope")
            ->each([&](const std::string&) { opt.seed_set = true; });
        sub->add_flag("--timing", opt.timing,
                      "include per-request timings (breaks byte-for-byte determinism)");
        sub->callback([&, kind] { std::exit(qprob::cli::run_command(kind, opt)); });
        return sub;
    };

    add_run_subcommand("discrete", "discrete", "one discrete observable");
    add_run_subcommand("grid", "grid1d", "one continuous observable on a grid");
    add_run_subcommand("grid2d", "grid2d", "two commuting observables on a 2D grid");
    add_run_subcommand("fock", "fock", "grand-canonical occupation statistics");
    add_run_subcommand("evolve", "evolve", "unitary time evolution (CSV time series)");
    add_run_subcommand("noncomm", "noncomm", "non-commutative diagnostics");

    qprob::cli::VerifyOptions vopt;
    CLI::App* verify =
        app.add_subcommand("verify", "run every module's invariant suite");
    verify->add_option("--seed", vopt.seed, "randomization seed (default 1)");
    verify->add_option("--max-dim", vopt.max_dim, "cap for random discrete dimensions")
        ->check(CLI::Range(std::size_t(2), std::size_t(4096)));
    verify->add_option("--grid-n", vopt.grid_n, "grid size for continuum checks")
        ->check(CLI::Range(std::size_t(64), std::size_t(65536)));
    verify->add_option("--only", vopt.only, "run only invariants whose name contains this");
    verify
        ->add_option("--inject-amplitude-perturbation", vopt.inject_perturbation,
                     "test hook: perturb amplitudes after normalization")
        ->group("");  // hidden from --help
    verify->callback([&] { std::exit(qprob::cli::run_verify(vopt)); });

    CLI11_PARSE(app, argc, argv);
    return 0;
}
