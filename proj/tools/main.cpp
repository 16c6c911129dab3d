#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "gapdex/commands.hpp"
#include "gapdex/errors.hpp"

namespace {

void add_format(CLI::App* cmd, gapdex::RunConfig& cfg) {
    cmd->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
}

void add_seed(CLI::App* cmd, gapdex::RunConfig& cfg) {
    cmd->add_option("--seed", cfg.seed, "Random stream seed")
        ->envname("GAPDEX_SEED")
        ->capture_default_str();
}

void add_workers(CLI::App* cmd, gapdex::RunConfig& cfg) {
    cmd->add_option("--workers", cfg.workers, "Worker threads; never changes the output")
        ->check(CLI::Range(std::size_t{1}, std::size_t{256}))
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    gapdex::RunConfig cfg;
    CLI::App app{"Gap-based cluster detection for univariate samples"};
    app.require_subcommand(1);

    CLI::App* detect = app.add_subcommand("detect", "Split one numeric series and test the split");
    detect->add_option("--input", cfg.input_path, "Input file (CSV or whitespace-delimited)")
        ->required();
    detect->add_option("--column", cfg.column, "Column to read, by header name or 0-based index");
    add_format(detect, cfg);

    CLI::App* simulate =
        app.add_subcommand("simulate", "Sample the null distribution of the statistic");
    simulate->add_option("--n", cfg.n, "Sample size per replicate [default 1000]");
    simulate->add_option("--reps", cfg.reps, "Number of replicates [default 10000]");
    add_seed(simulate, cfg);
    simulate->add_option("--grid", cfg.grid_text,
                         "Evaluation grid as start:stop:step [default -2:8:0.25]");
    simulate->add_flag("--half", cfg.half, "Positive-side variant of the statistic");
    add_workers(simulate, cfg);
    add_format(simulate, cfg);

    CLI::App* verify = app.add_subcommand("verify", "Run analytic and Monte Carlo self-checks");
    verify->add_option("--check", cfg.check,
                       "inequalities, truncated, lemma31, half-limit, uniform-ratio, "
                       "spacing-scaling, or all")
        ->capture_default_str();
    verify->add_option("--n", cfg.n, "Sample size override (per-check default otherwise)");
    verify->add_option("--reps", cfg.reps, "Replicate override (per-check default otherwise)");
    add_seed(verify, cfg);
    verify->add_option("--eps", cfg.eps, "Spacing threshold for the lemma31 check")
        ->capture_default_str();
    verify->add_option("--grid", cfg.grid_text, "Evaluation grid for the half-limit check");
    add_workers(verify, cfg);
    add_format(verify, cfg);

    CLI::App* project = app.add_subcommand(
        "project", "Scan random 1-d projections of a multivariate input for the best split. "
                   "The reported p-value is not adjusted for the number of directions tried.");
    project->add_option("--input", cfg.input_path, "Input file, one row per observation")
        ->required();
    project->add_option("--directions", cfg.directions, "Number of random directions")
        ->capture_default_str();
    add_seed(project, cfg);
    add_format(project, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (detect->parsed()) {
            return gapdex::cmd_detect(cfg, std::cout, std::cerr);
        }
        if (simulate->parsed()) {
            return gapdex::cmd_simulate(cfg, std::cout, std::cerr);
        }
        if (verify->parsed()) {
            return gapdex::cmd_verify(cfg, std::cout, std::cerr);
        }
        return gapdex::cmd_project(cfg, std::cout, std::cerr);
    } catch (const gapdex::degenerate_sample_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
