#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace gapdex {

// Options shared by the command entry points. Optional fields fall back to
// per-command defaults, so one struct serves every subcommand.
struct RunConfig {
    std::optional<std::string> input_path;
    std::optional<std::string> column;
    std::optional<std::size_t> n;
    std::optional<std::size_t> reps;
    std::uint64_t seed = 0;
    std::optional<std::string> grid_text;
    std::string check = "all";
    std::size_t directions = 100;
    std::string format = "json";  // "json" or "csv"
    bool half = false;
    double eps = 1.0;
    std::size_t workers = 1;
};

// Each entry point writes the report to `out`, notes to `diag`, and
// returns the process exit status. Input and argument problems are thrown
// (std::invalid_argument and the gapdex error types), not returned.

// Splits one numeric series and tests the split. Requires input_path.
int cmd_detect(const RunConfig& cfg, std::ostream& out, std::ostream& diag);

// Samples the null distribution of the statistic (or its positive-side
// variant with half = true) and reports the fit to the limit law.
int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& diag);

// Runs the named analytic or Monte Carlo check ("all" runs every one).
// Returns 1 when any check fails, 0 otherwise.
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& diag);

// Scans random unit directions of a multivariate input and reports the
// split of the best 1-d projection. The reported p-value is for that
// single projection; it is not adjusted for the number of directions.
int cmd_project(const RunConfig& cfg, std::ostream& out, std::ostream& diag);

}  // namespace gapdex
