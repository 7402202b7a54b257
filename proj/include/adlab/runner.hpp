#pragma once

#include <string>
#include <vector>

#include "adlab/bounds.hpp"
#include "adlab/config.hpp"
#include "adlab/series.hpp"

namespace adlab {

// Process exit codes shared by the library and the CLI.
enum ExitCode : int {
    exit_ok = 0,
    exit_check_failed = 1,   // a bound check failed or the run is contaminated
    exit_config_error = 2,
    exit_stability_failure = 3,
};

struct RunResult {
    int exit_code = exit_ok;
    bool contaminated = false;
    TimeSeries series;
    BoundReport report;
    std::string out_dir;
};

// Integrates the configured trajectory, evaluates the enabled checks and
// writes series.csv, report.json, config.json (and optional SVG plots) into
// cfg.out_dir. Prints one line per check when `quiet` is false.
RunResult run(const ExperimentConfig& cfg, bool quiet = false);

// Runs every *.json config in the directory in parallel, each into
// <its output.directory>/<config file stem>. Returns the worst exit code.
int sweep(const std::string& config_dir);

void write_line_svg(const std::string& path, const std::string& title,
                    const std::vector<double>& x, const std::vector<double>& y);

}  // namespace adlab
