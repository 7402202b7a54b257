#pragma once

#include <string>
#include <vector>

#include "adlab/advect.hpp"
#include "adlab/bounds.hpp"
#include "adlab/grid.hpp"
#include "adlab/profile.hpp"
#include "adlab/solver.hpp"

namespace adlab {

// One experiment: grid + field + initial data + scheme + run window + checks.
// Parsed from a JSON document with blocks {grid, field, initial, scheme, run,
// checks, output}; unknown keys anywhere are a hard error.
struct ExperimentConfig {
    double x_min = -40.0;
    double x_max = 40.0;
    int n_cells = 4096;
    FieldSpec field;
    ProfileSpec initial;
    SchemeConfig scheme;
    double t_end = 10.0;
    double sample_dt = 0.05;
    std::vector<double> p_list{1.0, 2.0, p_inf};
    CheckConfig checks;
    std::string out_dir = "out";
    bool emit_svg = false;

    Grid1D grid() const { return make_grid(x_min, x_max, n_cells); }
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);

// Canonical JSON rendering (sorted keys); reparsing reproduces the config.
std::string dump_config(const ExperimentConfig& cfg);

// FNV-1a hash of the canonical rendering, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

std::vector<std::string> preset_names();
ExperimentConfig preset(const std::string& name);

// The reference scenario: b = 5 cos x on [-40pi, 40pi] at n = 16384, unit-L1
// gaussian initial data, t_end = 50.
ExperimentConfig fig1_scenario();

}  // namespace adlab
