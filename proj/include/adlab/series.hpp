#pragma once

#include <string>
#include <vector>

#include "adlab/advect.hpp"

namespace adlab {

// Per-sample trajectory records: norms for each tracked finite p, the sup
// norm, signed mass, field oscillation B(t), midrange beta(t), and the
// fraction of |u| mass inside the outer 5% of the domain (each side).
struct TimeSeries {
    std::vector<double> times;
    std::vector<double> p_list;              // finite tracked p's, ascending
    std::vector<std::vector<double>> lp;     // lp[j][k] = ||u(.,t_k)||_{p_j}
    std::vector<double> linf;
    std::vector<double> mass;
    std::vector<double> B;
    std::vector<double> beta;
    std::vector<double> boundary_frac;

    struct Meta {
        std::string config_hash;
        std::string scheme;  // "<advection>+<diffusion>"
        std::string grid;    // "x_min,x_max,n_cells"
        bool contaminated = false;
    } meta;

    std::size_t n_samples() const { return times.size(); }
    // index into p_list, or -1
    int p_index(double p) const;
    ScalarSeries series_of(const std::string& column) const;  // "l1", "linf", "mass", ...
};

// 17-significant-digit rendering used for all CSV numbers; strtod round-trips
// it exactly.
std::string fmt17(double v);

// CSV schema (bit-exact): '#' metadata lines, then the header row
// t,l1,...,lp<k>,linf,mass,B,beta,boundary_frac and one row per sample.
std::string to_csv(const TimeSeries& ts);
TimeSeries from_csv(const std::string& text);
void write_csv(const std::string& path, const TimeSeries& ts);
TimeSeries read_csv(const std::string& path);

}  // namespace adlab
