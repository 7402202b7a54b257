#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "adlab/grid.hpp"

namespace adlab {

enum class CorpusFamily { gaussian, smoothed_box, trig_packet, random_bump_sum };

// Seeded synthetic test functions, smooth at grid scale and effectively
// compactly supported inside the domain. Parameter ranges keep every member
// resolved by the default corpus grids (width >= ~40 h at n = 4096 on
// [-30, 30]).
struct CorpusSpec {
    std::uint64_t seed = 1;
    int count = 200;
    std::vector<CorpusFamily> families{CorpusFamily::gaussian, CorpusFamily::smoothed_box,
                                       CorpusFamily::trig_packet, CorpusFamily::random_bump_sum};
    double center_min = -6.0, center_max = 6.0;
    double width_min = 0.6, width_max = 2.5;
    double amp_min = 0.5, amp_max = 2.0;
    double packet_wavenumber_min = 0.5, packet_wavenumber_max = 3.0;
    int bumps_min = 2, bumps_max = 5;
};

std::vector<GridFunction> generate_corpus(const CorpusSpec& spec, const Grid1D& grid);

// ||f||_2 / (C2 ||f||_1^(2/3) ||f_x||_2^(1/3)); <= 1 in the continuum.
double nash_ratio(const GridFunction& f);

// ||f||_inf / (C_inf ||f||_1^(1/3) ||f_x||_2^(2/3)); <= 1 in the continuum.
double sup_interp_ratio(const GridFunction& f);

struct CorpusReport {
    int count = 0;
    double max_nash = 0.0;
    double max_interp = 0.0;
    int argmax_nash = -1;
    int argmax_interp = -1;
    double tol_ineq = 5e-3;
    bool pass = false;
    std::vector<int> nash_histogram;    // 21 bins over [0, 1.05]
    std::vector<int> interp_histogram;
};

CorpusReport verify_corpus(const CorpusSpec& spec, const Grid1D& grid, double tol_ineq = 5e-3);
std::string to_json_string(const CorpusReport& report);

const char* to_string(CorpusFamily f);

}  // namespace adlab
