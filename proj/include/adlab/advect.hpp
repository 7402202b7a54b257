#pragma once

#include <vector>

#include "adlab/grid.hpp"

namespace adlab {

enum class FieldKind { zero, constant, cosine, monotone_tanh, modulated_cosine };

// Preset advection fields. With A = amplitude, k = wavenumber, c = offset,
// w = omega:
//   zero               b = 0
//   constant           b = c
//   cosine             b(x)   = c + A cos(k x)
//   monotone_tanh      b(x)   = A tanh(k x)        (b_x >= 0 for A k >= 0)
//   modulated_cosine   b(x,t) = c + A sin(w t) cos(k x)
// All presets are bounded: |b| <= |c| + |A|.
struct FieldSpec {
    FieldKind kind = FieldKind::zero;
    double amplitude = 0.0;
    double wavenumber = 0.0;
    double offset = 0.0;
    double omega = 0.0;

    double eval(double x, double t) const;
    // exact sup_x |b(x,t)| of the preset family
    double sup_abs(double t) const;
    bool time_dependent() const { return kind == FieldKind::modulated_cosine; }
    // b_x >= 0 everywhere, for all t
    bool monotone() const;
};

GridFunction sample_field(const FieldSpec& spec, const Grid1D& grid, double t);

// Half the spatial max-min gap of b(.,t), from cell-center samples.
double oscillation(const FieldSpec& spec, const Grid1D& grid, double t);

// Half the spatial max+min sum of b(.,t).
double midrange(const FieldSpec& spec, const Grid1D& grid, double t);

// Time-stamped scalar samples; times strictly increasing.
struct ScalarSeries {
    std::vector<double> times;
    std::vector<double> values;
};

// max of values over samples with t0 <= time <= t; rejects an empty window.
double running_sup(const ScalarSeries& s, double t0, double t);

// max of values over the final window_fraction of the sampled time range —
// a finite-horizon surrogate for the limsup as t -> infinity.
double tail_limsup(const ScalarSeries& s, double window_fraction);

}  // namespace adlab
