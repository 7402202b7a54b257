#pragma once

#include "adlab/advect.hpp"

namespace adlab {

struct FitResult {
    double exponent = 0.0;   // decay exponent alpha in value ~ t^(-alpha)
    double r_squared = 0.0;
    int n_samples = 0;
};

// Least-squares slope of log(value) vs log(t) over samples with
// t_lo <= t <= t_hi. Requires >= 10 samples, t > 0 and strictly positive
// values inside the window.
FitResult fit_decay(const ScalarSeries& s, double t_lo, double t_hi);

}  // namespace adlab
