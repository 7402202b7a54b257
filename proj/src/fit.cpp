#include "adlab/fit.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "adlab/errors.hpp"

namespace adlab {

FitResult fit_decay(const ScalarSeries& s, double t_lo, double t_hi) {
    std::vector<double> lx, ly;
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        const double t = s.times[k];
        if (t < t_lo || t > t_hi) continue;
        if (!(t > 0.0)) throw ConfigError("fit_decay: window must lie in t > 0");
        if (!(s.values[k] > 0.0)) {
            std::ostringstream os;
            os << "fit_decay: non-positive value " << s.values[k] << " at t=" << t;
            throw ConfigError(os.str());
        }
        lx.push_back(std::log(t));
        ly.push_back(std::log(s.values[k]));
    }
    const std::size_t n = lx.size();
    if (n < 10) throw ConfigError("fit_decay: window holds fewer than 10 samples");

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = lx[i] - mx, dy = ly[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw ConfigError("fit_decay: degenerate window (single abscissa)");
    const double slope = sxy / sxx;
    double r2 = 1.0;
    if (syy > 0.0) {
        const double ss_res = syy - slope * sxy;
        r2 = 1.0 - ss_res / syy;
    }
    return FitResult{-slope, r2, static_cast<int>(n)};
}

}  // namespace adlab
