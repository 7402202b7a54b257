#include "adlab/grid.hpp"

#include <cmath>
#include <sstream>

#include "adlab/errors.hpp"
#include "adlab/kernels.hpp"

namespace adlab {

Grid1D make_grid(double x_min, double x_max, int n_cells) {
    if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
        std::ostringstream os;
        os << "make_grid: domain extent must be positive and finite (x_min=" << x_min
           << ", x_max=" << x_max << ")";
        throw ConfigError(os.str());
    }
    if (n_cells < 8) {
        std::ostringstream os;
        os << "make_grid: n_cells must be >= 8 (got " << n_cells << ")";
        throw ConfigError(os.str());
    }
    return Grid1D{x_min, x_max, n_cells};
}

bool all_finite(const GridFunction& f) {
    return std::isfinite(kern::max_abs(f.data(), f.values.size()));
}

double lp_norm(const GridFunction& f, double p) {
    const std::size_t n = f.values.size();
    if (std::isinf(p)) return kern::max_abs(f.data(), n);
    if (!(p >= 1.0)) {
        std::ostringstream os;
        os << "lp_norm: p must be >= 1 or infinity (got " << p << ")";
        throw ConfigError(os.str());
    }
    const double h = f.grid.h();
    if (p == 1.0) return h * kern::sum_abs(f.data(), n);
    if (p == 2.0) return std::sqrt(h * kern::sum_sq(f.data(), n));
    return std::pow(h * kern::sum_abs_pow(f.data(), n, p), 1.0 / p);
}

double mass(const GridFunction& f) { return f.grid.h() * kern::sum(f.data(), f.values.size()); }

GridFunction derivative(const GridFunction& f) {
    GridFunction out(f.grid);
    kern::central_diff(f.data(), 1.0 / (2.0 * f.grid.h()), out.data(), f.values.size());
    return out;
}

}  // namespace adlab
