#include "adlab/advect.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "adlab/errors.hpp"
#include "adlab/kernels.hpp"

namespace adlab {

double FieldSpec::eval(double x, double t) const {
    switch (kind) {
        case FieldKind::zero: return 0.0;
        case FieldKind::constant: return offset;
        case FieldKind::cosine: return offset + amplitude * std::cos(wavenumber * x);
        case FieldKind::monotone_tanh: return amplitude * std::tanh(wavenumber * x);
        case FieldKind::modulated_cosine:
            return offset + amplitude * std::sin(omega * t) * std::cos(wavenumber * x);
    }
    return 0.0;
}

double FieldSpec::sup_abs(double t) const {
    switch (kind) {
        case FieldKind::zero: return 0.0;
        case FieldKind::constant: return std::fabs(offset);
        case FieldKind::cosine: return std::fabs(offset) + std::fabs(amplitude);
        case FieldKind::monotone_tanh: return std::fabs(amplitude);
        case FieldKind::modulated_cosine:
            return std::fabs(offset) + std::fabs(amplitude * std::sin(omega * t));
    }
    return 0.0;
}

bool FieldSpec::monotone() const {
    switch (kind) {
        case FieldKind::zero:
        case FieldKind::constant: return true;
        case FieldKind::monotone_tanh: return amplitude * wavenumber >= 0.0;
        default: return false;
    }
}

GridFunction sample_field(const FieldSpec& spec, const Grid1D& grid, double t) {
    GridFunction b(grid);
    for (int i = 0; i < grid.n_cells; ++i) b[i] = spec.eval(grid.center(i), t);
    return b;
}

namespace {

// Grid extrema stand in for sup/inf over the line; that is only sound when
// the grid resolves the field, so require a full period and >= 16 samples
// per period for the oscillatory presets.
void check_resolved(const FieldSpec& spec, const Grid1D& grid) {
    if ((spec.kind == FieldKind::cosine || spec.kind == FieldKind::modulated_cosine) &&
        spec.wavenumber != 0.0) {
        const double period = 2.0 * std::numbers::pi / std::fabs(spec.wavenumber);
        if (grid.length() < period) {
            std::ostringstream os;
            os << "field oscillation: grid spans " << grid.length()
               << " but the field period is " << period;
            throw ConfigError(os.str());
        }
        if (period / grid.h() < 16.0) {
            std::ostringstream os;
            os << "field oscillation: fewer than 16 samples per field period (h=" << grid.h()
               << ", period=" << period << ")";
            throw ConfigError(os.str());
        }
    }
}

void sample_min_max(const FieldSpec& spec, const Grid1D& grid, double t, double* lo, double* hi) {
    check_resolved(spec, grid);
    GridFunction b = sample_field(spec, grid, t);
    kern::min_max(b.data(), b.values.size(), lo, hi);
}

}  // namespace

double oscillation(const FieldSpec& spec, const Grid1D& grid, double t) {
    double lo, hi;
    sample_min_max(spec, grid, t, &lo, &hi);
    return 0.5 * (hi - lo);
}

double midrange(const FieldSpec& spec, const Grid1D& grid, double t) {
    double lo, hi;
    sample_min_max(spec, grid, t, &lo, &hi);
    return 0.5 * (hi + lo);
}

double running_sup(const ScalarSeries& s, double t0, double t) {
    if (t0 > t) throw ConfigError("running_sup: t0 > t");
    bool any = false;
    double m = 0.0;
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        if (s.times[k] < t0 || s.times[k] > t) continue;
        m = any ? std::max(m, s.values[k]) : s.values[k];
        any = true;
    }
    if (!any) throw ConfigError("running_sup: window [t0, t] contains no samples");
    return m;
}

double tail_limsup(const ScalarSeries& s, double window_fraction) {
    if (s.times.empty()) throw ConfigError("tail_limsup: empty series");
    if (!(window_fraction > 0.0 && window_fraction <= 1.0))
        throw ConfigError("tail_limsup: window_fraction must be in (0, 1]");
    const double t_lo =
        s.times.back() - window_fraction * (s.times.back() - s.times.front());
    double m = s.values.back();
    for (std::size_t k = 0; k < s.times.size(); ++k)
        if (s.times[k] >= t_lo) m = std::max(m, s.values[k]);
    return m;
}

}  // namespace adlab
