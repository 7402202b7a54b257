#include "adlab/profile.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>
#include <sstream>

#include "adlab/errors.hpp"
#include "adlab/kernels.hpp"

namespace adlab {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw ConfigError(std::string("initial_profile: ") + msg);
}

double gaussian(double x, double c, double w, double a) {
    const double z = (x - c) / w;
    return a * std::exp(-0.5 * z * z);
}

void validate(const ProfileSpec& s) {
    for (double w : s.widths) require(w > 0.0, "widths must be strictly positive");
    switch (s.kind) {
        case ProfileKind::gaussian:
        case ProfileKind::box:
            require(s.centers.size() >= 1 && s.widths.size() >= 1 && s.amplitudes.size() >= 1,
                    "gaussian/box need one center, width and amplitude");
            break;
        case ProfileKind::bimodal_signed:
            require(s.centers.size() == 2 && s.widths.size() == 2 && s.amplitudes.size() == 2,
                    "bimodal_signed needs two centers, widths and amplitudes");
            break;
        case ProfileKind::trig_poly:
            require(!s.coefficients.empty(), "trig_poly needs a non-empty coefficient list");
            break;
    }
}

}  // namespace

GridFunction initial_profile(const ProfileSpec& spec, const Grid1D& grid) {
    validate(spec);

    GridFunction f(grid);
    switch (spec.kind) {
        case ProfileKind::gaussian:
            for (int i = 0; i < grid.n_cells; ++i)
                f[i] = gaussian(grid.center(i), spec.centers[0], spec.widths[0],
                                spec.amplitudes[0]);
            break;
        case ProfileKind::box:
            for (int i = 0; i < grid.n_cells; ++i) {
                const double x = grid.center(i);
                f[i] = std::fabs(x - spec.centers[0]) <= 0.5 * spec.widths[0] ? spec.amplitudes[0]
                                                                              : 0.0;
            }
            break;
        case ProfileKind::bimodal_signed:
            for (int i = 0; i < grid.n_cells; ++i) {
                const double x = grid.center(i);
                f[i] = gaussian(x, spec.centers[0], spec.widths[0], spec.amplitudes[0]) +
                       gaussian(x, spec.centers[1], spec.widths[1], spec.amplitudes[1]);
            }
            break;
        case ProfileKind::trig_poly: {
            const double w = 2.0 * std::numbers::pi / grid.length();
            for (int i = 0; i < grid.n_cells; ++i) {
                const double th = w * (grid.center(i) - grid.x_min);
                double v = 0.0;
                for (std::size_t k = 0; k < spec.coefficients.size(); ++k)
                    v += spec.coefficients[k] * std::sin(static_cast<double>(k + 1) * th);
                f[i] = v;
            }
            break;
        }
    }

    const double peak = kern::max_abs(f.data(), f.values.size());
    require(peak > 0.0, "profile is identically zero");
    require(std::isfinite(peak), "profile parameters produce non-finite values");

    // trig_poly is periodic by construction; the support guard only applies
    // to the localized families.
    if (spec.kind != ProfileKind::trig_poly) {
        const double tol = 1e-14 * peak;
        if (std::fabs(f[0]) > tol || std::fabs(f[grid.n_cells - 1]) > tol) {
            std::ostringstream os;
            os << "initial_profile: support touches the domain boundary (|f| > " << tol
               << " at an edge cell); enlarge [x_min, x_max]";
            throw ConfigError(os.str());
        }
    }

    switch (spec.normalization) {
        case Normalization::none: break;
        case Normalization::unit_l1: {
            const double s = lp_norm(f, 1.0);
            for (double& v : f.values) v /= s;
            break;
        }
        case Normalization::unit_sup:
            for (double& v : f.values) v /= peak;
            break;
    }
    return f;
}

}  // namespace adlab
