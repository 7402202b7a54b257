#pragma once

#include <vector>

#include "adlab/grid.hpp"

namespace adlab {

enum class ProfileKind { gaussian, box, bimodal_signed, trig_poly };
enum class Normalization { none, unit_l1, unit_sup };

// Initial-profile description. gaussian and box use one (center, width,
// amplitude) triple; bimodal_signed uses two with signed amplitudes;
// trig_poly ignores the triples and takes coefficients c_k of
// sin(2*pi*k*(x - x_min)/L), k = 1..K (inherently periodic).
struct ProfileSpec {
    ProfileKind kind = ProfileKind::gaussian;
    std::vector<double> centers{0.0};
    std::vector<double> widths{1.0};
    std::vector<double> amplitudes{1.0};
    std::vector<double> coefficients{};
    Normalization normalization = Normalization::none;
};

// Samples the profile at cell centers and applies the requested
// normalization. Localized profiles whose support (relative amplitude above
// 1e-14) touches the first or last cell are rejected: the truncation domain
// is too small for the whole-line interpretation.
GridFunction initial_profile(const ProfileSpec& spec, const Grid1D& grid);

}  // namespace adlab
