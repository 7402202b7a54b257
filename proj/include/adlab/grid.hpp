#pragma once

#include <limits>
#include <vector>

namespace adlab {

inline constexpr double p_inf = std::numeric_limits<double>::infinity();

// Uniform periodic mesh on [x_min, x_max); cell centers x_i = x_min + (i+1/2)h.
// Index arithmetic wraps modulo n_cells.
struct Grid1D {
    double x_min = 0.0;
    double x_max = 1.0;
    int n_cells = 8;

    double h() const { return (x_max - x_min) / n_cells; }
    double length() const { return x_max - x_min; }
    double center(int i) const { return x_min + (i + 0.5) * h(); }
    // right face of cell i, shared with cell i+1 (mod n_cells)
    double face(int i) const { return x_min + (i + 1.0) * h(); }
    int wrap(int i) const {
        int m = i % n_cells;
        return m < 0 ? m + n_cells : m;
    }
    bool operator==(const Grid1D&) const = default;
};

Grid1D make_grid(double x_min, double x_max, int n_cells);

// Real-valued samples at cell centers.
struct GridFunction {
    Grid1D grid;
    std::vector<double> values;

    GridFunction() = default;
    explicit GridFunction(const Grid1D& g) : grid(g), values(static_cast<size_t>(g.n_cells), 0.0) {}

    int size() const { return grid.n_cells; }
    double operator[](int i) const { return values[static_cast<size_t>(i)]; }
    double& operator[](int i) { return values[static_cast<size_t>(i)]; }
    const double* data() const { return values.data(); }
    double* data() { return values.data(); }

    template <class F>
    static GridFunction sample(const Grid1D& g, F&& f) {
        GridFunction out(g);
        for (int i = 0; i < g.n_cells; ++i) out[i] = f(g.center(i));
        return out;
    }
};

bool all_finite(const GridFunction& f);

// Midpoint-rule L^p norm: (h * sum |f_i|^p)^(1/p) for finite p >= 1,
// max_i |f_i| for p = p_inf.
double lp_norm(const GridFunction& f, double p);

// Signed integral h * sum f_i.
double mass(const GridFunction& f);

// Periodic central difference (f_{i+1} - f_{i-1}) / (2h).
GridFunction derivative(const GridFunction& f);

}  // namespace adlab
