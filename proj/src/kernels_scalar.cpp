#include <cmath>
#include <cstddef>

#include "adlab/kernels.hpp"

// Reference kernels. The elementwise/stencil loops spell out the exact
// expression trees the SIMD variants use, so equivalence tests can demand
// bitwise agreement there (the project builds with -ffp-contract=off).

namespace adlab::kern::scalar {

namespace {

double k_sum(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
}

double k_sum_abs(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::fabs(x[i]);
    return s;
}

double k_sum_sq(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
    return s;
}

double k_sum_abs_pow(const double* x, std::size_t n, double p) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::pow(std::fabs(x[i]), p);
    return s;
}

double k_max_abs(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
    return m;
}

void k_min_max(const double* x, std::size_t n, double* lo, double* hi) {
    double mn = x[0], mx = x[0];
    for (std::size_t i = 1; i < n; ++i) {
        mn = std::min(mn, x[i]);
        mx = std::max(mx, x[i]);
    }
    *lo = mn;
    *hi = mx;
}

double k_dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void k_central_diff(const double* u, double inv_2h, double* out, std::size_t n) {
    out[0] = (u[1] - u[n - 1]) * inv_2h;
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (u[i + 1] - u[i - 1]) * inv_2h;
    out[n - 1] = (u[0] - u[n - 2]) * inv_2h;
}

void k_upwind_flux(const double* u, const double* bf, double* flux, std::size_t n) {
    for (std::size_t i = 0; i + 1 < n; ++i)
        flux[i] = bf[i] * (bf[i] >= 0.0 ? u[i] : u[i + 1]);
    flux[n - 1] = bf[n - 1] * (bf[n - 1] >= 0.0 ? u[n - 1] : u[0]);
}

void k_central_flux(const double* u, const double* bf, double* flux, std::size_t n) {
    for (std::size_t i = 0; i + 1 < n; ++i) flux[i] = bf[i] * (0.5 * (u[i] + u[i + 1]));
    flux[n - 1] = bf[n - 1] * (0.5 * (u[n - 1] + u[0]));
}

void k_flux_div_update(const double* u, const double* flux, double lam, double* out,
                       std::size_t n) {
    out[0] = u[0] - lam * (flux[0] - flux[n - 1]);
    for (std::size_t i = 1; i < n; ++i) out[i] = u[i] - lam * (flux[i] - flux[i - 1]);
}

void k_diffusion_rhs(const double* u, double alpha, double* out, std::size_t n) {
    out[0] = u[0] + alpha * ((u[n - 1] - 2.0 * u[0]) + u[1]);
    for (std::size_t i = 1; i + 1 < n; ++i)
        out[i] = u[i] + alpha * ((u[i - 1] - 2.0 * u[i]) + u[i + 1]);
    out[n - 1] = u[n - 1] + alpha * ((u[n - 2] - 2.0 * u[n - 1]) + u[0]);
}

}  // namespace

extern const KernelTable table;
const KernelTable table = {
    k_sum,          k_sum_abs,      k_sum_sq,     k_sum_abs_pow,     k_max_abs, k_min_max,
    k_dot,          k_central_diff, k_upwind_flux, k_central_flux,
    k_flux_div_update, k_diffusion_rhs,
};

}  // namespace adlab::kern::scalar
