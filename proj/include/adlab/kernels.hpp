#pragma once

#include <cstddef>
#include <vector>

// Inner-loop primitives behind the grid/solver arithmetic. Every kernel has a
// scalar reference implementation plus SIMD variants (AVX2 on x86-64, NEON on
// aarch64) selected once at startup. Selection can be forced with the
// environment variable ADLAB_KERNELS=scalar|avx2|neon|auto.
//
// Stencil kernels assume periodic index wrap and n >= 2; `out` must not alias
// the inputs. Elementwise kernels evaluate the same expression tree in every
// backend, so their results agree bitwise; reductions may reassociate and are
// equivalence-tested to a small relative tolerance instead.

namespace adlab::kern {

enum class Backend { scalar, avx2, neon };

struct KernelTable {
    // reductions
    double (*sum)(const double* x, std::size_t n);
    double (*sum_abs)(const double* x, std::size_t n);
    double (*sum_sq)(const double* x, std::size_t n);
    double (*sum_abs_pow)(const double* x, std::size_t n, double p);
    double (*max_abs)(const double* x, std::size_t n);
    void (*min_max)(const double* x, std::size_t n, double* lo, double* hi);
    double (*dot)(const double* a, const double* b, std::size_t n);
    // periodic stencils
    // out[i] = (u[i+1] - u[i-1]) * inv_2h
    void (*central_diff)(const double* u, double inv_2h, double* out, std::size_t n);
    // flux[i] = bf[i] >= 0 ? bf[i]*u[i] : bf[i]*u[i+1]
    void (*upwind_flux)(const double* u, const double* bf, double* flux, std::size_t n);
    // flux[i] = bf[i] * (0.5*(u[i] + u[i+1]))
    void (*central_flux)(const double* u, const double* bf, double* flux, std::size_t n);
    // out[i] = u[i] - lam*(flux[i] - flux[i-1])
    void (*flux_div_update)(const double* u, const double* flux, double lam, double* out,
                            std::size_t n);
    // out[i] = u[i] + alpha*((u[i-1] - 2*u[i]) + u[i+1])
    void (*diffusion_rhs)(const double* u, double alpha, double* out, std::size_t n);
};

const KernelTable& kernel_table(Backend b);
std::vector<Backend> available_backends();
Backend active_backend();
const char* backend_name(Backend b);

namespace detail {
const KernelTable& active();
}

// Dispatching wrappers.
inline double sum(const double* x, std::size_t n) { return detail::active().sum(x, n); }
inline double sum_abs(const double* x, std::size_t n) { return detail::active().sum_abs(x, n); }
inline double sum_sq(const double* x, std::size_t n) { return detail::active().sum_sq(x, n); }
inline double sum_abs_pow(const double* x, std::size_t n, double p) {
    return detail::active().sum_abs_pow(x, n, p);
}
inline double max_abs(const double* x, std::size_t n) { return detail::active().max_abs(x, n); }
inline void min_max(const double* x, std::size_t n, double* lo, double* hi) {
    detail::active().min_max(x, n, lo, hi);
}
inline double dot(const double* a, const double* b, std::size_t n) {
    return detail::active().dot(a, b, n);
}
inline void central_diff(const double* u, double inv_2h, double* out, std::size_t n) {
    detail::active().central_diff(u, inv_2h, out, n);
}
inline void upwind_flux(const double* u, const double* bf, double* flux, std::size_t n) {
    detail::active().upwind_flux(u, bf, flux, n);
}
inline void central_flux(const double* u, const double* bf, double* flux, std::size_t n) {
    detail::active().central_flux(u, bf, flux, n);
}
inline void flux_div_update(const double* u, const double* flux, double lam, double* out,
                            std::size_t n) {
    detail::active().flux_div_update(u, flux, lam, out, n);
}
inline void diffusion_rhs(const double* u, double alpha, double* out, std::size_t n) {
    detail::active().diffusion_rhs(u, alpha, out, n);
}

}  // namespace adlab::kern
