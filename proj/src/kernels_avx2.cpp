#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "adlab/kernels.hpp"

namespace adlab::kern::avx2 {

namespace {

inline double hsum(__m256d v) {
    double lane[4];
    _mm256_storeu_pd(lane, v);
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

inline __m256d vabs(__m256d v) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    return _mm256_andnot_pd(sign, v);
}

double k_sum(const double* x, std::size_t n) {
    __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        a0 = _mm256_add_pd(a0, _mm256_loadu_pd(x + i));
        a1 = _mm256_add_pd(a1, _mm256_loadu_pd(x + i + 4));
    }
    for (; i + 4 <= n; i += 4) a0 = _mm256_add_pd(a0, _mm256_loadu_pd(x + i));
    double s = hsum(_mm256_add_pd(a0, a1));
    for (; i < n; ++i) s += x[i];
    return s;
}

double k_sum_abs(const double* x, std::size_t n) {
    __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        a0 = _mm256_add_pd(a0, vabs(_mm256_loadu_pd(x + i)));
        a1 = _mm256_add_pd(a1, vabs(_mm256_loadu_pd(x + i + 4)));
    }
    for (; i + 4 <= n; i += 4) a0 = _mm256_add_pd(a0, vabs(_mm256_loadu_pd(x + i)));
    double s = hsum(_mm256_add_pd(a0, a1));
    for (; i < n; ++i) s += std::fabs(x[i]);
    return s;
}

double k_sum_sq(const double* x, std::size_t n) {
    __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256d v0 = _mm256_loadu_pd(x + i);
        __m256d v1 = _mm256_loadu_pd(x + i + 4);
        a0 = _mm256_add_pd(a0, _mm256_mul_pd(v0, v0));
        a1 = _mm256_add_pd(a1, _mm256_mul_pd(v1, v1));
    }
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(x + i);
        a0 = _mm256_add_pd(a0, _mm256_mul_pd(v, v));
    }
    double s = hsum(_mm256_add_pd(a0, a1));
    for (; i < n; ++i) s += x[i] * x[i];
    return s;
}

// std::pow does not vectorize with plain intrinsics; general-p moments stay on
// the reference path.
double k_sum_abs_pow(const double* x, std::size_t n, double p) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::pow(std::fabs(x[i]), p);
    return s;
}

double k_max_abs(const double* x, std::size_t n) {
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, vabs(_mm256_loadu_pd(x + i)));
    double lane[4];
    _mm256_storeu_pd(lane, m);
    double r = std::max(std::max(lane[0], lane[1]), std::max(lane[2], lane[3]));
    for (; i < n; ++i) r = std::max(r, std::fabs(x[i]));
    return r;
}

void k_min_max(const double* x, std::size_t n, double* lo, double* hi) {
    double mn = x[0], mx = x[0];
    std::size_t i = 0;
    if (n >= 4) {
        __m256d vmn = _mm256_loadu_pd(x), vmx = vmn;
        for (i = 4; i + 4 <= n; i += 4) {
            __m256d v = _mm256_loadu_pd(x + i);
            vmn = _mm256_min_pd(vmn, v);
            vmx = _mm256_max_pd(vmx, v);
        }
        double a[4], b[4];
        _mm256_storeu_pd(a, vmn);
        _mm256_storeu_pd(b, vmx);
        mn = std::min(std::min(a[0], a[1]), std::min(a[2], a[3]));
        mx = std::max(std::max(b[0], b[1]), std::max(b[2], b[3]));
    }
    for (; i < n; ++i) {
        mn = std::min(mn, x[i]);
        mx = std::max(mx, x[i]);
    }
    *lo = mn;
    *hi = mx;
}

double k_dot(const double* a, const double* b, std::size_t n) {
    __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        a0 = _mm256_add_pd(a0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
        a1 = _mm256_add_pd(a1,
                           _mm256_mul_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4)));
    }
    for (; i + 4 <= n; i += 4)
        a0 = _mm256_add_pd(a0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    double s = hsum(_mm256_add_pd(a0, a1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void k_central_diff(const double* u, double inv_2h, double* out, std::size_t n) {
    const __m256d vih = _mm256_set1_pd(inv_2h);
    out[0] = (u[1] - u[n - 1]) * inv_2h;
    std::size_t i = 1;
    for (; i + 4 < n; i += 4) {
        __m256d up = _mm256_loadu_pd(u + i + 1);
        __m256d um = _mm256_loadu_pd(u + i - 1);
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_sub_pd(up, um), vih));
    }
    for (; i + 1 < n; ++i) out[i] = (u[i + 1] - u[i - 1]) * inv_2h;
    out[n - 1] = (u[0] - u[n - 2]) * inv_2h;
}

void k_upwind_flux(const double* u, const double* bf, double* flux, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 5 <= n; i += 4) {
        __m256d b = _mm256_loadu_pd(bf + i);
        __m256d ui = _mm256_loadu_pd(u + i);
        __m256d up = _mm256_loadu_pd(u + i + 1);
        __m256d pick = _mm256_blendv_pd(up, ui, _mm256_cmp_pd(b, zero, _CMP_GE_OQ));
        _mm256_storeu_pd(flux + i, _mm256_mul_pd(b, pick));
    }
    for (; i + 1 < n; ++i) flux[i] = bf[i] * (bf[i] >= 0.0 ? u[i] : u[i + 1]);
    flux[n - 1] = bf[n - 1] * (bf[n - 1] >= 0.0 ? u[n - 1] : u[0]);
}

void k_central_flux(const double* u, const double* bf, double* flux, std::size_t n) {
    const __m256d half = _mm256_set1_pd(0.5);
    std::size_t i = 0;
    for (; i + 5 <= n; i += 4) {
        __m256d b = _mm256_loadu_pd(bf + i);
        __m256d ui = _mm256_loadu_pd(u + i);
        __m256d up = _mm256_loadu_pd(u + i + 1);
        _mm256_storeu_pd(flux + i, _mm256_mul_pd(b, _mm256_mul_pd(half, _mm256_add_pd(ui, up))));
    }
    for (; i + 1 < n; ++i) flux[i] = bf[i] * (0.5 * (u[i] + u[i + 1]));
    flux[n - 1] = bf[n - 1] * (0.5 * (u[n - 1] + u[0]));
}

void k_flux_div_update(const double* u, const double* flux, double lam, double* out,
                       std::size_t n) {
    const __m256d vl = _mm256_set1_pd(lam);
    out[0] = u[0] - lam * (flux[0] - flux[n - 1]);
    std::size_t i = 1;
    for (; i + 4 <= n; i += 4) {
        __m256d f = _mm256_loadu_pd(flux + i);
        __m256d fm = _mm256_loadu_pd(flux + i - 1);
        __m256d ui = _mm256_loadu_pd(u + i);
        _mm256_storeu_pd(out + i, _mm256_sub_pd(ui, _mm256_mul_pd(vl, _mm256_sub_pd(f, fm))));
    }
    for (; i < n; ++i) out[i] = u[i] - lam * (flux[i] - flux[i - 1]);
}

void k_diffusion_rhs(const double* u, double alpha, double* out, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    const __m256d two = _mm256_set1_pd(2.0);
    out[0] = u[0] + alpha * ((u[n - 1] - 2.0 * u[0]) + u[1]);
    std::size_t i = 1;
    for (; i + 4 < n; i += 4) {
        __m256d um = _mm256_loadu_pd(u + i - 1);
        __m256d ui = _mm256_loadu_pd(u + i);
        __m256d up = _mm256_loadu_pd(u + i + 1);
        __m256d lap = _mm256_add_pd(_mm256_sub_pd(um, _mm256_mul_pd(two, ui)), up);
        _mm256_storeu_pd(out + i, _mm256_add_pd(ui, _mm256_mul_pd(va, lap)));
    }
    for (; i + 1 < n; ++i) out[i] = u[i] + alpha * ((u[i - 1] - 2.0 * u[i]) + u[i + 1]);
    out[n - 1] = u[n - 1] + alpha * ((u[n - 2] - 2.0 * u[n - 1]) + u[0]);
}

}  // namespace

extern const KernelTable table;
const KernelTable table = {
    k_sum,          k_sum_abs,      k_sum_sq,     k_sum_abs_pow,     k_max_abs, k_min_max,
    k_dot,          k_central_diff, k_upwind_flux, k_central_flux,
    k_flux_div_update, k_diffusion_rhs,
};

bool supported() { return __builtin_cpu_supports("avx2"); }

}  // namespace adlab::kern::avx2

#endif  // x86-64
