#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>
#include <cstddef>

#include "adlab/kernels.hpp"

// NEON is baseline on aarch64, so no runtime feature check is needed.

namespace adlab::kern::neon {

namespace {

inline double hsum(float64x2_t v) { return vgetq_lane_f64(v, 0) + vgetq_lane_f64(v, 1); }

double k_sum(const double* x, std::size_t n) {
    float64x2_t a = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) a = vaddq_f64(a, vld1q_f64(x + i));
    double s = hsum(a);
    for (; i < n; ++i) s += x[i];
    return s;
}

double k_sum_abs(const double* x, std::size_t n) {
    float64x2_t a = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) a = vaddq_f64(a, vabsq_f64(vld1q_f64(x + i)));
    double s = hsum(a);
    for (; i < n; ++i) s += std::fabs(x[i]);
    return s;
}

double k_sum_sq(const double* x, std::size_t n) {
    float64x2_t a = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t v = vld1q_f64(x + i);
        a = vaddq_f64(a, vmulq_f64(v, v));
    }
    double s = hsum(a);
    for (; i < n; ++i) s += x[i] * x[i];
    return s;
}

double k_sum_abs_pow(const double* x, std::size_t n, double p) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::pow(std::fabs(x[i]), p);
    return s;
}

double k_max_abs(const double* x, std::size_t n) {
    float64x2_t m = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) m = vmaxq_f64(m, vabsq_f64(vld1q_f64(x + i)));
    double r = std::max(vgetq_lane_f64(m, 0), vgetq_lane_f64(m, 1));
    for (; i < n; ++i) r = std::max(r, std::fabs(x[i]));
    return r;
}

void k_min_max(const double* x, std::size_t n, double* lo, double* hi) {
    double mn = x[0], mx = x[0];
    std::size_t i = 0;
    if (n >= 2) {
        float64x2_t vmn = vld1q_f64(x), vmx = vmn;
        for (i = 2; i + 2 <= n; i += 2) {
            float64x2_t v = vld1q_f64(x + i);
            vmn = vminq_f64(vmn, v);
            vmx = vmaxq_f64(vmx, v);
        }
        mn = std::min(vgetq_lane_f64(vmn, 0), vgetq_lane_f64(vmn, 1));
        mx = std::max(vgetq_lane_f64(vmx, 0), vgetq_lane_f64(vmx, 1));
    }
    for (; i < n; ++i) {
        mn = std::min(mn, x[i]);
        mx = std::max(mx, x[i]);
    }
    *lo = mn;
    *hi = mx;
}

double k_dot(const double* a, const double* b, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void k_central_diff(const double* u, double inv_2h, double* out, std::size_t n) {
    const float64x2_t vih = vdupq_n_f64(inv_2h);
    out[0] = (u[1] - u[n - 1]) * inv_2h;
    std::size_t i = 1;
    for (; i + 2 < n; i += 2) {
        float64x2_t up = vld1q_f64(u + i + 1);
        float64x2_t um = vld1q_f64(u + i - 1);
        vst1q_f64(out + i, vmulq_f64(vsubq_f64(up, um), vih));
    }
    for (; i + 1 < n; ++i) out[i] = (u[i + 1] - u[i - 1]) * inv_2h;
    out[n - 1] = (u[0] - u[n - 2]) * inv_2h;
}

void k_upwind_flux(const double* u, const double* bf, double* flux, std::size_t n) {
    const float64x2_t zero = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 3 <= n; i += 2) {
        float64x2_t b = vld1q_f64(bf + i);
        float64x2_t ui = vld1q_f64(u + i);
        float64x2_t up = vld1q_f64(u + i + 1);
        uint64x2_t ge = vcgeq_f64(b, zero);
        float64x2_t pick = vbslq_f64(ge, ui, up);
        vst1q_f64(flux + i, vmulq_f64(b, pick));
    }
    for (; i + 1 < n; ++i) flux[i] = bf[i] * (bf[i] >= 0.0 ? u[i] : u[i + 1]);
    flux[n - 1] = bf[n - 1] * (bf[n - 1] >= 0.0 ? u[n - 1] : u[0]);
}

void k_central_flux(const double* u, const double* bf, double* flux, std::size_t n) {
    const float64x2_t half = vdupq_n_f64(0.5);
    std::size_t i = 0;
    for (; i + 3 <= n; i += 2) {
        float64x2_t b = vld1q_f64(bf + i);
        float64x2_t ui = vld1q_f64(u + i);
        float64x2_t up = vld1q_f64(u + i + 1);
        vst1q_f64(flux + i, vmulq_f64(b, vmulq_f64(half, vaddq_f64(ui, up))));
    }
    for (; i + 1 < n; ++i) flux[i] = bf[i] * (0.5 * (u[i] + u[i + 1]));
    flux[n - 1] = bf[n - 1] * (0.5 * (u[n - 1] + u[0]));
}

void k_flux_div_update(const double* u, const double* flux, double lam, double* out,
                       std::size_t n) {
    const float64x2_t vl = vdupq_n_f64(lam);
    out[0] = u[0] - lam * (flux[0] - flux[n - 1]);
    std::size_t i = 1;
    for (; i + 2 <= n; i += 2) {
        float64x2_t f = vld1q_f64(flux + i);
        float64x2_t fm = vld1q_f64(flux + i - 1);
        float64x2_t ui = vld1q_f64(u + i);
        vst1q_f64(out + i, vsubq_f64(ui, vmulq_f64(vl, vsubq_f64(f, fm))));
    }
    for (; i < n; ++i) out[i] = u[i] - lam * (flux[i] - flux[i - 1]);
}

void k_diffusion_rhs(const double* u, double alpha, double* out, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(alpha);
    const float64x2_t two = vdupq_n_f64(2.0);
    out[0] = u[0] + alpha * ((u[n - 1] - 2.0 * u[0]) + u[1]);
    std::size_t i = 1;
    for (; i + 2 < n; i += 2) {
        float64x2_t um = vld1q_f64(u + i - 1);
        float64x2_t ui = vld1q_f64(u + i);
        float64x2_t up = vld1q_f64(u + i + 1);
        float64x2_t lap = vaddq_f64(vsubq_f64(um, vmulq_f64(two, ui)), up);
        vst1q_f64(out + i, vaddq_f64(ui, vmulq_f64(va, lap)));
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

}  // namespace adlab::kern::neon

#endif  // aarch64
