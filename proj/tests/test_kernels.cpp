#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "adlab/kernels.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace adlab;
using testsup::Rand;

namespace {

const std::vector<std::size_t> sizes = {2,   3,   4,    5,    7,   8,   9,
                                        15,  16,  17,   31,   33,  100, 255,
                                        1000, 4096, 4097};

// naive periodic references, written with modular indexing only
std::vector<double> naive_central_diff(const std::vector<double>& u, double inv2h) {
    const std::size_t n = u.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = (u[(i + 1) % n] - u[(i + n - 1) % n]) * inv2h;
    return out;
}

std::vector<double> naive_upwind_flux(const std::vector<double>& u, const std::vector<double>& b) {
    const std::size_t n = u.size();
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = b[i] * (b[i] >= 0.0 ? u[i] : u[(i + 1) % n]);
    return f;
}

std::vector<double> naive_central_flux(const std::vector<double>& u,
                                       const std::vector<double>& b) {
    const std::size_t n = u.size();
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = b[i] * (0.5 * (u[i] + u[(i + 1) % n]));
    return f;
}

std::vector<double> naive_flux_div(const std::vector<double>& u, const std::vector<double>& f,
                                   double lam) {
    const std::size_t n = u.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = u[i] - lam * (f[i] - f[(i + n - 1) % n]);
    return out;
}

std::vector<double> naive_diffusion_rhs(const std::vector<double>& u, double alpha) {
    const std::size_t n = u.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = u[i] + alpha * ((u[(i + n - 1) % n] - 2.0 * u[i]) + u[(i + 1) % n]);
    return out;
}

}  // namespace

TEST_CASE("scalar kernels match naive periodic references bitwise") {
    Rand rng(101);
    const auto& t = kern::kernel_table(kern::Backend::scalar);
    for (std::size_t n : sizes) {
        auto u = rng.vec(n, -10.0, 10.0);
        auto b = rng.vec(n, -5.0, 5.0);
        std::vector<double> out(n);

        t.central_diff(u.data(), 3.5, out.data(), n);
        CHECK(out == naive_central_diff(u, 3.5));
        t.upwind_flux(u.data(), b.data(), out.data(), n);
        CHECK(out == naive_upwind_flux(u, b));
        t.central_flux(u.data(), b.data(), out.data(), n);
        CHECK(out == naive_central_flux(u, b));
        auto flux = naive_upwind_flux(u, b);
        t.flux_div_update(u.data(), flux.data(), 0.3, out.data(), n);
        CHECK(out == naive_flux_div(u, flux, 0.3));
        t.diffusion_rhs(u.data(), 0.17, out.data(), n);
        CHECK(out == naive_diffusion_rhs(u, 0.17));
    }
}

TEST_CASE("scalar reduction sanity") {
    const auto& t = kern::kernel_table(kern::Backend::scalar);
    std::vector<double> ones(100, 1.0);
    CHECK(t.sum(ones.data(), 100) == 100.0);
    std::vector<double> v{1.0, -2.0, 3.0, -4.0};
    CHECK(t.sum_abs(v.data(), 4) == 10.0);
    CHECK(t.sum_sq(v.data(), 4) == 30.0);
    CHECK(t.max_abs(v.data(), 4) == 4.0);
    double lo, hi;
    t.min_max(v.data(), 4, &lo, &hi);
    CHECK(lo == -4.0);
    CHECK(hi == 3.0);
    std::vector<double> w{2.0, 2.0, 2.0, 2.0};
    CHECK(t.dot(v.data(), w.data(), 4) == -4.0);
    CHECK(t.sum_abs_pow(v.data(), 4, 3.0) == doctest::Approx(1 + 8 + 27 + 64).epsilon(1e-15));
}

TEST_CASE("SIMD variants agree with the scalar reference") {
    const auto& ref = kern::kernel_table(kern::Backend::scalar);
    for (kern::Backend b : kern::available_backends()) {
        if (b == kern::Backend::scalar) continue;
        INFO("backend: ", kern::backend_name(b));
        const auto& t = kern::kernel_table(b);
        Rand rng(707);
        for (std::size_t n : sizes) {
            auto u = rng.vec(n, -10.0, 10.0);
            auto bf = rng.vec(n, -5.0, 5.0);

            // reductions: reassociation allowed, tight relative tolerance
            const double scale = ref.sum_abs(u.data(), n) + 1.0;
            CHECK(std::fabs(t.sum(u.data(), n) - ref.sum(u.data(), n)) <= 1e-12 * scale);
            CHECK(std::fabs(t.sum_abs(u.data(), n) - ref.sum_abs(u.data(), n)) <= 1e-12 * scale);
            CHECK(std::fabs(t.sum_sq(u.data(), n) - ref.sum_sq(u.data(), n)) <=
                  1e-12 * ref.sum_sq(u.data(), n) + 1e-14);
            CHECK(std::fabs(t.dot(u.data(), bf.data(), n) - ref.dot(u.data(), bf.data(), n)) <=
                  1e-12 * (ref.sum_abs(u.data(), n) * 5.0 + 1.0));
            CHECK(std::fabs(t.sum_abs_pow(u.data(), n, 2.5) - ref.sum_abs_pow(u.data(), n, 2.5)) <=
                  1e-12 * ref.sum_abs_pow(u.data(), n, 2.5));

            // order-insensitive reductions: exact
            CHECK(t.max_abs(u.data(), n) == ref.max_abs(u.data(), n));
            double lo1, hi1, lo2, hi2;
            t.min_max(u.data(), n, &lo1, &hi1);
            ref.min_max(u.data(), n, &lo2, &hi2);
            CHECK(lo1 == lo2);
            CHECK(hi1 == hi2);

            // elementwise/stencil kernels: identical expression trees, so
            // bitwise equality is required
            std::vector<double> a(n), c(n);
            t.central_diff(u.data(), 2.25, a.data(), n);
            ref.central_diff(u.data(), 2.25, c.data(), n);
            CHECK(a == c);
            t.upwind_flux(u.data(), bf.data(), a.data(), n);
            ref.upwind_flux(u.data(), bf.data(), c.data(), n);
            CHECK(a == c);
            t.central_flux(u.data(), bf.data(), a.data(), n);
            ref.central_flux(u.data(), bf.data(), c.data(), n);
            CHECK(a == c);
            t.flux_div_update(u.data(), bf.data(), 0.4, a.data(), n);
            ref.flux_div_update(u.data(), bf.data(), 0.4, c.data(), n);
            CHECK(a == c);
            t.diffusion_rhs(u.data(), 0.31, a.data(), n);
            ref.diffusion_rhs(u.data(), 0.31, c.data(), n);
            CHECK(a == c);
        }
    }
}

TEST_CASE("dispatcher resolves to an available backend") {
    const kern::Backend b = kern::active_backend();
    bool found = false;
    for (kern::Backend a : kern::available_backends())
        if (a == b) found = true;
    CHECK(found);
    std::vector<double> empty;
    CHECK(kern::sum(empty.data(), 0) == 0.0);
    CHECK(kern::max_abs(empty.data(), 0) == 0.0);
}
