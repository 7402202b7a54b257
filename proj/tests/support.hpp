#pragma once

// Shared oracles and helpers for the test suites. The analytic solutions here
// are independent of the library's numerical path.

#include <cmath>
#include <cstdint>
#include <vector>

#include "adlab/grid.hpp"

namespace testsup {

// Heat flow of u0(x) = exp(-x^2): stays gaussian with variance 1/2 + 2t,
// i.e. u(x,t) = (1+4t)^(-1/2) exp(-x^2/(1+4t)).
inline double heat_of_exp_sq(double x, double t) {
    const double s = 1.0 + 4.0 * t;
    return std::exp(-x * x / s) / std::sqrt(s);
}

// Same initial data advected by a constant speed c: frame change x -> x - ct.
inline double heat_of_exp_sq_translated(double x, double t, double c) {
    return heat_of_exp_sq(x - c * t, t);
}

inline adlab::GridFunction sample_exp_sq(const adlab::Grid1D& g) {
    return adlab::GridFunction::sample(g, [](double x) { return std::exp(-x * x); });
}

// Deterministic uniforms for property tests (mt19937_64 is fully specified
// by the standard, and the mapping avoids implementation-defined
// distributions).
struct Rand {
    std::uint64_t s;
    explicit Rand(std::uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    std::uint64_t next_u64() {
        // splitmix64
        s += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    std::vector<double> vec(std::size_t n, double lo, double hi) {
        std::vector<double> v(n);
        for (auto& x : v) x = uniform(lo, hi);
        return v;
    }
};

inline double rel_err(double got, double want) {
    const double scale = std::fabs(want) > 0 ? std::fabs(want) : 1.0;
    return std::fabs(got - want) / scale;
}

inline double linf_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

}  // namespace testsup
