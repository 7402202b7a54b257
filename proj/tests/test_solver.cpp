#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <numbers>

#include "adlab/errors.hpp"
#include "adlab/solver.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace adlab;
using std::numbers::pi;

namespace {

ProfileSpec exp_sq_profile() {
    // width 1/sqrt(2) gives exp(-x^2)
    ProfileSpec p;
    p.kind = ProfileKind::gaussian;
    p.centers = {0.0};
    p.widths = {1.0 / std::sqrt(2.0)};
    p.amplitudes = {1.0};
    return p;
}

FieldSpec constant_field(double c) {
    FieldSpec f;
    f.kind = FieldKind::constant;
    f.offset = c;
    return f;
}

FieldSpec fig1_field() {
    FieldSpec f;
    f.kind = FieldKind::cosine;
    f.amplitude = 5.0;
    f.wavenumber = 1.0;
    return f;
}

SolverState make_state(const Grid1D& g, const ProfileSpec& p) {
    SolverState s;
    s.u = initial_profile(p, g);
    return s;
}

// narrow gaussian parked mid-domain, for tests that only need a valid state
SolverState make_centered_state(const Grid1D& g) {
    ProfileSpec p;
    p.kind = ProfileKind::gaussian;
    p.centers = {0.5 * (g.x_min + g.x_max)};
    p.widths = {g.length() / 24.0};
    p.amplitudes = {1.0};
    return make_state(g, p);
}

// final snapshot of an integration, via the capture hook
std::vector<double> final_state(const Grid1D& g, const FieldSpec& f, const ProfileSpec& p,
                                const SchemeConfig& cfg, double t_end) {
    Trajectory traj;
    IntegrateOptions opts;
    opts.t_end = t_end;
    opts.sample_dt = t_end;
    opts.p_list = {1.0, p_inf};
    opts.capture = &traj;
    integrate(g, f, p, cfg, opts);
    return traj.states.back();
}

}  // namespace

TEST_CASE("stable_dt follows the CFL formula") {
    SchemeConfig cfg;
    cfg.cfl_safety = 0.5;
    cfg.max_dt = 0.01;
    const Grid1D g = make_grid(0.0, 6.4, 128);  // h = 0.05
    SolverState s = make_centered_state(g);

    FieldSpec zero;
    CHECK(stable_dt(s, zero, cfg) == 0.01);  // advection-free cap

    cfg.max_dt = 1.0;
    CHECK(stable_dt(s, fig1_field(), cfg) == doctest::Approx(0.005).epsilon(1e-15));

    cfg.cfl_safety = 1.0;
    const Grid1D g2 = make_grid(0.0, 12.8, 128);  // h = 0.1
    SolverState s2 = make_centered_state(g2);
    CHECK(stable_dt(s2, constant_field(2.0), cfg) == doctest::Approx(0.05).epsilon(1e-15));

    cfg.cfl_safety = 0.0;
    CHECK_THROWS_AS(stable_dt(s, zero, cfg), ConfigError);
}

TEST_CASE("cyclic tridiagonal solve against a dense residual check") {
    const std::size_t n = 64;
    const double r = 3.7;                 // strong implicit coupling
    const double diag = 1.0 + 2.0 * r, off = -r;
    detail::CyclicTridiag tri;
    tri.factor(n, diag, off);
    testsup::Rand rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> rhs = rng.vec(n, -2.0, 2.0);
        std::vector<double> x(n);
        tri.solve(rhs.data(), x.data());
        for (std::size_t i = 0; i < n; ++i) {
            const double ax =
                diag * x[i] + off * x[(i + 1) % n] + off * x[(i + n - 1) % n];
            CHECK(std::fabs(ax - rhs[i]) <= 1e-12 * (std::fabs(rhs[i]) + 1.0));
        }
    }
    // nonnegative rhs -> nonnegative solution, also in floating point
    std::vector<double> rhs(n, 0.0);
    rhs[3] = 1e-280;
    rhs[40] = 2.5;
    std::vector<double> x(n);
    tri.solve(rhs.data(), x.data());
    for (double v : x) CHECK(v >= 0.0);
}

TEST_CASE("heat flow of a gaussian matches the analytic solution") {
    const Grid1D g = make_grid(-40.0, 40.0, 4096);
    SchemeConfig cfg;
    cfg.max_dt = 0.01;
    cfg.diffusion = DiffusionScheme::crank_nicolson;
    FieldSpec zero;
    const auto u = final_state(g, zero, exp_sq_profile(), cfg, 1.0);
    double err = 0.0;
    for (int i = 0; i < g.n_cells; ++i)
        err = std::max(err, std::fabs(u[static_cast<std::size_t>(i)] -
                                      testsup::heat_of_exp_sq(g.center(i), 1.0)));
    CHECK(err <= 1e-3);
}

TEST_CASE("constant advection translates the heat solution") {
    const Grid1D g = make_grid(-40.0, 40.0, 4096);
    const FieldSpec b = constant_field(2.0);

    SchemeConfig accurate;
    accurate.advection = AdvectionScheme::central;
    accurate.diffusion = DiffusionScheme::crank_nicolson;
    accurate.max_dt = 0.01;
    const auto u = final_state(g, b, exp_sq_profile(), accurate, 1.0);
    double err = 0.0;
    for (int i = 0; i < g.n_cells; ++i)
        err = std::max(err, std::fabs(u[static_cast<std::size_t>(i)] -
                                      testsup::heat_of_exp_sq_translated(g.center(i), 1.0, 2.0)));
    CHECK(err <= 5e-3);

    SchemeConfig monotone;  // first order: looser agreement
    monotone.advection = AdvectionScheme::upwind;
    monotone.diffusion = DiffusionScheme::backward_euler;
    monotone.max_dt = 0.01;
    const auto v = final_state(g, b, exp_sq_profile(), monotone, 1.0);
    double err_up = 0.0;
    for (int i = 0; i < g.n_cells; ++i)
        err_up = std::max(err_up,
                          std::fabs(v[static_cast<std::size_t>(i)] -
                                    testsup::heat_of_exp_sq_translated(g.center(i), 1.0, 2.0)));
    CHECK(err_up <= 5e-2);
}

TEST_CASE("each step conserves mass to 1e-12 relative") {
    const Grid1D g = make_grid(-8.0 * pi, 8.0 * pi, 1024);
    ProfileSpec bumps;
    bumps.kind = ProfileKind::bimodal_signed;
    bumps.centers = {-6.0, 4.0};
    bumps.widths = {1.2, 0.8};
    bumps.amplitudes = {1.0, -0.6};

    for (FieldKind kind : {FieldKind::zero, FieldKind::constant, FieldKind::cosine,
                           FieldKind::monotone_tanh, FieldKind::modulated_cosine}) {
        FieldSpec f;
        f.kind = kind;
        f.amplitude = 3.0;
        f.wavenumber = 1.0;
        f.offset = kind == FieldKind::constant ? 2.0 : 0.5;
        f.omega = 1.3;
        for (auto adv : {AdvectionScheme::upwind, AdvectionScheme::central}) {
            for (auto dif : {DiffusionScheme::backward_euler, DiffusionScheme::crank_nicolson}) {
                SchemeConfig cfg;
                cfg.advection = adv;
                cfg.diffusion = dif;
                SolverState s = make_state(g, bumps);
                const double m0 = mass(s.u);
                for (int k = 0; k < 25; ++k) {
                    const double dt = stable_dt(s, f, cfg);
                    s = step(s, f, dt, cfg);
                    CHECK(std::fabs(mass(s.u) - m0) <= 1e-12 * std::fabs(m0));
                }
            }
        }
    }
}

TEST_CASE("upwind + backward Euler contracts the L1 norm of signed data") {
    const Grid1D g = make_grid(-8.0 * pi, 8.0 * pi, 2048);
    ProfileSpec bumps;
    bumps.kind = ProfileKind::bimodal_signed;
    bumps.centers = {-5.0, 5.0};
    bumps.widths = {1.0, 1.0};
    bumps.amplitudes = {1.0, -1.0};

    SchemeConfig cfg;  // monotone pairing
    cfg.advection = AdvectionScheme::upwind;
    cfg.diffusion = DiffusionScheme::backward_euler;

    SolverState s = make_state(g, bumps);
    double prev = lp_norm(s.u, 1.0);
    Stepper stepper(g, fig1_field(), cfg);
    for (int k = 0; k < 400; ++k) {
        stepper.advance(s, stable_dt(s, fig1_field(), cfg));
        const double cur = lp_norm(s.u, 1.0);
        CHECK(cur <= prev + 1e-10);
        prev = cur;
    }
}

TEST_CASE("upwind + backward Euler preserves nonnegativity exactly") {
    const Grid1D g = make_grid(-8.0 * pi, 8.0 * pi, 2048);
    ProfileSpec gauss = exp_sq_profile();
    SchemeConfig cfg;
    cfg.advection = AdvectionScheme::upwind;
    cfg.diffusion = DiffusionScheme::backward_euler;

    SolverState s = make_state(g, gauss);
    Stepper stepper(g, fig1_field(), cfg);
    for (int k = 0; k < 400; ++k) {
        stepper.advance(s, stable_dt(s, fig1_field(), cfg));
        double mn = 0.0;
        for (double v : s.u.values) mn = std::min(mn, v);
        CHECK(mn >= 0.0);
    }
}

TEST_CASE("monotone advection keeps every tracked norm non-increasing") {
    const Grid1D g = make_grid(-20.0 * pi, 20.0 * pi, 2048);
    FieldSpec f;
    f.kind = FieldKind::monotone_tanh;
    f.amplitude = 1.0;
    f.wavenumber = 1.0;
    SchemeConfig cfg;
    cfg.advection = AdvectionScheme::upwind;
    cfg.diffusion = DiffusionScheme::backward_euler;
    ProfileSpec p = exp_sq_profile();
    p.normalization = Normalization::unit_l1;
    const TimeSeries ts = integrate(g, f, p, cfg, 10.0, 0.1, {1.0, 2.0, p_inf});
    for (const auto& col : ts.lp)
        for (std::size_t k = 0; k + 1 < col.size(); ++k) CHECK(col[k + 1] <= col[k] + 1e-10);
    for (std::size_t k = 0; k + 1 < ts.linf.size(); ++k)
        CHECK(ts.linf[k + 1] <= ts.linf[k] + 1e-10);
}

TEST_CASE("integrate: heat run keeps L1 constant and supnorm decreasing") {
    const Grid1D g = make_grid(-40.0, 40.0, 2048);
    FieldSpec zero;
    ProfileSpec p = exp_sq_profile();
    p.normalization = Normalization::unit_l1;
    SchemeConfig cfg;
    cfg.max_dt = 0.01;
    const TimeSeries ts = integrate(g, zero, p, cfg, 2.0, 0.05, {1.0, p_inf});
    const auto& l1 = ts.lp[0];
    for (double v : l1) CHECK(std::fabs(v - 1.0) <= 1e-10);
    for (std::size_t k = 0; k + 1 < ts.linf.size(); ++k) CHECK(ts.linf[k + 1] < ts.linf[k]);
    CHECK(!ts.meta.contaminated);
}

TEST_CASE("integrate validates its arguments") {
    const Grid1D g = make_grid(-10.0, 10.0, 64);
    FieldSpec zero;
    SchemeConfig cfg;
    const ProfileSpec p = exp_sq_profile();
    CHECK_THROWS_AS(integrate(g, zero, p, cfg, -1.0, 0.1, {1.0, p_inf}), ConfigError);
    CHECK_THROWS_AS(integrate(g, zero, p, cfg, 1.0, 0.0, {1.0, p_inf}), ConfigError);
    CHECK_THROWS_AS(integrate(g, zero, p, cfg, 1.0, 0.1, {1.0}), ConfigError);      // no inf
    CHECK_THROWS_AS(integrate(g, zero, p, cfg, 1.0, 0.1, {2.0, p_inf}), ConfigError);  // no 1
    CHECK_THROWS_AS(integrate(g, zero, p, cfg, 1.0, 0.1, {0.5, 1.0, p_inf}), ConfigError);
}

TEST_CASE("non-finite values abort with a stability failure") {
    const Grid1D g = make_grid(-10.0, 10.0, 64);
    SolverState s = make_state(g, exp_sq_profile());
    s.t = 1.5;
    s.step_count = 7;
    s.u[10] = std::numeric_limits<double>::quiet_NaN();
    SchemeConfig cfg;
    try {
        step(s, FieldSpec{}, 0.01, cfg);
        FAIL("expected StabilityError");
    } catch (const StabilityError& e) {
        CHECK(e.t == 1.5);
        CHECK(e.step_count == 7);
        CHECK(std::string(e.what()).find("1.5") != std::string::npos);
    }
}

TEST_CASE("central advection with an aggressive dt really goes unstable") {
    // Crank-Nicolson damping is too weak at high wavenumbers to stabilize the
    // central flux once dt is pushed far beyond stable_dt.
    const Grid1D g = make_grid(-4.0 * pi, 4.0 * pi, 512);
    SchemeConfig cfg;
    cfg.advection = AdvectionScheme::central;
    cfg.diffusion = DiffusionScheme::crank_nicolson;
    SolverState s = make_state(g, exp_sq_profile());
    Stepper stepper(g, fig1_field(), cfg);
    const double dt = 50.0 * stable_dt(s, fig1_field(), cfg);
    bool blew_up = false;
    try {
        for (int k = 0; k < 20000; ++k) stepper.advance(s, dt);
    } catch (const StabilityError&) {
        blew_up = true;
    }
    CHECK(blew_up);
}

TEST_CASE("energy residual: zero trajectory and heat flow") {
    const Grid1D g = make_grid(-40.0, 40.0, 4096);

    Trajectory zero_traj;
    zero_traj.grid = g;
    zero_traj.times = {0.0, 0.5, 1.0};
    zero_traj.states.assign(3, std::vector<double>(static_cast<std::size_t>(g.n_cells), 0.0));
    FieldSpec zero;
    const ScalarSeries rz = energy_residual(zero_traj, 2.0, zero);
    for (double v : rz.values) CHECK(v == 0.0);

    Trajectory traj;
    IntegrateOptions opts;
    opts.t_end = 1.0;
    opts.sample_dt = 0.02;
    opts.p_list = {1.0, 2.0, p_inf};
    opts.capture = &traj;
    SchemeConfig cfg;
    cfg.max_dt = 0.005;
    cfg.diffusion = DiffusionScheme::crank_nicolson;
    integrate(g, zero, exp_sq_profile(), cfg, opts);
    const ScalarSeries res = energy_residual(traj, 2.0, zero);
    double worst = 0.0;
    for (double v : res.values) worst = std::max(worst, std::fabs(v));
    CHECK(worst <= 0.02);

    CHECK_THROWS_AS(energy_residual(traj, 1.5, zero), ConfigError);
    Trajectory tiny;
    tiny.grid = g;
    tiny.times = {0.0};
    tiny.states = {traj.states[0]};
    CHECK_THROWS_AS(energy_residual(tiny, 2.0, zero), ConfigError);
}

TEST_CASE("fig1 field: supnorm rises above its initial value, then decays") {
    const Grid1D g = make_grid(-20.0 * pi, 20.0 * pi, 4096);
    ProfileSpec p;
    p.kind = ProfileKind::gaussian;
    p.centers = {0.0};
    p.widths = {1.0};
    p.amplitudes = {1.0};
    p.normalization = Normalization::unit_l1;
    SchemeConfig cfg;
    cfg.advection = AdvectionScheme::upwind;
    cfg.diffusion = DiffusionScheme::backward_euler;
    const TimeSeries ts = integrate(g, fig1_field(), p, cfg, 20.0, 0.05, {1.0, p_inf});

    std::size_t imax = 0;
    for (std::size_t k = 0; k < ts.linf.size(); ++k)
        if (ts.linf[k] > ts.linf[imax]) imax = k;
    CHECK(ts.linf[imax] > 1.5 * ts.linf[0]);             // pronounced growth phase
    CHECK(ts.times[imax] < 0.5 * ts.times.back());       // peak well before the horizon
    CHECK(ts.linf.back() < 0.999 * ts.linf[imax]);       // slow decay afterwards
}
