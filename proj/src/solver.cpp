#include "adlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "adlab/errors.hpp"
#include "adlab/kernels.hpp"

namespace adlab {

const char* to_string(AdvectionScheme s) {
    return s == AdvectionScheme::upwind ? "upwind" : "central";
}

const char* to_string(DiffusionScheme s) {
    return s == DiffusionScheme::backward_euler ? "backward_euler" : "crank_nicolson";
}

namespace {

constexpr double eps_b = 1e-12;  // guards the CFL quotient when b == 0

void validate_scheme(const SchemeConfig& cfg) {
    if (!(cfg.cfl_safety > 0.0 && cfg.cfl_safety <= 1.0))
        throw ConfigError("scheme: cfl_safety must be in (0, 1]");
    if (!(cfg.max_dt > 0.0)) throw ConfigError("scheme: max_dt must be positive");
}

}  // namespace

double stable_dt(const SolverState& state, const FieldSpec& field, const SchemeConfig& cfg) {
    validate_scheme(cfg);
    const double sup = std::max(field.sup_abs(state.t), eps_b);
    return std::min(cfg.max_dt, cfg.cfl_safety * state.u.grid.h() / sup);
}

namespace detail {

void CyclicTridiag::factor(std::size_t n, double diag, double off) {
    n_ = n;
    diag_ = diag;
    off_ = off;
    gamma_ = -diag;
    cprime_.resize(n);
    rinv_.resize(n);
    z_.resize(n);

    // Open tridiagonal T equals the periodic matrix minus the rank-one
    // corner term u v^T with u = (gamma, 0, .., 0, off), v = (1, 0, .., off/gamma).
    auto d = [&](std::size_t i) {
        if (i == 0) return diag - gamma_;
        if (i == n - 1) return diag - off * off / gamma_;
        return diag;
    };
    double m = d(0);
    rinv_[0] = 1.0 / m;
    cprime_[0] = off * rinv_[0];
    for (std::size_t i = 1; i < n; ++i) {
        m = d(i) - off * cprime_[i - 1];
        rinv_[i] = 1.0 / m;
        cprime_[i] = off * rinv_[i];
    }

    std::vector<double> uvec(n, 0.0);
    uvec[0] = gamma_;
    uvec[n - 1] = off;
    thomas(uvec.data(), z_.data());
    v_last_ = off / gamma_;
    denom_ = 1.0 + z_[0] + v_last_ * z_[n - 1];
}

void CyclicTridiag::thomas(const double* rhs, double* x) const {
    x[0] = rhs[0] * rinv_[0];
    for (std::size_t i = 1; i < n_; ++i) x[i] = (rhs[i] - off_ * x[i - 1]) * rinv_[i];
    for (std::size_t i = n_ - 1; i-- > 0;) x[i] = x[i] - cprime_[i] * x[i + 1];
}

void CyclicTridiag::solve(const double* rhs, double* x) const {
    thomas(rhs, x);
    const double fac = (x[0] + v_last_ * x[n_ - 1]) / denom_;
    for (std::size_t i = 0; i < n_; ++i) x[i] -= fac * z_[i];
}

}  // namespace detail

Stepper::Stepper(const Grid1D& grid, const FieldSpec& field, const SchemeConfig& cfg)
    : grid_(grid), field_(field), cfg_(cfg) {
    validate_scheme(cfg);
    const std::size_t n = static_cast<std::size_t>(grid.n_cells);
    faces_.resize(n);
    flux_.resize(n);
    ustar_.resize(n);
    rhs_.resize(n);
    unew_.resize(n);
    if (field_.time_dependent()) {
        cos_faces_.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            cos_faces_[i] = std::cos(field_.wavenumber * grid_.face(static_cast<int>(i)));
    } else {
        for (std::size_t i = 0; i < n; ++i)
            faces_[i] = field_.eval(grid_.face(static_cast<int>(i)), 0.0);
        faces_time_ = 0.0;
    }
}

void Stepper::update_faces(double t) {
    if (!field_.time_dependent()) return;
    if (t == faces_time_) return;
    const double scale = field_.amplitude * std::sin(field_.omega * t);
    for (std::size_t i = 0; i < faces_.size(); ++i)
        faces_[i] = field_.offset + scale * cos_faces_[i];
    faces_time_ = t;
}

void Stepper::advance(SolverState& state, double dt) {
    if (!(dt > 0.0)) throw ConfigError("step: dt must be positive");
    const std::size_t n = static_cast<std::size_t>(grid_.n_cells);
    const double h = grid_.h();
    const double* u = state.u.data();

    update_faces(state.t);
    if (cfg_.advection == AdvectionScheme::upwind)
        kern::upwind_flux(u, faces_.data(), flux_.data(), n);
    else
        kern::central_flux(u, faces_.data(), flux_.data(), n);
    kern::flux_div_update(u, flux_.data(), dt / h, ustar_.data(), n);

    const double theta = cfg_.diffusion == DiffusionScheme::backward_euler ? 1.0 : 0.5;
    const double r = dt / (h * h);
    const double* rhs = ustar_.data();
    if (theta < 1.0) {
        kern::diffusion_rhs(ustar_.data(), (1.0 - theta) * r, rhs_.data(), n);
        rhs = rhs_.data();
    }
    const double diag = 1.0 + 2.0 * theta * r;
    const double off = -theta * r;
    if (!tri_.matches(n, diag, off)) tri_.factor(n, diag, off);
    tri_.solve(rhs, unew_.data());

    if (!std::isfinite(kern::max_abs(unew_.data(), n))) {
        std::ostringstream os;
        os << "stability failure: non-finite values at t=" << state.t << " after step "
           << state.step_count;
        throw StabilityError(state.t, state.step_count, os.str());
    }
    state.u.values.swap(unew_);
    state.t += dt;
    state.step_count += 1;
}

SolverState step(const SolverState& state, const FieldSpec& field, double dt,
                 const SchemeConfig& cfg) {
    SolverState out = state;
    Stepper stepper(state.u.grid, field, cfg);
    stepper.advance(out, dt);
    return out;
}

namespace {

std::vector<double> sorted_finite_ps(const std::vector<double>& p_list) {
    bool has_one = false, has_inf = false;
    std::vector<double> ps;
    for (double p : p_list) {
        if (std::isinf(p)) {
            has_inf = true;
            continue;
        }
        if (!(p >= 1.0)) throw ConfigError("integrate: every p must be >= 1 or infinity");
        if (p == 1.0) has_one = true;
        ps.push_back(p);
    }
    if (!has_one || !has_inf)
        throw ConfigError("integrate: p_list must contain 1 and infinity at minimum");
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    return ps;
}

}  // namespace

TimeSeries integrate(const Grid1D& grid, const FieldSpec& field, const ProfileSpec& profile,
                     const SchemeConfig& cfg, const IntegrateOptions& opts) {
    if (!(opts.t_end > 0.0)) throw ConfigError("integrate: t_end must be positive");
    if (!(opts.sample_dt > 0.0)) throw ConfigError("integrate: sample_dt must be positive");
    const std::vector<double> ps = sorted_finite_ps(opts.p_list);

    TimeSeries ts;
    ts.p_list = ps;
    ts.lp.assign(ps.size(), {});
    {
        std::ostringstream os;
        os << to_string(cfg.advection) << "+" << to_string(cfg.diffusion);
        ts.meta.scheme = os.str();
    }
    ts.meta.grid = fmt17(grid.x_min) + "," + fmt17(grid.x_max) + "," + std::to_string(grid.n_cells);

    std::vector<double> sample_times;
    const long K = static_cast<long>(std::floor(opts.t_end / opts.sample_dt + 1e-9));
    for (long k = 0; k <= K; ++k) sample_times.push_back(static_cast<double>(k) * opts.sample_dt);
    if (sample_times.back() < opts.t_end * (1.0 - 1e-12)) sample_times.push_back(opts.t_end);

    SolverState s;
    s.u = initial_profile(profile, grid);
    Stepper stepper(grid, field, cfg);

    const std::size_t n = static_cast<std::size_t>(grid.n_cells);
    const int nz = std::max(1, static_cast<int>(std::llround(0.05 * grid.n_cells)));

    if (opts.capture) {
        opts.capture->grid = grid;
        opts.capture->times.clear();
        opts.capture->states.clear();
    }

    auto record = [&](const SolverState& st) {
        ts.times.push_back(st.t);
        for (std::size_t j = 0; j < ps.size(); ++j) ts.lp[j].push_back(lp_norm(st.u, ps[j]));
        ts.linf.push_back(lp_norm(st.u, p_inf));
        ts.mass.push_back(mass(st.u));
        ts.B.push_back(oscillation(field, grid, st.t));
        ts.beta.push_back(midrange(field, grid, st.t));
        const double total = kern::sum_abs(st.u.data(), n);
        const double outer = kern::sum_abs(st.u.data(), static_cast<std::size_t>(nz)) +
                             kern::sum_abs(st.u.data() + n - static_cast<std::size_t>(nz),
                                           static_cast<std::size_t>(nz));
        ts.boundary_frac.push_back(total > 0.0 ? outer / total : 0.0);
        if (opts.capture) {
            opts.capture->times.push_back(st.t);
            opts.capture->states.push_back(st.u.values);
        }
    };

    record(s);
    for (std::size_t k = 1; k < sample_times.size(); ++k) {
        const double target = sample_times[k];
        const double eps_t = 1e-12 * std::max(1.0, target);
        while (target - s.t > eps_t) {
            const double dt = std::min(stable_dt(s, field, cfg), target - s.t);
            stepper.advance(s, dt);
        }
        s.t = target;
        record(s);
    }

    for (double f : ts.boundary_frac)
        if (f > 1e-8) ts.meta.contaminated = true;
    return ts;
}

TimeSeries integrate(const Grid1D& grid, const FieldSpec& field, const ProfileSpec& profile,
                     const SchemeConfig& cfg, double t_end, double sample_dt,
                     const std::vector<double>& p_list) {
    IntegrateOptions opts;
    opts.t_end = t_end;
    opts.sample_dt = sample_dt;
    opts.p_list = p_list;
    return integrate(grid, field, profile, cfg, opts);
}

ScalarSeries energy_residual(const Trajectory& traj, double q, const FieldSpec& field) {
    if (!(q >= 2.0)) throw ConfigError("energy_residual: q must be >= 2");
    if (traj.times.size() < 2)
        throw ConfigError("energy_residual: need at least two stored snapshots");

    const Grid1D& grid = traj.grid;
    const std::size_t n = static_cast<std::size_t>(grid.n_cells);
    const double h = grid.h();
    const double qq = q * (q - 1.0);

    const std::size_t m = traj.times.size();
    std::vector<double> N(m), D(m), A(m);
    std::vector<double> ux(n);
    for (std::size_t k = 0; k < m; ++k) {
        const double* u = traj.states[k].data();
        kern::central_diff(u, 1.0 / (2.0 * h), ux.data(), n);
        const GridFunction b = sample_field(field, grid, traj.times[k]);
        const double bet = midrange(field, grid, traj.times[k]);
        if (q == 2.0) {
            N[k] = h * kern::sum_sq(u, n);
            D[k] = qq * h * kern::sum_sq(ux.data(), n);
            double a = 0.0;
            for (std::size_t i = 0; i < n; ++i) a += (b[static_cast<int>(i)] - bet) * u[i] * ux[i];
            A[k] = qq * h * a;
        } else {
            double nn = 0.0, dd = 0.0, aa = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double au = std::fabs(u[i]);
                const double w = std::pow(au, q - 2.0);
                nn += std::pow(au, q);
                dd += w * ux[i] * ux[i];
                aa += (b[static_cast<int>(i)] - bet) * w * u[i] * ux[i];
            }
            N[k] = h * nn;
            D[k] = qq * h * dd;
            A[k] = qq * h * aa;
        }
    }

    ScalarSeries out;
    for (std::size_t k = 0; k + 1 < m; ++k) {
        const double dt = traj.times[k + 1] - traj.times[k];
        const double dN = (N[k + 1] - N[k]) / dt;
        const double Dbar = 0.5 * (D[k] + D[k + 1]);
        const double Abar = 0.5 * (A[k] + A[k + 1]);
        const double denom = std::max({std::fabs(dN), std::fabs(Dbar), std::fabs(Abar)});
        out.times.push_back(0.5 * (traj.times[k] + traj.times[k + 1]));
        out.values.push_back(denom > 0.0 ? (dN + Dbar - Abar) / denom : 0.0);
    }
    return out;
}

}  // namespace adlab
