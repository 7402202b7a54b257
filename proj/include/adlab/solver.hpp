#pragma once

#include <vector>

#include "adlab/advect.hpp"
#include "adlab/grid.hpp"
#include "adlab/profile.hpp"
#include "adlab/series.hpp"

namespace adlab {

enum class AdvectionScheme { upwind, central };
enum class DiffusionScheme { backward_euler, crank_nicolson };

struct SchemeConfig {
    double cfl_safety = 0.5;
    double max_dt = 0.05;
    AdvectionScheme advection = AdvectionScheme::upwind;
    DiffusionScheme diffusion = DiffusionScheme::crank_nicolson;
};

struct SolverState {
    double t = 0.0;
    GridFunction u;
    long step_count = 0;
};

// dt = min(max_dt, cfl_safety * h / max(||b(.,t)||_inf, 1e-12)), using the
// exact per-family sup of the field.
double stable_dt(const SolverState& state, const FieldSpec& field, const SchemeConfig& cfg);

// One IMEX step: explicit flux-form advection (face velocities sampled
// analytically at time state.t), then implicit diffusion via the periodic
// tridiagonal solve. Throws StabilityError if the result is non-finite.
SolverState step(const SolverState& state, const FieldSpec& field, double dt,
                 const SchemeConfig& cfg);

namespace detail {

// Solves the periodic constant-coefficient tridiagonal system
// (diag on the diagonal, off on both off-diagonals and the two corners)
// with two Thomas passes and a rank-one corner correction. For diag > 0,
// off < 0, diag + 2*off = 1 the update maps nonnegative right-hand sides to
// nonnegative solutions, also in floating point.
class CyclicTridiag {
public:
    void factor(std::size_t n, double diag, double off);
    void solve(const double* rhs, double* x) const;
    bool matches(std::size_t n, double diag, double off) const {
        return n == n_ && diag == diag_ && off == off_;
    }

private:
    void thomas(const double* rhs, double* x) const;

    std::size_t n_ = 0;
    double diag_ = 0.0, off_ = 0.0, gamma_ = 0.0, denom_ = 1.0, v_last_ = 0.0;
    std::vector<double> cprime_;  // upper coefficients after forward elimination
    std::vector<double> rinv_;    // reciprocal pivots
    std::vector<double> z_;       // cached corner column solve
};

}  // namespace detail

// Reusable time stepper: owns scratch buffers, caches face velocities for
// autonomous fields and the tridiagonal factorization for repeated dt.
class Stepper {
public:
    Stepper(const Grid1D& grid, const FieldSpec& field, const SchemeConfig& cfg);
    void advance(SolverState& state, double dt);

private:
    void update_faces(double t);

    Grid1D grid_;
    FieldSpec field_;
    SchemeConfig cfg_;
    std::vector<double> faces_;      // b at right faces
    std::vector<double> cos_faces_;  // cos(k x_face), modulated_cosine only
    std::vector<double> flux_, ustar_, rhs_, unew_;
    double faces_time_ = -1.0;
    detail::CyclicTridiag tri_;
};

// Full state snapshots along a trajectory (for the energy diagnostic).
struct Trajectory {
    Grid1D grid;
    std::vector<double> times;
    std::vector<std::vector<double>> states;
};

struct IntegrateOptions {
    double t_end = 1.0;
    double sample_dt = 0.1;
    std::vector<double> p_list{1.0, p_inf};  // must contain 1 and infinity
    Trajectory* capture = nullptr;           // optional snapshot sink
};

// Advances u from t = 0 to t_end with adaptive dt = stable_dt (clipped to
// land exactly on sample times) and records norms, mass, B, beta and the
// boundary-mass fraction at every sample.
TimeSeries integrate(const Grid1D& grid, const FieldSpec& field, const ProfileSpec& profile,
                     const SchemeConfig& cfg, const IntegrateOptions& opts);
TimeSeries integrate(const Grid1D& grid, const FieldSpec& field, const ProfileSpec& profile,
                     const SchemeConfig& cfg, double t_end, double sample_dt,
                     const std::vector<double>& p_list);

// Residual of the L^q energy balance on each sample interval, normalized by
// the largest of the three term magnitudes. q >= 2; needs >= 2 snapshots.
ScalarSeries energy_residual(const Trajectory& traj, double q, const FieldSpec& field);

const char* to_string(AdvectionScheme s);
const char* to_string(DiffusionScheme s);

}  // namespace adlab
