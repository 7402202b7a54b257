#pragma once

#include <string>
#include <vector>

#include "adlab/advect.hpp"
#include "adlab/series.hpp"
#include "adlab/solver.hpp"

namespace adlab {

// Sharp constants of the two functional inequalities the estimates rest on:
// the 1-D Nash constant C2 = (3*sqrt(3)/(4*pi))^(1/3) (optimal) and the sup
// interpolation constant C_inf = (3/4)^(2/3).
struct Constants {
    static double c2_cubed();
    static double c2();
    static double c_inf();
};

// K(p) = (3*sqrt(3)*p / (2*pi))^(1/p): prefactor of the asymptotic supnorm
// bound; equals the closed form of the infinite iteration product.
double main_constant(double p);

// Truncated iteration product prod_{j=l+1}^{k} (2^(j-1) p C2^3)^(2^-j),
// evaluated in log space. 0 <= l <= k-1.
double moser_partial_constant(int k, int l, double p);

// ||u0||_q * exp((q-1)/2 * int_0^t B(tau)^2 dtau), trapezoidal in the B
// samples. q >= 1, t inside the sampled range.
double gronwall_bound(double q, double u0_q_norm, const ScalarSeries& B_series, double t);

// Ceiling on ||u||_q at instants where d/dt ||u||_q^q >= 0:
// ((q/2) C2^3)^(1/q) * B^(1/q) * ||u||_{q/2}.
double growth_time_bound_lq(double q, double B_t, double u_half_norm);

// Companion sup-norm ceiling ((q/2) C2 C_inf)^(2/q) * B^(2/q) * ||u||_{q/2}.
double growth_time_bound_sup(double q, double B_t, double u_half_norm);

// Running-sup bound: max{ ||u(t0)||_q, ((q/2) C2^3)^(1/q) B_sup^(1/q) U_half }.
double bootstrap_bound(double q, double u_t0_q_norm, double B_sup, double U_half);

// Uniform bound (2p)^(1/p) * max{ ||u(t0)||_inf, B_sup^(1/p) U_p }.
double supnorm_bound(double p, double u_t0_sup, double B_sup, double U_p);

// Asymptotic bound K(p) * B_limsup^(1/p) * U_p_limsup, with the convention
// 0 * inf = inf.
double asymptotic_bound(double p, double B_limsup, double U_p_limsup);

// Relaxed decay envelope 2^(-1/p0) * ||u0||_{p0} * t^(-1/(2 p0)) valid for
// monotone advection (b_x >= 0).
double monotone_decay_bound(double p0, double u0_p0_norm, double t);

struct CheckRecord {
    std::string name;
    std::string equation;     // catalog tag of the estimate, e.g. "(2.1)"
    int evaluated = 0;        // number of (samples or pairs) tested
    double worst_margin = 1.0;  // min over evaluations of (bound-observed)/bound
    double tolerance = 0.0;   // pass iff worst_margin >= -tolerance
    bool pass = true;
    std::string note;
};

struct BoundReport {
    std::vector<CheckRecord> checks;
    bool pass = true;
    double window_fraction = 0.25;
    std::string config_hash;
    std::string grid;

    const CheckRecord* find(const std::string& name) const;
};

struct CheckConfig {
    std::vector<std::string> enabled{"l1_contraction", "gronwall",   "growth_time", "bootstrap",
                                     "supnorm",        "asymptotic", "monotone_decay"};
    double tol_disc = 2e-2;    // trajectory checks (discretization slack)
    double tol_exact = 1e-10;  // structural identities
    double tol_decay = 5e-2;   // monotone decay envelope
    double window_fraction = 0.25;
    double deadband = 1e-9;    // relative deadband for growth detection
    int lattice = 32;          // decimation of (t0, t) pairs
    double p0 = 1.0;
    double fit_from = -1.0;    // <0: defaults to the last half of the run
    double fit_to = -1.0;
    double energy_q = 2.0;
    double energy_tol = 5e-2;

    bool is_enabled(const std::string& name) const;
};

// Confronts a computed trajectory with the inequality catalog. The field is
// needed for the monotone flag; the captured trajectory only for the optional
// "energy" check. Rejects boundary-contaminated series.
BoundReport check_report(const TimeSeries& ts, const CheckConfig& cc,
                         const FieldSpec* field = nullptr, const Trajectory* captured = nullptr);

std::string to_json_string(const BoundReport& report);

}  // namespace adlab
