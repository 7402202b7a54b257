#include "adlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "adlab/errors.hpp"
#include "adlab/fit.hpp"
#include "json.hpp"

namespace adlab {

namespace {

constexpr double tiny = 1e-300;

void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

std::string tag(const std::string& base, const char* var, double value) {
    std::ostringstream os;
    os << base << "[" << var << "=" << value << "]";
    return os.str();
}

}  // namespace

double Constants::c2_cubed() { return 3.0 * std::sqrt(3.0) / (4.0 * std::numbers::pi); }
double Constants::c2() { return std::cbrt(c2_cubed()); }
double Constants::c_inf() { return std::pow(0.75, 2.0 / 3.0); }

double main_constant(double p) {
    require(p >= 1.0, "main_constant: p must be >= 1");
    return std::pow(3.0 * std::sqrt(3.0) * p / (2.0 * std::numbers::pi), 1.0 / p);
}

double moser_partial_constant(int k, int l, double p) {
    require(k >= 1, "moser_partial_constant: k must be >= 1");
    require(l >= 0 && l <= k - 1, "moser_partial_constant: need 0 <= l <= k-1");
    require(p >= 1.0, "moser_partial_constant: p must be >= 1");
    const double log_pc = std::log(p * Constants::c2_cubed());
    const double ln2 = std::log(2.0);
    double s = 0.0;
    for (int j = l + 1; j <= k; ++j)
        s += std::pow(2.0, -j) * (static_cast<double>(j - 1) * ln2 + log_pc);
    return std::exp(s);
}

namespace {

// Cumulative trapezoidal integral of B^2 at the sample points.
std::vector<double> cumulative_b2(const ScalarSeries& B) {
    std::vector<double> I(B.times.size(), 0.0);
    for (std::size_t k = 1; k < B.times.size(); ++k) {
        const double b0 = B.values[k - 1], b1 = B.values[k];
        I[k] = I[k - 1] + 0.5 * (b0 * b0 + b1 * b1) * (B.times[k] - B.times[k - 1]);
    }
    return I;
}

}  // namespace

double gronwall_bound(double q, double u0_q_norm, const ScalarSeries& B_series, double t) {
    require(q >= 1.0, "gronwall_bound: q must be >= 1");
    require(!B_series.times.empty(), "gronwall_bound: empty B series");
    require(t >= B_series.times.front() && t <= B_series.times.back(),
            "gronwall_bound: t outside the sampled range of B");
    const auto I = cumulative_b2(B_series);
    // integral up to the last sample <= t plus the partial interval,
    // interpolating B linearly.
    std::size_t k = 0;
    while (k + 1 < B_series.times.size() && B_series.times[k + 1] <= t) ++k;
    double integral = I[k];
    if (t > B_series.times[k]) {
        const double t0 = B_series.times[k], t1 = B_series.times[k + 1];
        const double w = (t - t0) / (t1 - t0);
        const double bt = (1.0 - w) * B_series.values[k] + w * B_series.values[k + 1];
        const double b0 = B_series.values[k];
        integral += 0.5 * (b0 * b0 + bt * bt) * (t - t0);
    }
    return u0_q_norm * std::exp(0.5 * (q - 1.0) * integral);
}

double growth_time_bound_lq(double q, double B_t, double u_half_norm) {
    require(q >= 2.0, "growth_time_bound_lq: q must be >= 2");
    require(B_t >= 0.0 && u_half_norm >= 0.0, "growth_time_bound_lq: inputs must be >= 0");
    return std::pow(0.5 * q * Constants::c2_cubed(), 1.0 / q) * std::pow(B_t, 1.0 / q) *
           u_half_norm;
}

double growth_time_bound_sup(double q, double B_t, double u_half_norm) {
    require(q >= 2.0, "growth_time_bound_sup: q must be >= 2");
    require(B_t >= 0.0 && u_half_norm >= 0.0, "growth_time_bound_sup: inputs must be >= 0");
    return std::pow(0.5 * q * Constants::c2() * Constants::c_inf(), 2.0 / q) *
           std::pow(B_t, 2.0 / q) * u_half_norm;
}

double bootstrap_bound(double q, double u_t0_q_norm, double B_sup, double U_half) {
    require(u_t0_q_norm >= 0.0 && B_sup >= 0.0 && U_half >= 0.0,
            "bootstrap_bound: inputs must be >= 0");
    return std::max(u_t0_q_norm, growth_time_bound_lq(q, B_sup, U_half));
}

double supnorm_bound(double p, double u_t0_sup, double B_sup, double U_p) {
    require(p >= 1.0, "supnorm_bound: p must be >= 1");
    require(u_t0_sup >= 0.0 && B_sup >= 0.0 && U_p >= 0.0, "supnorm_bound: inputs must be >= 0");
    return std::pow(2.0 * p, 1.0 / p) * std::max(u_t0_sup, std::pow(B_sup, 1.0 / p) * U_p);
}

double asymptotic_bound(double p, double B_limsup, double U_p_limsup) {
    require(p >= 1.0, "asymptotic_bound: p must be >= 1");
    require(B_limsup >= 0.0 && U_p_limsup >= 0.0, "asymptotic_bound: inputs must be >= 0");
    // convention 0 * inf = inf
    if ((B_limsup == 0.0 && std::isinf(U_p_limsup)) || (std::isinf(B_limsup) && U_p_limsup == 0.0))
        return p_inf;
    return main_constant(p) * std::pow(B_limsup, 1.0 / p) * U_p_limsup;
}

double monotone_decay_bound(double p0, double u0_p0_norm, double t) {
    require(p0 >= 1.0, "monotone_decay_bound: p0 must be >= 1");
    require(t > 0.0, "monotone_decay_bound: t must be positive");
    return std::pow(2.0, -1.0 / p0) * u0_p0_norm * std::pow(t, -1.0 / (2.0 * p0));
}

const CheckRecord* BoundReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

bool CheckConfig::is_enabled(const std::string& name) const {
    for (const auto& e : enabled)
        if (e == name) return true;
    return false;
}

namespace {

struct MarginAcc {
    double worst = 1.0;
    int count = 0;
    void add(double m) {
        worst = count == 0 ? m : std::min(worst, m);
        ++count;
    }
};

double ratio_margin(double bound, double observed) {
    const double denom = bound > 0.0 ? bound : (observed > 0.0 ? observed : 1.0);
    return (bound - observed) / denom;
}

CheckRecord make_record(std::string name, std::string equation, const MarginAcc& acc,
                        double tolerance, std::string note = "") {
    CheckRecord rec;
    rec.name = std::move(name);
    rec.equation = std::move(equation);
    rec.evaluated = acc.count;
    rec.worst_margin = acc.count > 0 ? acc.worst : 1.0;
    rec.tolerance = tolerance;
    rec.pass = acc.count == 0 || acc.worst >= -tolerance;
    rec.note = std::move(note);
    return rec;
}

CheckRecord skipped_record(std::string name, std::string equation, std::string why) {
    CheckRecord rec;
    rec.name = std::move(name);
    rec.equation = std::move(equation);
    rec.evaluated = 0;
    rec.pass = true;
    rec.note = std::move(why);
    return rec;
}

// min over consecutive samples of (v[k] - v[k+1]) / ref: >= -tol means the
// column never increases beyond tolerance.
MarginAcc nonincrease_margins(const std::vector<double>& v, std::size_t from, std::size_t to,
                              double ref) {
    MarginAcc acc;
    const double denom = std::max(ref, tiny);
    for (std::size_t k = from; k + 1 <= to; ++k) acc.add((v[k] - v[k + 1]) / denom);
    return acc;
}

std::vector<std::size_t> lattice_indices(std::size_t K, int m) {
    std::vector<std::size_t> idx;
    const int steps = std::max(1, m);
    for (int j = 0; j <= steps; ++j) {
        const double f = static_cast<double>(j) / steps;
        idx.push_back(static_cast<std::size_t>(std::llround(f * static_cast<double>(K - 1))));
    }
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return idx;
}

std::size_t tail_start_index(const std::vector<double>& times, double window_fraction) {
    const double t_lo = times.back() - window_fraction * (times.back() - times.front());
    std::size_t k0 = times.size() - 1;
    while (k0 > 0 && times[k0 - 1] >= t_lo) --k0;
    return k0;
}

}  // namespace

BoundReport check_report(const TimeSeries& ts, const CheckConfig& cc, const FieldSpec* field,
                         const Trajectory* captured) {
    if (ts.meta.contaminated)
        throw ConfigError(
            "check_report: trajectory is boundary-contaminated (|u| mass reached the outer 5% "
            "of the truncated domain); enlarge [x_min, x_max] and rerun");
    const std::size_t K = ts.n_samples();
    if (K < 2) throw ConfigError("check_report: need at least two samples");

    BoundReport rep;
    rep.window_fraction = cc.window_fraction;
    rep.config_hash = ts.meta.config_hash;
    rep.grid = ts.meta.grid;

    auto push = [&](CheckRecord rec) {
        rep.pass = rep.pass && rec.pass;
        rep.checks.push_back(std::move(rec));
    };

    const int i1 = ts.p_index(1.0);

    // (1.3) discrete L^1 contraction
    if (cc.is_enabled("l1_contraction")) {
        if (i1 < 0) {
            push(skipped_record("l1_contraction", "(1.3)", "p=1 not tracked"));
        } else {
            const auto& l1 = ts.lp[static_cast<std::size_t>(i1)];
            push(make_record("l1_contraction", "(1.3)",
                             nonincrease_margins(l1, 0, K - 1, l1[0]), cc.tol_exact));
        }
    }

    // (2.1) Gronwall envelope for every tracked q > 1
    if (cc.is_enabled("gronwall")) {
        const auto I = cumulative_b2(ScalarSeries{ts.times, ts.B});
        for (std::size_t j = 0; j < ts.p_list.size(); ++j) {
            const double q = ts.p_list[j];
            if (q <= 1.0) continue;  // q = 1 duplicates the contraction check
            const auto& lq = ts.lp[j];
            if (!(lq[0] > 0.0)) {
                push(skipped_record(tag("gronwall", "q", q), "(2.1)", "initial norm is zero"));
                continue;
            }
            const double log_u0 = std::log(lq[0]);
            MarginAcc acc;
            for (std::size_t k = 0; k < K; ++k) {
                const double log_bound = log_u0 + 0.5 * (q - 1.0) * I[k];
                const double m =
                    lq[k] > 0.0 ? 1.0 - std::exp(std::log(lq[k]) - log_bound) : 1.0;
                acc.add(m);
            }
            push(make_record(tag("gronwall", "q", q), "(2.1)", acc, cc.tol_disc));
        }
    }

    // qs usable for the q/2 -> q estimates
    std::vector<std::size_t> q_idx;
    for (std::size_t j = 0; j < ts.p_list.size(); ++j)
        if (ts.p_list[j] >= 2.0 && ts.p_index(0.5 * ts.p_list[j]) >= 0) q_idx.push_back(j);

    // (2.8a,b) ceilings at detected growth intervals
    if (cc.is_enabled("growth_time")) {
        for (std::size_t j : q_idx) {
            const double q = ts.p_list[j];
            const auto& lq = ts.lp[j];
            const auto& lh = ts.lp[static_cast<std::size_t>(ts.p_index(0.5 * q))];
            MarginAcc acc_a, acc_b;
            for (std::size_t k = 0; k + 1 < K; ++k) {
                const double N0 = std::pow(lq[k], q), N1 = std::pow(lq[k + 1], q);
                if (!(N1 - N0 >= cc.deadband * std::max(N0, N1))) continue;
                // interval supremum surrogate for the pointwise statement
                const double B_int = std::max(ts.B[k], ts.B[k + 1]);
                const double uh = std::max(lh[k], lh[k + 1]);
                acc_a.add(ratio_margin(growth_time_bound_lq(q, B_int, uh),
                                       std::max(lq[k], lq[k + 1])));
                acc_b.add(ratio_margin(growth_time_bound_sup(q, B_int, uh),
                                       std::max(ts.linf[k], ts.linf[k + 1])));
            }
            const char* none = acc_a.count == 0 ? "no growth intervals detected" : "";
            push(make_record(tag("growth_time_lq", "q", q), "(2.8a)", acc_a, cc.tol_disc, none));
            push(make_record(tag("growth_time_sup", "q", q), "(2.8b)", acc_b, cc.tol_disc, none));
        }
    }

    // (2.11) and (2.12) over a decimated (t0, t) lattice
    if (cc.is_enabled("bootstrap") || cc.is_enabled("supnorm")) {
        const auto lat = lattice_indices(K, cc.lattice);
        std::vector<MarginAcc> acc_boot(q_idx.size());
        std::vector<MarginAcc> acc_sup(ts.p_list.size());
        std::vector<double> run_lp(ts.p_list.size());
        for (std::size_t a = 0; a < lat.size(); ++a) {
            const std::size_t t0 = lat[a];
            double runB = ts.B[t0], runLinf = ts.linf[t0];
            for (std::size_t j = 0; j < ts.p_list.size(); ++j) run_lp[j] = ts.lp[j][t0];
            std::size_t next = a;
            for (std::size_t k = t0; k < K; ++k) {
                runB = std::max(runB, ts.B[k]);
                runLinf = std::max(runLinf, ts.linf[k]);
                for (std::size_t j = 0; j < ts.p_list.size(); ++j)
                    run_lp[j] = std::max(run_lp[j], ts.lp[j][k]);
                if (next < lat.size() && lat[next] == k) {
                    ++next;
                    for (std::size_t jq = 0; jq < q_idx.size(); ++jq) {
                        const std::size_t j = q_idx[jq];
                        const double q = ts.p_list[j];
                        const double uh =
                            run_lp[static_cast<std::size_t>(ts.p_index(0.5 * q))];
                        acc_boot[jq].add(ratio_margin(
                            bootstrap_bound(q, ts.lp[j][t0], runB, uh), run_lp[j]));
                    }
                    for (std::size_t j = 0; j < ts.p_list.size(); ++j)
                        acc_sup[j].add(ratio_margin(
                            supnorm_bound(ts.p_list[j], ts.linf[t0], runB, run_lp[j]), runLinf));
                }
            }
        }
        if (cc.is_enabled("bootstrap"))
            for (std::size_t jq = 0; jq < q_idx.size(); ++jq)
                push(make_record(tag("bootstrap", "q", ts.p_list[q_idx[jq]]), "(2.11)",
                                 acc_boot[jq], cc.tol_disc));
        if (cc.is_enabled("supnorm"))
            for (std::size_t j = 0; j < ts.p_list.size(); ++j)
                push(make_record(tag("supnorm", "p", ts.p_list[j]), "(2.12)", acc_sup[j],
                                 cc.tol_disc));
    }

    // (1.6)/(1.7) via tail-window surrogates
    if (cc.is_enabled("asymptotic")) {
        const std::size_t k0 = tail_start_index(ts.times, cc.window_fraction);
        double B_est = ts.B[k0], obs = ts.linf[k0];
        for (std::size_t k = k0; k < K; ++k) {
            B_est = std::max(B_est, ts.B[k]);
            obs = std::max(obs, ts.linf[k]);
        }
        std::ostringstream note;
        note << "finite-horizon surrogate, window_fraction=" << cc.window_fraction;
        if (B_est <= 1e-12) {
            // The limiting ceiling is 0 * U_p = 0, which no finite-horizon
            // trajectory attains; fall back to requiring monotone supnorm
            // decay over the tail window.
            MarginAcc acc = nonincrease_margins(ts.linf, k0, K - 1, ts.linf[k0]);
            note << "; B~0 over the tail, checked supnorm non-increase instead";
            push(make_record("asymptotic", "(1.6)", acc, cc.tol_exact, note.str()));
        } else {
            MarginAcc acc;
            for (std::size_t j = 0; j < ts.p_list.size(); ++j) {
                double U_est = ts.lp[j][k0];
                for (std::size_t k = k0; k < K; ++k) U_est = std::max(U_est, ts.lp[j][k]);
                acc.add(ratio_margin(asymptotic_bound(ts.p_list[j], B_est, U_est), obs));
            }
            push(make_record("asymptotic", "(1.6)", acc, cc.tol_disc, note.str()));
        }
    }

    // (1.2) monotone advection: non-increasing norms, decay rate, envelope
    if (cc.is_enabled("monotone_decay")) {
        if (field == nullptr) {
            push(skipped_record("monotone_decay", "(1.2)", "field spec unavailable"));
        } else if (!field->monotone()) {
            push(skipped_record("monotone_decay", "(1.2)",
                                "field is not monotone (b_x >= 0 fails); not applicable"));
        } else {
            MarginAcc acc;
            for (std::size_t j = 0; j < ts.p_list.size(); ++j) {
                const auto m = nonincrease_margins(ts.lp[j], 0, K - 1, ts.lp[j][0]);
                if (m.count) acc.add(m.worst);
            }
            {
                const auto m = nonincrease_margins(ts.linf, 0, K - 1, ts.linf[0]);
                if (m.count) acc.add(m.worst);
            }
            push(make_record("monotone_nonincreasing", "(1.2)", acc, cc.tol_exact,
                             "all tracked norms non-increasing"));

            const double lo = cc.fit_from >= 0.0 ? cc.fit_from : 0.5 * ts.times.back();
            const double hi = cc.fit_to >= 0.0 ? cc.fit_to : ts.times.back();
            const int ip0 = ts.p_index(cc.p0);
            if (ip0 < 0) {
                push(skipped_record("monotone_decay_rate", "(1.2)", "p0 not tracked"));
            } else {
                const double target = 1.0 / (2.0 * cc.p0) - 0.05;
                CheckRecord rec;
                rec.name = "monotone_decay_rate";
                rec.equation = "(1.2)";
                try {
                    const FitResult fr = fit_decay(ScalarSeries{ts.times, ts.linf}, lo, hi);
                    rec.evaluated = fr.n_samples;
                    rec.worst_margin = std::min(fr.exponent - target, fr.r_squared - 0.98);
                    rec.tolerance = 0.0;
                    rec.pass = rec.worst_margin >= 0.0;
                    std::ostringstream os;
                    os << "exponent=" << fr.exponent << " (target >= " << target
                       << "), r2=" << fr.r_squared << " (>= 0.98), window=[" << lo << "," << hi
                       << "]";
                    rec.note = os.str();
                } catch (const ConfigError& e) {
                    rec.pass = false;
                    rec.note = e.what();
                }
                push(std::move(rec));

                MarginAcc env;
                const double u0p0 = ts.lp[static_cast<std::size_t>(ip0)][0];
                for (std::size_t k = 0; k < K; ++k) {
                    if (ts.times[k] < lo || ts.times[k] > hi || !(ts.times[k] > 0.0)) continue;
                    env.add(ratio_margin(monotone_decay_bound(cc.p0, u0p0, ts.times[k]),
                                         ts.linf[k]));
                }
                push(make_record("monotone_decay_envelope", "(1.2)", env, cc.tol_decay,
                                 "relaxed constant 2^(-1/p0)"));
            }
        }
    }

    // (2.6) energy balance residual on captured snapshots
    if (cc.is_enabled("energy")) {
        if (!captured || !field || captured->times.size() < 2) {
            push(skipped_record("energy", "(2.6)", "no captured trajectory"));
        } else {
            const ScalarSeries res = energy_residual(*captured, cc.energy_q, *field);
            MarginAcc acc;
            for (double r : res.values) acc.add(-std::fabs(r));
            std::ostringstream os;
            os << "max normalized residual of the L^q balance, q=" << cc.energy_q;
            push(make_record("energy", "(2.6)", acc, cc.energy_tol, os.str()));
        }
    }

    return rep;
}

std::string to_json_string(const BoundReport& report) {
    nlohmann::json j;
    j["pass"] = report.pass;
    j["window_fraction"] = report.window_fraction;
    j["config_hash"] = report.config_hash;
    j["grid"] = report.grid;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : report.checks) {
        nlohmann::json jc;
        jc["name"] = c.name;
        jc["equation"] = c.equation;
        jc["evaluated"] = c.evaluated;
        jc["worst_margin"] = c.worst_margin;
        jc["tolerance"] = c.tolerance;
        jc["pass"] = c.pass;
        jc["note"] = c.note;
        j["checks"].push_back(std::move(jc));
    }
    return j.dump(2) + "\n";
}

}  // namespace adlab
