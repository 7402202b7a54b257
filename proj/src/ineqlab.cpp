#include "adlab/ineqlab.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "adlab/bounds.hpp"
#include "adlab/errors.hpp"
#include "json.hpp"

namespace adlab {

const char* to_string(CorpusFamily f) {
    switch (f) {
        case CorpusFamily::gaussian: return "gaussian";
        case CorpusFamily::smoothed_box: return "smoothed_box";
        case CorpusFamily::trig_packet: return "trig_packet";
        case CorpusFamily::random_bump_sum: return "random_bump_sum";
    }
    return "?";
}

namespace {

// mt19937_64 is fully specified by the standard; the [0,1) mapping is done by
// hand so corpora are bit-identical across platforms.
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    double uniform() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(eng() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

}  // namespace

std::vector<GridFunction> generate_corpus(const CorpusSpec& spec, const Grid1D& grid) {
    if (spec.count < 1) throw ConfigError("generate_corpus: count must be >= 1");
    if (spec.families.empty()) throw ConfigError("generate_corpus: empty family list");
    if (!(spec.width_min > 0.0)) throw ConfigError("generate_corpus: widths must be positive");

    Rng rng(spec.seed);
    std::vector<GridFunction> out;
    out.reserve(static_cast<std::size_t>(spec.count));

    for (int m = 0; m < spec.count; ++m) {
        const CorpusFamily fam =
            spec.families[static_cast<std::size_t>(m) % spec.families.size()];
        GridFunction f(grid);
        switch (fam) {
            case CorpusFamily::gaussian: {
                const double c = rng.uniform(spec.center_min, spec.center_max);
                const double w = rng.uniform(spec.width_min, spec.width_max);
                const double a = rng.uniform(spec.amp_min, spec.amp_max);
                for (int i = 0; i < grid.n_cells; ++i) {
                    const double z = (grid.center(i) - c) / w;
                    f[i] = a * std::exp(-0.5 * z * z);
                }
                break;
            }
            case CorpusFamily::smoothed_box: {
                const double c = rng.uniform(spec.center_min, spec.center_max);
                const double half = 0.5 * rng.uniform(2.0 * spec.width_min, 2.0 * spec.width_max);
                const double s = rng.uniform(0.25, 0.8);  // edge smoothing scale
                const double a = rng.uniform(spec.amp_min, spec.amp_max);
                for (int i = 0; i < grid.n_cells; ++i) {
                    const double x = grid.center(i) - c;
                    f[i] = 0.5 * a * (std::tanh((x + half) / s) - std::tanh((x - half) / s));
                }
                break;
            }
            case CorpusFamily::trig_packet: {
                const double c = rng.uniform(spec.center_min, spec.center_max);
                const double w = rng.uniform(spec.width_min, spec.width_max);
                const double a = rng.uniform(spec.amp_min, spec.amp_max);
                const double k =
                    rng.uniform(spec.packet_wavenumber_min, spec.packet_wavenumber_max);
                const double phase = rng.uniform(0.0, 2.0 * 3.141592653589793);
                for (int i = 0; i < grid.n_cells; ++i) {
                    const double x = grid.center(i) - c;
                    const double z = x / w;
                    f[i] = a * std::exp(-0.5 * z * z) * std::cos(k * x + phase);
                }
                break;
            }
            case CorpusFamily::random_bump_sum: {
                const int nb = rng.uniform_int(spec.bumps_min, spec.bumps_max);
                for (int b = 0; b < nb; ++b) {
                    const double c = rng.uniform(spec.center_min, spec.center_max);
                    const double w = rng.uniform(spec.width_min, spec.width_max);
                    const double a = rng.uniform(spec.amp_min, spec.amp_max);
                    for (int i = 0; i < grid.n_cells; ++i) {
                        const double z = (grid.center(i) - c) / w;
                        f[i] += a * std::exp(-0.5 * z * z);
                    }
                }
                break;
            }
        }

        const double peak = lp_norm(f, p_inf);
        if (!(peak > 0.0)) throw ConfigError("generate_corpus: produced a zero function");
        if (std::fabs(f[0]) > 1e-14 * peak || std::fabs(f[grid.n_cells - 1]) > 1e-14 * peak) {
            std::ostringstream os;
            os << "generate_corpus: member " << m << " (" << to_string(fam)
               << ") touches the domain boundary; enlarge the grid";
            throw ConfigError(os.str());
        }
        out.push_back(std::move(f));
    }
    return out;
}

double nash_ratio(const GridFunction& f) {
    const double l1 = lp_norm(f, 1.0);
    if (!(l1 > 0.0)) throw ConfigError("nash_ratio: zero function");
    const double l2 = lp_norm(f, 2.0);
    const double dx2 = lp_norm(derivative(f), 2.0);
    return l2 / (Constants::c2() * std::pow(l1, 2.0 / 3.0) * std::pow(dx2, 1.0 / 3.0));
}

double sup_interp_ratio(const GridFunction& f) {
    const double l1 = lp_norm(f, 1.0);
    if (!(l1 > 0.0)) throw ConfigError("sup_interp_ratio: zero function");
    const double linf = lp_norm(f, p_inf);
    const double dx2 = lp_norm(derivative(f), 2.0);
    return linf / (Constants::c_inf() * std::pow(l1, 1.0 / 3.0) * std::pow(dx2, 2.0 / 3.0));
}

CorpusReport verify_corpus(const CorpusSpec& spec, const Grid1D& grid, double tol_ineq) {
    const auto corpus = generate_corpus(spec, grid);
    CorpusReport rep;
    rep.count = static_cast<int>(corpus.size());
    rep.tol_ineq = tol_ineq;
    rep.nash_histogram.assign(21, 0);
    rep.interp_histogram.assign(21, 0);
    auto bin = [](double r) {
        int b = static_cast<int>(std::floor(r / 1.05 * 21.0));
        return std::min(std::max(b, 0), 20);
    };
    for (std::size_t m = 0; m < corpus.size(); ++m) {
        const double rn = nash_ratio(corpus[m]);
        const double ri = sup_interp_ratio(corpus[m]);
        if (rn > rep.max_nash) {
            rep.max_nash = rn;
            rep.argmax_nash = static_cast<int>(m);
        }
        if (ri > rep.max_interp) {
            rep.max_interp = ri;
            rep.argmax_interp = static_cast<int>(m);
        }
        ++rep.nash_histogram[static_cast<std::size_t>(bin(rn))];
        ++rep.interp_histogram[static_cast<std::size_t>(bin(ri))];
    }
    rep.pass = rep.max_nash <= 1.0 + tol_ineq && rep.max_interp <= 1.0 + tol_ineq;
    return rep;
}

std::string to_json_string(const CorpusReport& report) {
    nlohmann::json j;
    j["count"] = report.count;
    j["max_nash"] = report.max_nash;
    j["max_interp"] = report.max_interp;
    j["argmax_nash"] = report.argmax_nash;
    j["argmax_interp"] = report.argmax_interp;
    j["tol_ineq"] = report.tol_ineq;
    j["pass"] = report.pass;
    j["nash_histogram"] = report.nash_histogram;
    j["interp_histogram"] = report.interp_histogram;
    return j.dump(2) + "\n";
}

}  // namespace adlab
