#include "adlab/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "adlab/errors.hpp"
#include "adlab/kernels.hpp"

namespace adlab {

namespace fs = std::filesystem;

namespace {

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open for writing: " + path);
    f << text;
}

void print_report(const BoundReport& rep, std::ostream& os) {
    for (const auto& c : rep.checks) {
        os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " " << c.equation
           << "  worst_margin=" << c.worst_margin << " tol=" << c.tolerance
           << " n=" << c.evaluated;
        if (!c.note.empty()) os << "  (" << c.note << ")";
        os << "\n";
    }
}

}  // namespace

RunResult run(const ExperimentConfig& cfg, bool quiet) {
    RunResult result;
    result.out_dir = cfg.out_dir;
    fs::create_directories(cfg.out_dir);

    Trajectory captured;
    Trajectory* capture = cfg.checks.is_enabled("energy") ? &captured : nullptr;

    IntegrateOptions opts;
    opts.t_end = cfg.t_end;
    opts.sample_dt = cfg.sample_dt;
    opts.p_list = cfg.p_list;
    opts.capture = capture;

    TimeSeries ts = integrate(cfg.grid(), cfg.field, cfg.initial, cfg.scheme, opts);
    ts.meta.config_hash = config_hash(cfg);

    write_text(cfg.out_dir + "/config.json", dump_config(cfg));
    write_csv(cfg.out_dir + "/series.csv", ts);

    if (cfg.emit_svg) {
        write_line_svg(cfg.out_dir + "/linf.svg", "sup norm vs t", ts.times, ts.linf);
        const int i1 = ts.p_index(1.0);
        if (i1 >= 0)
            write_line_svg(cfg.out_dir + "/l1.svg", "L1 norm vs t", ts.times,
                           ts.lp[static_cast<std::size_t>(i1)]);
    }

    result.contaminated = ts.meta.contaminated;
    if (ts.meta.contaminated) {
        BoundReport rep;
        rep.pass = false;
        rep.config_hash = ts.meta.config_hash;
        rep.grid = ts.meta.grid;
        rep.window_fraction = cfg.checks.window_fraction;
        CheckRecord rec;
        rec.name = "boundary_contamination";
        rec.equation = "-";
        rec.pass = false;
        rec.note =
            "|u| mass reached the outer 5% of the truncated domain; enlarge [x_min, x_max]";
        rep.checks.push_back(rec);
        write_text(cfg.out_dir + "/report.json", to_json_string(rep));
        if (!quiet) {
            std::cout << "[FAIL] boundary_contamination  (" << rec.note << ")\n";
        }
        result.report = std::move(rep);
        result.series = std::move(ts);
        result.exit_code = exit_check_failed;
        return result;
    }

    BoundReport rep = check_report(ts, cfg.checks, &cfg.field, capture);
    write_text(cfg.out_dir + "/report.json", to_json_string(rep));
    if (!quiet) print_report(rep, std::cout);

    result.exit_code = rep.pass ? exit_ok : exit_check_failed;
    result.report = std::move(rep);
    result.series = std::move(ts);
    return result;
}

int sweep(const std::string& config_dir) {
    std::vector<fs::path> files;
    if (!fs::is_directory(config_dir))
        throw ConfigError("sweep: not a directory: " + config_dir);
    for (const auto& e : fs::directory_iterator(config_dir))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ConfigError("sweep: no *.json configs in " + config_dir);

    std::mutex io_mutex;
    std::vector<int> codes(files.size(), exit_ok);

    const unsigned workers =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                           static_cast<unsigned>(files.size()));
    std::vector<std::thread> pool;
    std::size_t next = 0;
    std::mutex next_mutex;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            while (true) {
                std::size_t idx;
                {
                    std::lock_guard<std::mutex> lk(next_mutex);
                    if (next >= files.size()) return;
                    idx = next++;
                }
                const fs::path& path = files[idx];
                std::ostringstream log;
                int code = exit_ok;
                try {
                    ExperimentConfig cfg = load_config_file(path.string());
                    cfg.out_dir = cfg.out_dir + "/" + path.stem().string();
                    RunResult r = run(cfg, /*quiet=*/true);
                    code = r.exit_code;
                    log << path.filename().string() << ": "
                        << (code == exit_ok ? "pass" : "FAIL") << " -> " << cfg.out_dir << "\n";
                } catch (const StabilityError& e) {
                    code = exit_stability_failure;
                    log << path.filename().string() << ": stability failure: " << e.what()
                        << "\n";
                } catch (const ConfigError& e) {
                    code = exit_config_error;
                    log << path.filename().string() << ": " << e.what() << "\n";
                }
                codes[idx] = code;
                std::lock_guard<std::mutex> lk(io_mutex);
                std::cout << log.str();
            }
        });
    }
    for (auto& t : pool) t.join();

    int worst = exit_ok;
    for (int c : codes) worst = std::max(worst, c);
    return worst;
}

void write_line_svg(const std::string& path, const std::string& title,
                    const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.empty()) throw ConfigError("svg: empty or mismatched data");
    const double w = 720, h = 420, ml = 70, mr = 20, mt = 30, mb = 45;
    double x0 = x.front(), x1 = x.front(), y0 = y.front(), y1 = y.front();
    for (std::size_t i = 0; i < x.size(); ++i) {
        x0 = std::min(x0, x[i]);
        x1 = std::max(x1, x[i]);
        y0 = std::min(y0, y[i]);
        y1 = std::max(y1, y[i]);
    }
    if (x1 == x0) x1 = x0 + 1.0;
    if (y1 == y0) y1 = y0 + 1.0;
    auto px = [&](double v) { return ml + (v - x0) / (x1 - x0) * (w - ml - mr); };
    auto py = [&](double v) { return h - mb - (v - y0) / (y1 - y0) * (h - mt - mb); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
       << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << w / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title
       << "</text>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\""
       << h - mb << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb
       << "\" stroke=\"black\"/>\n";
    char buf[64];
    for (int k = 0; k <= 4; ++k) {
        const double xv = x0 + (x1 - x0) * k / 4.0;
        const double yv = y0 + (y1 - y0) * k / 4.0;
        std::snprintf(buf, sizeof buf, "%.4g", xv);
        os << "<text x=\"" << px(xv) << "\" y=\"" << h - mb + 18
           << "\" text-anchor=\"middle\" font-size=\"11\">" << buf << "</text>\n";
        std::snprintf(buf, sizeof buf, "%.4g", yv);
        os << "<text x=\"" << ml - 6 << "\" y=\"" << py(yv) + 4
           << "\" text-anchor=\"end\" font-size=\"11\">" << buf << "</text>\n";
    }
    os << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) os << px(x[i]) << "," << py(y[i]) << " ";
    os << "\"/>\n</svg>\n";
    write_text(path, os.str());
}

}  // namespace adlab
