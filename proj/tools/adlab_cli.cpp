#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "adlab/config.hpp"
#include "adlab/errors.hpp"
#include "adlab/fit.hpp"
#include "adlab/ineqlab.hpp"
#include "adlab/kernels.hpp"
#include "adlab/runner.hpp"
#include "adlab/series.hpp"

using namespace adlab;

int main(int argc, char** argv) {
    CLI::App app{"adlab: 1-D advection-diffusion trajectories and inequality checks"};
    app.require_subcommand(1);

    // run
    auto* cmd_run = app.add_subcommand("run", "run one experiment from a JSON config");
    std::string run_config, run_out;
    cmd_run->add_option("--config", run_config, "config file path")->required();
    cmd_run->add_option("--out", run_out, "override the output directory");

    // preset
    auto* cmd_preset = app.add_subcommand("preset", "run a named preset scenario");
    std::string preset_name, preset_out;
    cmd_preset->add_option("name", preset_name, "heat|constant_b|fig1|monotone|modulated")
        ->required();
    cmd_preset->add_option("--out", preset_out, "override the output directory");

    // sweep
    auto* cmd_sweep = app.add_subcommand("sweep", "run every *.json config in a directory");
    std::string sweep_dir;
    cmd_sweep->add_option("--config-dir", sweep_dir, "directory of config files")->required();

    // ineqlab
    auto* cmd_ineq = app.add_subcommand("ineqlab", "verify the functional inequalities on a "
                                                   "synthetic corpus");
    std::uint64_t iq_seed = 1;
    int iq_count = 200, iq_cells = 4096;
    double iq_xmin = -30.0, iq_xmax = 30.0, iq_tol = 5e-3;
    std::string iq_out;
    cmd_ineq->add_option("--seed", iq_seed, "corpus seed");
    cmd_ineq->add_option("--count", iq_count, "corpus size");
    cmd_ineq->add_option("--cells", iq_cells, "grid cells");
    cmd_ineq->add_option("--x-min", iq_xmin, "domain lower edge");
    cmd_ineq->add_option("--x-max", iq_xmax, "domain upper edge");
    cmd_ineq->add_option("--tol", iq_tol, "ratio tolerance");
    cmd_ineq->add_option("--out", iq_out, "write ineq_report.json here");

    // fit
    auto* cmd_fit = app.add_subcommand("fit", "log-log decay-rate fit on a series column");
    std::string fit_csv, fit_column = "linf";
    double fit_from = 0.0, fit_to = 0.0;
    cmd_fit->add_option("--csv", fit_csv, "series.csv path")->required();
    cmd_fit->add_option("--column", fit_column, "column name (default linf)");
    cmd_fit->add_option("--from", fit_from, "window start")->required();
    cmd_fit->add_option("--to", fit_to, "window end")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_run) {
            ExperimentConfig cfg = load_config_file(run_config);
            if (!run_out.empty()) cfg.out_dir = run_out;
            std::cout << "kernels: " << kern::backend_name(kern::active_backend()) << "\n";
            RunResult r = run(cfg);
            std::cout << (r.exit_code == exit_ok ? "PASS" : "FAIL") << " -> " << r.out_dir
                      << "\n";
            return r.exit_code;
        }
        if (*cmd_preset) {
            ExperimentConfig cfg = preset(preset_name);
            if (!preset_out.empty()) cfg.out_dir = preset_out;
            std::cout << "kernels: " << kern::backend_name(kern::active_backend()) << "\n";
            RunResult r = run(cfg);
            std::cout << (r.exit_code == exit_ok ? "PASS" : "FAIL") << " -> " << r.out_dir
                      << "\n";
            return r.exit_code;
        }
        if (*cmd_sweep) {
            return sweep(sweep_dir);
        }
        if (*cmd_ineq) {
            CorpusSpec spec;
            spec.seed = iq_seed;
            spec.count = iq_count;
            const Grid1D grid = make_grid(iq_xmin, iq_xmax, iq_cells);
            const CorpusReport rep = verify_corpus(spec, grid, iq_tol);
            std::cout << "corpus: " << rep.count << " members on n=" << iq_cells << "\n"
                      << "max nash_ratio       = " << rep.max_nash << " (member "
                      << rep.argmax_nash << ")\n"
                      << "max sup_interp_ratio = " << rep.max_interp << " (member "
                      << rep.argmax_interp << ")\n"
                      << (rep.pass ? "PASS" : "FAIL") << " (tolerance 1 + " << rep.tol_ineq
                      << ")\n";
            if (!iq_out.empty()) {
                std::filesystem::create_directories(iq_out);
                std::ofstream f(iq_out + "/ineq_report.json", std::ios::binary);
                f << to_json_string(rep);
            }
            return rep.pass ? exit_ok : exit_check_failed;
        }
        if (*cmd_fit) {
            const TimeSeries ts = read_csv(fit_csv);
            const FitResult fr = fit_decay(ts.series_of(fit_column), fit_from, fit_to);
            std::cout << "column=" << fit_column << " window=[" << fit_from << "," << fit_to
                      << "] samples=" << fr.n_samples << "\n"
                      << "decay exponent = " << fr.exponent << "\n"
                      << "r_squared      = " << fr.r_squared << "\n";
            return exit_ok;
        }
    } catch (const StabilityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_stability_failure;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config_error;
    }
    return exit_ok;
}
