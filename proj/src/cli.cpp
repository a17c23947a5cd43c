#include "ilt/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include "ilt/io.hpp"
#include "ilt/metrics.hpp"
#include "ilt/optics.hpp"
#include "ilt/patterns.hpp"
#include "ilt/regularization.hpp"
#include "ilt/solver.hpp"
#include "ilt/validation.hpp"

namespace ilt::cli {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Flags that mirror config keys are captured as strings and applied through
// the config parser after the config file, so flags win and both paths share
// one validator.
struct ConfigFlags {
    std::string config_file;
    std::vector<std::pair<CLI::Option*, std::string>> keyed;
    std::map<std::string, std::string> values;

    void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
        CLI::Option* opt = app->add_option(flag, values[key], help);
        if (key == "input_path" || key == "output_dir")
            opt->type_name("PATH");
        else if (key == "seed" || key == "kernel_size" || key.ends_with("_iters"))
            opt->type_name("INT");
        else
            opt->type_name("NUM");
        keyed.emplace_back(opt, key);
    }

    io::RunConfig resolve() const {
        io::RunConfig cfg;
        if (!config_file.empty()) io::apply_config_file(cfg, config_file);
        std::map<std::string, std::string> given;
        for (const auto& [opt, key] : keyed)
            if (opt->count() > 0) given[key] = values.at(key);
        io::apply_key_values(cfg, given);
        cfg.validate();
        return cfg;
    }
};

void add_optics_flags(CLI::App* app, ConfigFlags& f) {
    app->add_option("--config", f.config_file, "key=value config file (flags override it)");
    f.add(app, "--wavelength", "wavelength_nm", "wavelength in nm");
    f.add(app, "--na", "numerical_aperture", "numerical aperture");
    f.add(app, "--defocus", "defocus_nm", "defocus D in nm");
    f.add(app, "--pixel", "pixel_size_nm", "pixel size in nm");
    f.add(app, "--kernel", "kernel_size", "PSF side in pixels");
    f.add(app, "--steepness", "sigmoid_steepness", "sigmoid steepness a");
    f.add(app, "--threshold", "threshold", "resist threshold tr");
    f.add(app, "--out", "output_dir", "output directory");
    f.add(app, "--seed", "seed", "random seed");
}

void add_solver_flags(CLI::App* app, ConfigFlags& f, bool with_weights) {
    if (with_weights) {
        f.add(app, "--rho", "rho", "ADMM penalty");
        f.add(app, "--gamma", "gamma", "Bregman penalty");
        f.add(app, "--beta1", "beta1", "TV weight");
        f.add(app, "--beta2", "beta2", "binarity weight");
    }
    f.add(app, "--armijo-alpha", "armijo_alpha", "Armijo sufficient-decrease factor");
    f.add(app, "--armijo-beta", "armijo_beta", "Armijo backtracking factor");
    f.add(app, "--armijo-t0", "armijo_t0", "Armijo initial step");
    f.add(app, "--outer-tol", "outer_tol", "stop when the EPE error drops to this value");
    f.add(app, "--max-iters", "outer_max_iters", "outer ADMM iterations");
    f.add(app, "--bregman-iters", "bregman_max_iters", "Bregman iterations per U-step");
    f.add(app, "--bregman-tol", "bregman_tol", "Bregman stop tolerance (negative: 1e-4 n)");
    f.add(app, "--descent-iters", "descent_max_iters", "descent steps and Armijo reductions per Bregman iteration");
}

struct TargetFlags {
    std::string pattern;
    std::size_t size = 144;
    CLI::Option* target = nullptr;

    void add(CLI::App* app, ConfigFlags& f) {
        f.add(app, "--target", "input_path", "target pattern file (text 0/1 grid or PGM)");
        target = f.keyed.back().first;
        app->add_option("--pattern", pattern, "built-in target: " + join_names());
        app->add_option("--size", size, "side of a built-in target")->check(CLI::PositiveNumber);
    }

    static std::string join_names() {
        std::string s;
        for (const auto& n : patterns::names()) s += (s.empty() ? "" : ", ") + n;
        return s;
    }

    void check() const {
        if (!pattern.empty() && target->count() > 0) throw UsageError("--pattern and --target are mutually exclusive");
    }

    BinaryPattern load(const io::RunConfig& cfg) const {
        check();
        if (!pattern.empty()) return patterns::by_name(pattern, size);
        if (!cfg.input_path.empty()) return io::load_pattern(cfg.input_path);
        return patterns::ten_rectangles(size);
    }
};

fs::path prepare_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw io::IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
    return dir;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw io::IoError("failed writing '" + path.string() + "'");
}

ImagingModel make_model(const OpticsConfig& optics, std::size_t n, double noise, std::uint64_t seed) {
    PsfKernel psf = build_psf(optics);
    if (noise > 0.0) psf = perturb_kernel(psf, noise, seed);
    return ImagingModel(std::move(psf), n);
}

std::size_t count_increases(const std::vector<ConvergenceRecord>& records, double initial) {
    std::size_t n = 0;
    double prev = initial;
    for (const auto& r : records) {
        if (r.lagrangian > prev + 1e-8 * std::abs(prev)) ++n;
        prev = r.lagrangian;
    }
    return n;
}

// ------------------------------------------------------------------ psf

int cmd_psf(const ConfigFlags& flags, std::ostream& out) {
    const io::RunConfig cfg = flags.resolve();
    const PsfKernel psf = build_psf(cfg.optics);
    const fs::path dir = prepare_dir(cfg.output_dir);
    const RealGrid mag = magnitude(psf.samples);
    io::save_grid(real_part(psf.samples), dir / "psf_real.txt", io::SaveMode::Text);
    io::save_grid(imag_part(psf.samples), dir / "psf_imag.txt", io::SaveMode::Text);
    io::save_grid(mag, dir / "psf_magnitude.txt", io::SaveMode::Text);
    io::save_grid(mag, dir / "psf_magnitude.pgm", io::SaveMode::Continuous);
    out << "kernel_size " << psf.size() << '\n'
        << "center " << psf.center() << '\n'
        << "dc_gain " << fmt(psf.dc_gain) << '\n'
        << "peak_magnitude " << fmt(*std::max_element(mag.begin(), mag.end())) << '\n';
    return kExitOk;
}

// ------------------------------------------------------------------ generate

int cmd_generate(const std::string& pattern, std::size_t size, const fs::path& file, std::ostream& out) {
    const BinaryPattern p = patterns::by_name(pattern, size);
    if (file.has_parent_path()) prepare_dir(file.parent_path());
    const bool pgm = file.extension() == ".pgm";
    io::save_grid(p.grid(), file, pgm ? io::SaveMode::Binary : io::SaveMode::Text);
    out << "pattern " << pattern << '\n' << "size " << size << '\n' << "ones " << p.count_ones() << '\n';
    return kExitOk;
}

// ------------------------------------------------------------------ simulate / evaluate

int cmd_simulate(const ConfigFlags& flags, const TargetFlags& tf, const std::string& mask_path, std::ostream& out) {
    const io::RunConfig cfg = flags.resolve();
    tf.check();
    const RealGrid mask = project_box(io::load_mask(mask_path));
    const ImagingModel model(build_psf(cfg.optics), mask.side());
    const RealGrid aerial = aerial_image(model.field(mask));
    const BinaryPattern printed = image_threshold(aerial, cfg.optics.threshold);
    const fs::path dir = prepare_dir(cfg.output_dir);
    io::save_grid(aerial, dir / "aerial.txt", io::SaveMode::Text);
    io::save_grid(aerial, dir / "aerial.pgm", io::SaveMode::Continuous);
    io::save_grid(printed.grid(), dir / "wafer.pgm", io::SaveMode::Binary);
    out << "printed_pixels " << printed.count_ones() << '\n';
    const bool has_target = !tf.pattern.empty() || !cfg.input_path.empty();
    if (has_target) {
        const BinaryPattern target = tf.load(cfg);
        if (target.side() != mask.side()) throw DimensionError("mask and target sizes differ");
        const RealGrid epe = epe_map(printed, target);
        io::save_grid(epe, dir / "epe.pgm", io::SaveMode::Binary);
        out << "epe_error " << fmt(l2_norm(epe)) << '\n';
    }
    return kExitOk;
}

int cmd_evaluate(const ConfigFlags& flags, const TargetFlags& tf, const std::string& mask_path, std::ostream& out) {
    const io::RunConfig cfg = flags.resolve();
    const BinaryPattern target = tf.load(cfg);
    const RealGrid mask = project_box(io::load_mask(mask_path));
    if (target.side() != mask.side()) throw DimensionError("mask and target sizes differ");
    const EvaluationReport rep = evaluate(mask, target, cfg.optics);
    out << "epe_error " << fmt(rep.error) << '\n'
        << "nonzero_epe_pixels " << rep.nonzero_epe_pixels << '\n'
        << "printed_pixels " << rep.printed.count_ones() << '\n'
        << "target_pixels " << target.count_ones() << '\n';
    return kExitOk;
}

// ------------------------------------------------------------------ optimize

int cmd_optimize(const ConfigFlags& flags, const TargetFlags& tf, double noise, const std::string& init_path,
                 bool quiet, std::ostream& out, std::ostream& err) {
    const io::RunConfig cfg = flags.resolve();
    if (!(noise >= 0.0)) throw UsageError("--kernel-noise must be >= 0");
    const BinaryPattern target = tf.load(cfg);
    const std::size_t n = target.side();
    const ImagingModel model = make_model(cfg.optics, n, noise, cfg.seed);

    AdmmOptions opts;
    opts.warn = [&err](std::string_view msg) { err << "warning: " << msg << '\n'; };
    if (!quiet)
        opts.progress = [&err](const ConvergenceRecord& r) {
            err << "iter " << r.iteration << " lagrangian " << r.lagrangian << " epe_error " << r.epe_error
                << " residual " << r.primal_residual << '\n';
        };
    if (!init_path.empty()) {
        RealGrid init = io::load_mask(init_path);
        if (init.side() != n) throw DimensionError("initial mask and target sizes differ");
        opts.initial_mask = std::move(init);
    }

    const AdmmResult res = admm_optimize(target, model, cfg.solver, opts);
    const EvaluationReport rep = evaluate(res.mask, target, model);

    const fs::path dir = prepare_dir(cfg.output_dir);
    io::save_grid(res.mask, dir / "mask.pgm", io::SaveMode::Binary);
    io::save_grid(res.mask, dir / "mask_continuous.pgm", io::SaveMode::Continuous);
    io::save_grid(res.mask, dir / "mask.txt", io::SaveMode::Text);
    io::save_grid(rep.printed.grid(), dir / "wafer.pgm", io::SaveMode::Binary);
    io::save_grid(rep.epe, dir / "epe.pgm", io::SaveMode::Binary);
    io::write_history(res.records, dir / "history.csv");
    write_text(dir / "run_config.txt", io::to_key_values(cfg));

    const TraceReport trace = lagrangian_trace_check(res.records, res.initial_lagrangian);
    out << "baseline_epe_error " << fmt(res.initial_epe_error) << '\n'
        << "final_epe_error " << fmt(rep.error) << '\n'
        << "iterations " << res.records.size() << '\n'
        << "lipschitz " << fmt(res.lipschitz) << '\n'
        << "rho_condition " << (res.rho_condition_holds ? "holds" : "violated") << '\n'
        << "nonincreasing_fraction " << fmt(trace.nonincreasing_fraction) << '\n'
        << "output_dir " << dir.string() << '\n';
    return kExitOk;
}

// ------------------------------------------------------------------ derive

int cmd_derive(std::ostream& out) {
    using validation::bessel_j1;
    const double tr = 0.3;

    out << "lipschitz_a20 " << fmt(estimate_lipschitz(20.0, tr)) << '\n'
        << "lipschitz_a20_coarse " << fmt(estimate_lipschitz(20.0, tr, 100'000)) << '\n'
        << "lipschitz_a10 " << fmt(estimate_lipschitz(10.0, tr)) << '\n';

    double lo = 3.8, hi = 3.9;
    for (double x = 3.8; x < 3.9; x += 1e-3) {
        if (bessel_j1(x) > 0.0 && bessel_j1(x + 1e-3) <= 0.0) {
            lo = x;
            hi = x + 1e-3;
            break;
        }
    }
    out << "j1_zero_bracket " << fmt(lo) << ' ' << fmt(hi) << '\n';
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (bessel_j1(mid) > 0.0 ? lo : hi) = mid;
    }
    out << "j1_first_zero " << fmt(0.5 * (lo + hi)) << '\n';

    const auto oracle_line = [&out](const char* name, double w, double target, double rho) {
        const auto r = validation::v_oracle(Complex{w, 0.0}, target, rho, 0.3);
        const Complex v = v_update_pixel(Complex{w, 0.0}, target, rho, 0.3);
        out << name << " oracle " << fmt(r.argmin.real()) << " cost " << fmt(r.min_value) << " closed_form "
            << fmt(v.real()) << " cost " << fmt(v_pixel_cost(v, Complex{w, 0.0}, target, rho, 0.3)) << '\n';
    };
    oracle_line("v_w5_i0_rho10", 5.0, 0.0, 10.0);
    oracle_line("v_w0.2_i1_rho1", 0.2, 1.0, 1.0);
    oracle_line("v_w0.2_i0_rho1", 0.2, 0.0, 1.0);

    RealGrid dot(5);
    dot(2, 2) = 1.0;
    out << "tv_single_pixel " << fmt(tv_norm(dot)) << '\n';

    OpticsConfig optics;
    const PsfKernel psf = build_psf(optics);
    const std::size_t c = psf.center();
    const double h0 = psf.samples(c, c).real();
    const double scale = 2.0 * std::numbers::pi * optics.numerical_aperture / optics.wavelength_nm;
    double worst = 0.0;
    std::size_t lobe = 0;
    for (std::size_t r = 1; c + r < psf.size(); ++r) {
        const double x = scale * static_cast<double>(r) * optics.pixel_size_nm;
        if (x >= 3.8317) break;
        const double ref = validation::jinc(x) / validation::jinc(0.0);
        const double got = psf.samples(c, c + r).real() / h0;
        worst = std::max(worst, std::abs(got - ref) / std::abs(ref));
        lobe = r;
    }
    out << "psf_dc_gain " << fmt(psf.dc_gain) << '\n'
        << "psf_main_lobe_radius_px " << lobe << '\n'
        << "psf_jinc_ratio_max_rel_error " << fmt(worst) << '\n';

    const BinaryPattern target = patterns::ten_rectangles();
    for (double d : {0.0, 50.0}) {
        OpticsConfig o;
        o.defocus_nm = d;
        const EvaluationReport rep = evaluate(target.grid(), target, o);
        out << "baseline_epe_error_D" << d << ' ' << fmt(rep.error) << " pixels " << rep.nonzero_epe_pixels << '\n';
    }
    return kExitOk;
}

// ------------------------------------------------------------------ sweep

struct SweepLists {
    std::vector<double> rho, gamma, beta1, beta2, noise;
    std::size_t jobs = 1;
    bool quiet = false;
};

struct Cell {
    double rho, gamma, beta1, beta2, noise;
    double final_epe = 0.0;
    std::size_t increases = 0;
    std::size_t iterations = 0;
    std::string file;
};

int cmd_sweep(const ConfigFlags& flags, const TargetFlags& tf, SweepLists lists, std::ostream& out,
              std::ostream& err) {
    const io::RunConfig cfg = flags.resolve();
    const BinaryPattern target = tf.load(cfg);
    const std::size_t n = target.side();
    const auto or_default = [](std::vector<double>& v, double d) {
        if (v.empty()) v.push_back(d);
    };
    or_default(lists.rho, cfg.solver.rho);
    or_default(lists.gamma, cfg.solver.gamma);
    or_default(lists.beta1, cfg.solver.beta1);
    or_default(lists.beta2, cfg.solver.beta2);
    or_default(lists.noise, 0.0);
    for (double x : lists.noise)
        if (!(x >= 0.0)) throw UsageError("--kernel-noise values must be >= 0");

    std::vector<Cell> cells;
    for (double r : lists.rho)
        for (double g : lists.gamma)
            for (double b1 : lists.beta1)
                for (double b2 : lists.beta2)
                    for (double nz : lists.noise) cells.push_back(Cell{r, g, b1, b2, nz, 0.0, 0, 0, {}});
    for (const auto& c : cells) {
        SolverConfig s = cfg.solver;
        s.rho = c.rho;
        s.gamma = c.gamma;
        s.beta1 = c.beta1;
        s.beta2 = c.beta2;
        s.validate();
    }

    const fs::path dir = prepare_dir(cfg.output_dir);
    const PsfKernel base = build_psf(cfg.optics);
    std::vector<std::exception_ptr> errors(cells.size());
    std::mutex log_mutex;

    auto run_cell = [&](std::size_t i) {
        try {
            Cell& c = cells[i];
            SolverConfig s = cfg.solver;
            s.rho = c.rho;
            s.gamma = c.gamma;
            s.beta1 = c.beta1;
            s.beta2 = c.beta2;
            PsfKernel psf = c.noise > 0.0 ? perturb_kernel(base, c.noise, cfg.seed) : base;
            const ImagingModel model(std::move(psf), n);
            AdmmOptions opts;
            opts.warn = [](std::string_view) {};
            const AdmmResult res = admm_optimize(target, model, s, opts);
            char name[32];
            std::snprintf(name, sizeof name, "cell_%03zu.csv", i);
            c.file = name;
            io::write_history(res.records, dir / c.file);
            c.final_epe = res.records.empty() ? res.initial_epe_error : res.records.back().epe_error;
            c.increases = count_increases(res.records, res.initial_lagrangian);
            c.iterations = res.records.size();
            if (!lists.quiet) {
                std::lock_guard lock(log_mutex);
                err << "cell " << i << " done: epe_error " << c.final_epe << ", " << c.increases
                    << " nonmonotone steps\n";
            }
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };

    const std::size_t jobs = std::max<std::size_t>(1, std::min(lists.jobs, cells.size()));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < cells.size(); i = next++) run_cell(i);
        });
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::ostringstream summary;
    summary << "cell,rho,gamma,beta1,beta2,kernel_noise,iterations,final_epe_error,nonmonotone_steps,history\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const Cell& c = cells[i];
        summary << i << ',' << fmt(c.rho) << ',' << fmt(c.gamma) << ',' << fmt(c.beta1) << ',' << fmt(c.beta2) << ','
                << fmt(c.noise) << ',' << c.iterations << ',' << fmt(c.final_epe) << ',' << c.increases << ','
                << c.file << '\n';
    }
    write_text(dir / "summary.csv", summary.str());
    out << summary.str();
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pixel-based inverse lithography with ADMM", "ilt"};
    app.require_subcommand(1);

    ConfigFlags psf_flags;
    auto* psf = app.add_subcommand("psf", "write the PSF real/imag/magnitude grids");
    add_optics_flags(psf, psf_flags);

    std::string gen_pattern = "ten_rectangles";
    std::size_t gen_size = 144;
    std::string gen_file;
    auto* gen = app.add_subcommand("generate", "write a built-in target pattern");
    gen->add_option("--pattern", gen_pattern, "one of: " + TargetFlags::join_names());
    gen->add_option("--size", gen_size, "grid side")->check(CLI::PositiveNumber);
    gen->add_option("--file", gen_file, "output file (.pgm for PGM, otherwise text)")->required();

    ConfigFlags sim_flags;
    TargetFlags sim_target;
    std::string sim_mask;
    auto* sim = app.add_subcommand("simulate", "image a mask: aerial image, wafer pattern, optional EPE");
    add_optics_flags(sim, sim_flags);
    sim_target.add(sim, sim_flags);
    sim->add_option("--mask", sim_mask, "mask file (text grid or PGM)")->required();

    ConfigFlags eval_flags;
    TargetFlags eval_target;
    std::string eval_mask;
    auto* eval = app.add_subcommand("evaluate", "EPE of a mask against a target");
    add_optics_flags(eval, eval_flags);
    eval_target.add(eval, eval_flags);
    eval->add_option("--mask", eval_mask, "mask file (text grid or PGM)")->required();

    ConfigFlags opt_flags;
    TargetFlags opt_target;
    double opt_noise = 0.0;
    std::string opt_init;
    bool opt_quiet = false;
    auto* opt = app.add_subcommand("optimize", "run ADMM mask optimization");
    add_optics_flags(opt, opt_flags);
    add_solver_flags(opt, opt_flags, true);
    opt_target.add(opt, opt_flags);
    opt->add_option("--kernel-noise", opt_noise, "relative l2 noise added to the PSF (seeded)");
    opt->add_option("--init", opt_init, "initial mask (default: the target)");
    opt->add_flag("--quiet", opt_quiet, "no per-iteration progress");

    auto* derive = app.add_subcommand("derive", "print reference values from the brute-force oracles");

    ConfigFlags sw_flags;
    TargetFlags sw_target;
    SweepLists lists;
    auto* sweep = app.add_subcommand("sweep", "grid of ADMM runs, one history CSV per cell");
    add_optics_flags(sweep, sw_flags);
    add_solver_flags(sweep, sw_flags, false);
    sw_target.add(sweep, sw_flags);
    sweep->add_option("--rho", lists.rho, "comma-separated rho values")->delimiter(',');
    sweep->add_option("--gamma", lists.gamma, "comma-separated gamma values")->delimiter(',');
    sweep->add_option("--beta1", lists.beta1, "comma-separated beta1 values")->delimiter(',');
    sweep->add_option("--beta2", lists.beta2, "comma-separated beta2 values")->delimiter(',');
    sweep->add_option("--kernel-noise", lists.noise, "comma-separated relative PSF noise levels")->delimiter(',');
    sweep->add_option("--jobs", lists.jobs, "cells run in parallel")->check(CLI::PositiveNumber);
    sweep->add_flag("--quiet", lists.quiet, "no per-cell progress");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (psf->parsed()) return cmd_psf(psf_flags, out);
        if (gen->parsed()) return cmd_generate(gen_pattern, gen_size, gen_file, out);
        if (sim->parsed()) return cmd_simulate(sim_flags, sim_target, sim_mask, out);
        if (eval->parsed()) return cmd_evaluate(eval_flags, eval_target, eval_mask, out);
        if (opt->parsed()) return cmd_optimize(opt_flags, opt_target, opt_noise, opt_init, opt_quiet, out, err);
        if (derive->parsed()) return cmd_derive(out);
        if (sweep->parsed()) return cmd_sweep(sw_flags, sw_target, lists, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const io::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    err << "error: no subcommand\n";
    return kExitUsage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"ilt"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace ilt::cli
