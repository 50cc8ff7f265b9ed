#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "minkolab/errors.hpp"
#include "minkolab/io.hpp"
#include "minkolab/measure.hpp"
#include "minkolab/polytope.hpp"
#include "minkolab/solver.hpp"
#include "minkolab/stability.hpp"

namespace {

using namespace minkolab;

std::string default_output(const std::string& input, const char* suffix) {
    std::string stem = input;
    std::size_t dot = stem.rfind('.');
    if (dot != std::string::npos && stem.find('/', dot) == std::string::npos)
        stem = stem.substr(0, dot);
    return stem + suffix;
}

int run_solve(const std::string& measure_path, double p, double tolerance, int max_iters,
              std::string output) {
    DirectionalMeasure mu = load_measure(measure_path);
    if (p < 1.0) throw ExcludedExponent("solve needs p >= 1");
    if (std::abs(p - mu.dim()) <= 1e-12 && p != 1.0)
        throw ExcludedExponent("p equals the dimension");
    SolveOptions opts;
    opts.tolerance = tolerance;
    opts.max_iterations = max_iters;
    SolveReport rep = p == 1.0 ? solve_minkowski(mu, opts) : solve_minkowski_lp(mu, p, opts);
    if (output.empty()) output = default_output(measure_path, ".solve.json");
    write_file(output, solve_report_to_json(rep));
    std::printf("residual=%s iterations=%d lambda=%s output=%s\n",
                format_double(rep.residual).c_str(), rep.iterations,
                format_double(rep.lambda).c_str(), output.c_str());
    if (!rep.converged) throw NoConvergence(rep.failure + " (best iterate written)");
    return 0;
}

int run_distance(const std::string& a, const std::string& b, const std::string& output) {
    DirectionalMeasure mu = load_measure(a);
    DirectionalMeasure nu = load_measure(b);
    double dc = dual_convex_distance(mu, nu);
    double w1 = wasserstein1(mu, nu);
    std::printf("dc=%s w1=%s\n", format_double(dc).c_str(), format_double(w1).c_str());
    if (!output.empty())
        write_file(output, "{\"dc\": " + format_double(dc) + ", \"w1\": " + format_double(w1) +
                               "}\n");
    return 0;
}

int run_asymmetry(const std::string& a, const std::string& b, const std::string& output) {
    Polytope p = load_polytope(a);
    Polytope q = load_polytope(b);
    double alpha = fraenkel_asymmetry(p, q);
    std::printf("alpha=%s\n", format_double(alpha).c_str());
    if (!output.empty()) write_file(output, "{\"alpha\": " + format_double(alpha) + "}\n");
    return 0;
}

int run_deficits(const std::string& a, const std::string& b, double p, std::string output) {
    Polytope e = load_polytope(a);
    Polytope f = load_polytope(b);
    DeficitReport rep = deficits(e, f, p);
    if (output.empty()) output = default_output(a, ".deficits.json");
    write_file(output, deficit_report_to_json(rep));
    std::printf("delta_bm=%s delta_iso_p=%s alpha=%s output=%s\n",
                format_double(rep.delta_bm).c_str(), format_double(rep.delta_iso_p).c_str(),
                format_double(rep.alpha).c_str(), output.c_str());
    return 0;
}

int run_radii(const std::string& body_path, double p, bool auto_normalize, std::string output) {
    Polytope body = load_polytope(body_path);
    if (p > 1.0 && auto_normalize) {
        double mass = surface_measure(body, p).total_mass();
        body = body.scaled(std::pow(mass, 1.0 / (p - body.dim())));
    }
    RadiusBoundReport rep = radius_bounds(body, p);
    if (output.empty()) output = default_output(body_path, ".radii.json");
    write_file(output, radius_report_to_json(rep));
    std::printf("r=%s R=%s theta=%s lower_ok=%d upper_ok=%d output=%s\n",
                format_double(rep.r).c_str(), format_double(rep.R).c_str(),
                format_double(rep.theta_s).c_str(), rep.lower_ok ? 1 : 0, rep.upper_ok ? 1 : 0,
                output.c_str());
    return 0;
}

int run_sweep(const std::string& base_path, const SweepOptions& opts, std::string output) {
    DirectionalMeasure base = load_measure(base_path);
    std::vector<std::string> failures;
    std::vector<SweepRecord> records = stability_sweep(base, opts, &failures);
    for (const auto& f : failures) std::fprintf(stderr, "sweep: %s\n", f.c_str());
    if (output.empty()) output = default_output(base_path, ".sweep.csv");
    write_file(output, sweep_to_csv(records));
    int rows = 0;
    for (const auto& r : records)
        if (r.included) ++rows;
    try {
        FitResult fit = exponent_fit(records);
        std::printf("rows=%d slope=%s intercept=%s r2=%s output=%s\n", rows,
                    format_double(fit.slope).c_str(), format_double(fit.intercept).c_str(),
                    format_double(fit.r2).c_str(), output.c_str());
    } catch (const InsufficientData&) {
        std::printf("rows=%d slope=nan output=%s\n", rows, output.c_str());
    }
    return 0;
}

int run_degeneracy(const std::vector<double>& aspects, double eps, std::uint64_t seed,
                   std::string output) {
    std::vector<SweepRecord> records = degeneracy_sweep(aspects, eps, seed);
    if (output.empty()) output = "degeneracy.csv";
    write_file(output, sweep_to_csv(records));
    std::string thetas, ratios;
    for (const auto& r : records) {
        thetas += (thetas.empty() ? "" : ",") + format_double(r.theta);
        ratios += (ratios.empty() ? "" : ",") + format_double(r.main_ratio);
    }
    std::printf("theta=%s required_constant=%s output=%s\n", thetas.c_str(), ratios.c_str(),
                output.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minkolab: discrete Minkowski problems and stability experiments"};
    app.require_subcommand(1);

    std::string measure_path, a_path, b_path, body_path, output;
    double p = 1.0, tolerance = 1e-8, eps = 1e-2, vartheta = 0.0;
    int max_iters = 500, seeds = 20, jobs = 1;
    std::uint64_t seed = 0;
    bool auto_normalize = false, jitter = false;
    std::vector<double> eps_list, aspects;

    auto* solve = app.add_subcommand("solve", "recover a body from a prescribed measure");
    solve->add_option("--measure", measure_path, "measure JSON")
        ->required()
        ->check(CLI::ExistingFile);
    solve->add_option("--p", p, "exponent (1 or p > 1, p != dim)");
    solve->add_option("--tolerance", tolerance, "weight residual target");
    solve->add_option("--max-iters", max_iters, "iteration cap");
    solve->add_option("--output", output, "solve report path");

    auto* distance = app.add_subcommand("distance", "dual-convex and Wasserstein distances");
    distance->add_option("--a", a_path)->required()->check(CLI::ExistingFile);
    distance->add_option("--b", b_path)->required()->check(CLI::ExistingFile);
    distance->add_option("--output", output);

    auto* asymmetry = app.add_subcommand("asymmetry", "Fraenkel asymmetry of two bodies");
    asymmetry->add_option("--a", a_path)->required()->check(CLI::ExistingFile);
    asymmetry->add_option("--b", b_path)->required()->check(CLI::ExistingFile);
    asymmetry->add_option("--output", output);

    auto* defc = app.add_subcommand("deficits", "inequality deficits of two bodies");
    defc->add_option("--a", a_path)->required()->check(CLI::ExistingFile);
    defc->add_option("--b", b_path)->required()->check(CLI::ExistingFile);
    defc->add_option("--p", p);
    defc->add_option("--output", output);

    auto* rad = app.add_subcommand("radii", "radius bounds against the dispersion functional");
    rad->add_option("--body", body_path)->required()->check(CLI::ExistingFile);
    rad->add_option("--p", p);
    rad->add_flag("--auto-normalize", auto_normalize, "dilate so the L_p surface mass is 1");
    rad->add_option("--output", output);

    auto* sweep = app.add_subcommand("sweep", "perturbation stability sweep");
    sweep->add_option("--base", measure_path)->required()->check(CLI::ExistingFile);
    sweep->add_option("--p", p);
    sweep->add_option("--eps", eps_list, "perturbation sizes")->delimiter(',')->required();
    sweep->add_option("--seeds", seeds, "seeds per epsilon");
    sweep->add_option("--vartheta", vartheta, "dispersion gate");
    sweep->add_option("--seed", seed, "master seed");
    sweep->add_option("--jobs", jobs, "parallel workers");
    sweep->add_option("--tolerance", tolerance);
    sweep->add_option("--max-iters", max_iters);
    sweep->add_flag("--jitter", jitter, "also jitter atom directions");
    sweep->add_option("--output", output);

    auto* degen = app.add_subcommand("degeneracy", "collapsing-ellipse experiment");
    degen->add_option("--aspects", aspects, "aspect ratios")->delimiter(',')->required();
    degen->add_option("--eps", eps, "fixed perturbation size");
    degen->add_option("--seed", seed);
    degen->add_option("--output", output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed()) return run_solve(measure_path, p, tolerance, max_iters, output);
        if (distance->parsed()) return run_distance(a_path, b_path, output);
        if (asymmetry->parsed()) return run_asymmetry(a_path, b_path, output);
        if (defc->parsed()) return run_deficits(a_path, b_path, p, output);
        if (rad->parsed()) return run_radii(body_path, p, auto_normalize, output);
        if (sweep->parsed()) {
            SweepOptions opts;
            opts.p = p;
            opts.epsilons = eps_list;
            opts.seeds_per_eps = seeds;
            opts.vartheta = vartheta;
            opts.master_seed = seed;
            opts.direction_jitter = jitter;
            opts.solver_tolerance = tolerance;
            if (sweep->count("--max-iters")) opts.solver_max_iterations = max_iters;
            if (const char* env = std::getenv("MINKOLAB_JOBS")) opts.jobs = std::atoi(env);
            else opts.jobs = jobs;
            return run_sweep(measure_path, opts, output);
        }
        if (degen->parsed()) return run_degeneracy(aspects, eps, seed, output);
    } catch (const DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
