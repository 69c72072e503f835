// barnorm: joint spectral radius of 2x2 matrix families via the
// max-relaxation Barabanov-norm iteration.
//
// Subcommands:
//   jsr     run the iteration, write a step-history report
//   bounds  brute-force product bounds at a fixed depth
//   sphere  run to convergence and export the unit-sphere geometry (CSV + SVG)

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <barnorm/barnorm.hpp>

namespace fs = std::filesystem;

namespace {

// exit statuses
constexpr int exit_ok = 0;
constexpr int exit_not_converged = 2;
constexpr int exit_invalid_input = 3;
constexpr int exit_reducible = 4;
constexpr int exit_cap_exceeded = 5;

struct CommonOpts {
    std::string problem_path;
    int nodes = 3000;
    double tol = 1e-3;
    int max_iters = 1000;
    std::string averaging = "arith";
    std::string lookup = "interp";
    std::string convexify = "on";
    bool relative_gap = false;
    bool force = false;
    std::string out_dir = ".";
};

void add_common_options(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("problem", o.problem_path, "problem file (JSON)")->required();
    cmd->add_option("--nodes", o.nodes, "grid nodes over [-pi, pi]")->capture_default_str();
    cmd->add_option("--tol", o.tol, "stopping gap rho+ - rho-")->capture_default_str();
    cmd->add_option("--max-iters", o.max_iters, "iteration cap")->capture_default_str();
    cmd->add_option("--averaging", o.averaging, "gamma rule (arith|geom|harm)")
        ->check(CLI::IsMember({"arith", "geom", "harm"}))
        ->capture_default_str();
    cmd->add_option("--lookup", o.lookup, "gauge lookup (interp|nearest)")
        ->check(CLI::IsMember({"interp", "nearest"}))
        ->capture_default_str();
    cmd->add_option("--convexify", o.convexify, "chord-bound repair of R* (on|off)")
        ->check(CLI::IsMember({"on", "off"}))
        ->capture_default_str();
    cmd->add_flag("--relative-gap", o.relative_gap, "stop on (rho+ - rho-)/rho+ instead");
    cmd->add_flag("--force", o.force, "run reducible sets anyway (unsupported regime)");
    cmd->add_option("--out", o.out_dir, "output directory")->capture_default_str();
}

barnorm::RunConfig to_config(const CommonOpts& o) {
    barnorm::RunConfig c;
    c.node_count = o.nodes;
    c.tolerance = o.tol;
    c.max_iterations = o.max_iters;
    c.averaging = o.averaging == "geom"   ? barnorm::Averaging::Geometric
                  : o.averaging == "harm" ? barnorm::Averaging::Harmonic
                                          : barnorm::Averaging::Arithmetic;
    c.lookup = o.lookup == "nearest" ? barnorm::LookupMode::NearestNode
                                     : barnorm::LookupMode::Interpolate;
    c.convexify = o.convexify == "on";
    c.relative_gap = o.relative_gap;
    c.force = o.force;
    return c;
}

void write_file_atomic(const fs::path& target, const std::string& bytes) {
    fs::create_directories(target.parent_path().empty() ? "." : target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << bytes;
    }
    fs::rename(tmp, target);
}

fs::path out_path(const CommonOpts& o, const std::string& suffix) {
    const std::string stem = fs::path(o.problem_path).stem().string();
    return fs::path(o.out_dir) / (stem + suffix);
}

void print_steps(const barnorm::IterationReport& rep) {
    for (const auto& s : rep.steps) {
        std::printf("i=%4d, Bounds for J.S.R.: %5.3f < r < %5.3f\n", s.n, s.rho_minus,
                    s.rho_plus);
    }
}

std::pair<barnorm::IterationReport, std::string> run_and_report(
    const barnorm::Problem& problem, const CommonOpts& opts) {
    const barnorm::MatrixSet set = problem.matrix_set();
    const barnorm::RunConfig config = to_config(opts);
    barnorm::IterationReport rep = barnorm::run(set, config);
    if (!rep.warning.empty()) {
        std::cerr << "warning: " << rep.warning << "\n";
    }
    const double residual = barnorm::barabanov_residual(rep.final_norm, set, rep.midpoint(),
                                                        config.lookup, config.convexify);
    const std::string bytes =
        barnorm::write_report(barnorm::make_report(problem.label, config, rep, residual));
    return {std::move(rep), bytes};
}

int cmd_jsr(const CommonOpts& opts) {
    const barnorm::Problem problem = barnorm::load_problem(opts.problem_path);
    auto [rep, report_bytes] = run_and_report(problem, opts);
    print_steps(rep);
    write_file_atomic(out_path(opts, "-report.json"), report_bytes);
    if (rep.converged) {
        std::printf("converged after %zu iterations: %.17g <= rho <= %.17g\n",
                    rep.steps.size(), rep.rho_lower(), rep.rho_upper());
    } else {
        std::printf("not converged after %zu iterations, gap %.3g (tolerance %.3g)\n",
                    rep.steps.size(), rep.gap(), rep.tolerance_used);
    }
    std::printf("report: %s\n", out_path(opts, "-report.json").string().c_str());
    return rep.converged ? exit_ok : exit_not_converged;
}

int cmd_bounds(const CommonOpts& opts, int depth, std::optional<std::uint64_t> seed) {
    const barnorm::Problem problem = barnorm::load_problem(opts.problem_path);
    const barnorm::MatrixSet set = problem.matrix_set();
    barnorm::BoundsBracket b{};
    if (seed) {
        b = barnorm::bracket_sampled(set, depth, *seed);
    } else {
        b = barnorm::bracket(set, depth); // throws CapExceededError past the cap
    }
    std::printf("depth k = %d (%llu products%s)\n", b.depth,
                static_cast<unsigned long long>(b.products_evaluated),
                b.sampled ? ", sampled" : "");
    std::printf("lower  max rho(P)^(1/k)  = %.17g\n", b.lower);
    if (b.upper) {
        std::printf("upper  max |P|_2^(1/k)   = %.17g\n", *b.upper);
    } else {
        std::printf("upper  max |P|_2^(1/k)   = n/a (sampled mode)\n");
    }
    std::printf("trace  max |tr P|^(1/k)  = %.17g\n", b.trace_estimate);
    write_file_atomic(out_path(opts, "-bounds.json"),
                      barnorm::write_bounds_report(problem.label, b));
    return exit_ok;
}

int cmd_sphere(const CommonOpts& opts, bool force_output) {
    const barnorm::Problem problem = barnorm::load_problem(opts.problem_path);
    auto [rep, report_bytes] = run_and_report(problem, opts);
    print_steps(rep);
    write_file_atomic(out_path(opts, "-report.json"), report_bytes);
    if (!rep.converged && !force_output) {
        std::fprintf(stderr,
                     "not converged after %zu iterations (gap %.3g); pass --force-output "
                     "to export the sphere anyway\n",
                     rep.steps.size(), rep.gap());
        return exit_not_converged;
    }
    const barnorm::RunConfig config = to_config(opts);
    const barnorm::SphereTable table = build_sphere_table(
        rep.final_norm, problem.matrix_set(), rep.rho_upper(), config.lookup);
    write_file_atomic(out_path(opts, "-sphere.csv"), barnorm::sphere_csv(table));
    write_file_atomic(out_path(opts, "-sphere.svg"), barnorm::sphere_svg(table));
    std::printf("sphere: %s, %s\n", out_path(opts, "-sphere.csv").string().c_str(),
                out_path(opts, "-sphere.svg").string().c_str());
    return rep.converged ? exit_ok : exit_not_converged;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"joint spectral radius and Barabanov norms of 2x2 matrix families"};
    app.require_subcommand(1);

    CommonOpts jsr_opts, bounds_opts, sphere_opts;
    int depth = 1;
    std::optional<std::uint64_t> seed;
    bool force_output = false;

    CLI::App* jsr = app.add_subcommand("jsr", "run the max-relaxation iteration");
    add_common_options(jsr, jsr_opts);

    CLI::App* bounds = app.add_subcommand("bounds", "brute-force product bounds");
    bounds->add_option("problem", bounds_opts.problem_path, "problem file (JSON)")->required();
    bounds->add_option("--depth", depth, "product length k")->required();
    bounds
        ->add_option("--seed", seed,
                     "sampling seed; enables the sampled mode past the exhaustive cap")
        ->expected(1);
    bounds->add_option("--out", bounds_opts.out_dir, "output directory")
        ->capture_default_str();

    CLI::App* sphere = app.add_subcommand("sphere", "export the unit-sphere geometry");
    add_common_options(sphere, sphere_opts);
    sphere->add_flag("--force-output", force_output, "export even without convergence");

    CLI11_PARSE(app, argc, argv);

    try {
        if (jsr->parsed()) return cmd_jsr(jsr_opts);
        if (bounds->parsed()) return cmd_bounds(bounds_opts, depth, seed);
        if (sphere->parsed()) return cmd_sphere(sphere_opts, force_output);
    } catch (const barnorm::ReducibleSetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_reducible;
    } catch (const barnorm::CapExceededError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_cap_exceeded;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_invalid_input;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_invalid_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_ok;
}
