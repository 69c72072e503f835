#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "barnorm/errors.hpp"
#include "barnorm/matrix2.hpp"
#include "barnorm/polar_norm.hpp"

namespace barnorm {

// The max-relaxation engine.  Each pass computes the composite gauge
// R*_n = max_i H_i R_n(Phi_i), reads off the certified bracket
//   rho_n^- = min R*_n/R_n  <=  rho(A)  <=  max R*_n/R_n = rho_n^+,
// relaxes the gauge towards R*_n / gamma_n with gamma_n between the bounds,
// and renormalizes at angle 0.  The lower bounds are nondecreasing and the
// upper bounds nonincreasing, so the final bracket is an a posteriori error
// certificate for the computed spectral radius.

enum class Averaging { Arithmetic, Geometric, Harmonic };

inline double averaging_eval(Averaging kind, double t, double s) {
    if (!(t > 0.0) || !(s > 0.0)) {
        throw std::domain_error("averaging_eval: arguments must be positive");
    }
    switch (kind) {
    case Averaging::Arithmetic: return 0.5 * (t + s);
    case Averaging::Geometric: return std::sqrt(t * s);
    case Averaging::Harmonic: return 2.0 * t * s / (t + s);
    }
    throw std::logic_error("averaging_eval: unknown kind");
}

struct RunConfig {
    int node_count = 3000;
    double tolerance = 1e-3;
    int max_iterations = 1000;
    Averaging averaging = Averaging::Arithmetic;
    LookupMode lookup = LookupMode::Interpolate;
    bool convexify = true;
    bool relative_gap = false; // stop on (rho+ - rho-)/rho+ instead of the absolute gap
    bool force = false;        // run reducible sets anyway (unsupported regime)
    bool record_gauges = false;
    std::optional<PolarNorm> initial_norm; // default: R = 1; must match node_count
};

struct IterationStep {
    int n = 0;
    double rho_minus = 0.0;
    double rho_plus = 0.0;
    double gamma = 0.0;
};

struct IterationReport {
    std::vector<IterationStep> steps;
    PolarNorm final_norm; // normalized: R(0) = 1
    bool converged = false;
    double tolerance_used = 0.0;
    int node_count = 0;
    IrreducibilityVerdict irreducibility;
    bool unsupported_regime = false; // forced run on a reducible set
    std::string warning;
    /// When requested: gauges[0] is the initial norm, gauges[n] the normalized
    /// norm after step n.
    std::vector<PolarNorm> gauges;

    double rho_lower() const { return steps.back().rho_minus; }
    double rho_upper() const { return steps.back().rho_plus; }
    double gap() const { return rho_upper() - rho_lower(); }
    double midpoint() const { return 0.5 * (rho_lower() + rho_upper()); }
};

inline IterationReport run(const MatrixSet& set, const RunConfig& config = {}) {
    if (config.node_count < 8 || config.node_count % 2 != 0) {
        throw std::invalid_argument("run: node_count must be even and >= 8");
    }
    if (!(config.tolerance > 0.0)) {
        throw std::invalid_argument("run: tolerance must be positive");
    }
    if (config.max_iterations < 1) {
        throw std::invalid_argument("run: max_iterations must be >= 1");
    }

    const IrreducibilityVerdict verdict = irreducibility_check(set);
    bool unsupported = false;
    std::string warning;
    if (verdict.kind == Reducibility::Reducible) {
        if (!config.force) {
            throw ReducibleSetError(
                "matrix set is reducible (shared invariant line); the bracket "
                "certificate does not apply -- use force to run anyway");
        }
        unsupported = true;
    } else if (verdict.kind == Reducibility::Inconclusive) {
        warning = "irreducibility test inconclusive (eigendirections within 10x of "
                  "the direction tolerance); results may be unreliable";
    }

    PolarNorm gauge = config.initial_norm ? *config.initial_norm
                                          : PolarNorm::uniform(config.node_count);
    if (gauge.node_count() != config.node_count) {
        throw std::invalid_argument("run: initial norm grid does not match node_count");
    }

    const TransformTables tables = build_transform_tables(set, config.node_count);

    std::vector<IterationStep> steps;
    std::vector<PolarNorm> gauges;
    if (config.record_gauges) gauges.push_back(gauge);
    bool converged = false;

    for (int n = 1; n <= config.max_iterations; ++n) {
        std::vector<double> r_star = composite_r_star(gauge, tables, config.lookup);
        if (config.convexify) r_star = convexify(r_star);
        const RhoBounds b = rho_bounds(gauge, r_star);
        if (!(b.rho_minus > 0.0)) {
            // only reachable in forced runs: every matrix collapses some
            // direction, so the ratio floor is 0 and gamma degenerates
            throw std::domain_error("run: gauge ratio collapsed to zero");
        }
        const double gamma = averaging_eval(config.averaging, b.rho_minus, b.rho_plus);
        steps.push_back({n, b.rho_minus, b.rho_plus, gamma});

        gauge = normalize(relax_update(gauge, r_star, gamma));
        if (config.record_gauges) gauges.push_back(gauge);

        const double gap = b.rho_plus - b.rho_minus;
        const bool stop = config.relative_gap ? gap / b.rho_plus < config.tolerance
                                              : gap < config.tolerance;
        if (stop) {
            converged = true;
            break;
        }
    }

    return IterationReport{std::move(steps),
                           std::move(gauge),
                           converged,
                           config.tolerance,
                           config.node_count,
                           verdict,
                           unsupported,
                           std::move(warning),
                           std::move(gauges)};
}

/// max_k |R*(phi_k)/R(phi_k) - rho|: the grid residual of the Barabanov
/// condition rho ||x|| = max_i ||A_i x||.  A converged run's final norm has
/// residual at most the final bracket width.
inline double barabanov_residual(const PolarNorm& norm, const MatrixSet& set, double rho,
                                 LookupMode mode = LookupMode::Interpolate,
                                 bool apply_convexify = true) {
    if (!(rho > 0.0)) {
        throw std::domain_error("barabanov_residual: rho must be positive");
    }
    const TransformTables tables = build_transform_tables(set, norm.node_count());
    std::vector<double> r_star = composite_r_star(norm, tables, mode);
    if (apply_convexify) r_star = convexify(r_star);
    double worst = 0.0;
    for (int k = 0; k <= norm.node_count(); ++k) {
        worst = std::max(worst, std::abs(r_star[k] / norm[k] - rho));
    }
    return worst;
}

} // namespace barnorm
