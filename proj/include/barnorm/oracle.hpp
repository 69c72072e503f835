#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>

#include "barnorm/errors.hpp"
#include "barnorm/matrix2.hpp"

namespace barnorm {

// Brute-force spectral-radius bounds from k-fold products:
//   lower = max_chains rho(P)^(1/k)      (valid lower bound for any chain set)
//   upper = max_chains ||P||_2^(1/k)     (valid only under full enumeration)
//   trace = max_chains |tr P|^(1/k)      (an estimate, not a bound at finite k)
// Enumeration is depth-first with prefix products reused, so r^k chains cost
// r^k matrix multiplications rather than k r^k.

inline constexpr std::uint64_t oracle_exhaustive_cap = std::uint64_t{1} << 20;

struct BoundsBracket {
    int depth = 0;
    double lower = 0.0;
    /// Absent in sampled mode: a sampled max of norms bounds nothing.
    std::optional<double> upper;
    double trace_estimate = 0.0;
    std::uint64_t products_evaluated = 0;
    bool sampled = false;
    std::uint64_t seed = 0; // meaningful only when sampled
};

namespace detail {

inline std::uint64_t chain_count_or_throw(std::size_t r, int depth) {
    if (depth < 1) {
        throw std::invalid_argument("oracle: depth must be >= 1");
    }
    std::uint64_t total = 1;
    for (int j = 0; j < depth; ++j) {
        total *= r;
        if (total > oracle_exhaustive_cap) {
            throw CapExceededError("oracle: r^k exceeds the exhaustive cap (2^20 chains); "
                                   "use the seeded sampling mode");
        }
    }
    return total;
}

// Odometer over index chains; prefix[l] holds the product of the first l
// factors, so advancing digit l only recomputes the l..depth tail.  Depth is
// unbounded for singleton sets (r^k = 1 never trips the cap), hence no
// recursion here.
template <typename Visit>
void for_each_product(const MatrixSet& set, int depth, Visit&& visit) {
    const std::size_t r = set.size();
    std::vector<std::size_t> idx(depth, 0);
    std::vector<Matrix2> prefix(depth + 1, Matrix2::identity());
    for (int l = 0; l < depth; ++l) prefix[l + 1] = set[0] * prefix[l];
    for (;;) {
        visit(prefix[depth]);
        int l = depth - 1;
        while (l >= 0 && idx[l] + 1 == r) --l;
        if (l < 0) break;
        ++idx[l];
        for (int j = l; j < depth; ++j) {
            if (j > l) idx[j] = 0;
            prefix[j + 1] = set[idx[j]] * prefix[j];
        }
    }
}

} // namespace detail

inline double lower_bound(const MatrixSet& set, int depth) {
    detail::chain_count_or_throw(set.size(), depth);
    double best = 0.0;
    detail::for_each_product(set, depth, [&](const Matrix2& p) {
        best = std::max(best, spectral_radius(p));
    });
    return std::pow(best, 1.0 / depth);
}

inline double upper_bound(const MatrixSet& set, int depth) {
    detail::chain_count_or_throw(set.size(), depth);
    double best = 0.0;
    detail::for_each_product(set, depth, [&](const Matrix2& p) {
        best = std::max(best, induced_two_norm(p));
    });
    return std::pow(best, 1.0 / depth);
}

inline double trace_estimate(const MatrixSet& set, int depth) {
    detail::chain_count_or_throw(set.size(), depth);
    double best = 0.0;
    detail::for_each_product(set, depth, [&](const Matrix2& p) {
        best = std::max(best, std::abs(p.trace()));
    });
    return std::pow(best, 1.0 / depth);
}

/// All three estimates in a single exhaustive enumeration.
inline BoundsBracket bracket(const MatrixSet& set, int depth) {
    const std::uint64_t count = detail::chain_count_or_throw(set.size(), depth);
    double rho_best = 0.0, norm_best = 0.0, trace_best = 0.0;
    detail::for_each_product(set, depth, [&](const Matrix2& p) {
        rho_best = std::max(rho_best, spectral_radius(p));
        norm_best = std::max(norm_best, induced_two_norm(p));
        trace_best = std::max(trace_best, std::abs(p.trace()));
    });
    const double inv = 1.0 / depth;
    return BoundsBracket{depth,
                         std::pow(rho_best, inv),
                         std::pow(norm_best, inv),
                         std::pow(trace_best, inv),
                         count,
                         false,
                         0};
}

/// Seeded uniform sampling of index chains for depths past the cap.  Each
/// sampled rho(P)^(1/k) still sits below the spectral radius, so the lower
/// bound stays valid (just weaker); no upper bound is reported.
inline BoundsBracket bracket_sampled(const MatrixSet& set, int depth, std::uint64_t seed,
                                     std::uint64_t samples = oracle_exhaustive_cap) {
    if (depth < 1) {
        throw std::invalid_argument("oracle: depth must be >= 1");
    }
    if (samples < 1) {
        throw std::invalid_argument("oracle: need at least one sample");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, set.size() - 1);
    double rho_best = 0.0, trace_best = 0.0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        Matrix2 p = Matrix2::identity();
        for (int j = 0; j < depth; ++j) p = set[pick(rng)] * p;
        rho_best = std::max(rho_best, spectral_radius(p));
        trace_best = std::max(trace_best, std::abs(p.trace()));
    }
    const double inv = 1.0 / depth;
    return BoundsBracket{depth,          std::pow(rho_best, inv), std::nullopt,
                         std::pow(trace_best, inv), samples,      true,
                         seed};
}

} // namespace barnorm
