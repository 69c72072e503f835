#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <barnorm/matrix2.hpp>

namespace testsupport {

inline barnorm::MatrixSet example1() {
    return barnorm::MatrixSet{{1, 1, 0, 1}, {1, 0, 1, 1}};
}

inline barnorm::MatrixSet example2() {
    return barnorm::MatrixSet{{1, 1, 0, 1}, {0.8, 0.6, -0.6, 0.8}, {1, 0, -0.4, 1.3}};
}

inline barnorm::Matrix2 random_matrix(std::mt19937_64& rng, double lo = -2.0,
                                      double hi = 2.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    return {u(rng), u(rng), u(rng), u(rng)};
}

/// Random nonzero matrix with entries in [lo, hi].
inline barnorm::Matrix2 random_nonzero_matrix(std::mt19937_64& rng, double lo = -2.0,
                                              double hi = 2.0) {
    for (;;) {
        const barnorm::Matrix2 m = random_matrix(rng, lo, hi);
        if (!m.is_zero()) return m;
    }
}

inline const double golden = 0.5 * (1.0 + std::sqrt(5.0));

/// Grid-bias allowance eps_grid = c * dphi used when comparing grid brackets
/// against exact values; the factor is calibrated on the example-1 pair
/// (observed bias there is ~0.3 dphi) and kept below 2e-3 at 3000 nodes.
inline constexpr double grid_bias_factor = 0.9;

inline double eps_grid(int node_count) {
    return grid_bias_factor * 2.0 * std::numbers::pi / node_count;
}

} // namespace testsupport
