#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "barnorm/matrix2.hpp"

namespace barnorm {

// A plane norm is stored as its gauge R(phi) = ||(cos phi, sin phi)|| on the
// uniform grid phi_k = -pi + 2*pi*k/N, k = 0..N.  Indices 0 and N both stand
// for the angle +-pi and always hold the same value; the unit sphere in polar
// coordinates is r = 1/R(phi).

enum class LookupMode {
    Interpolate, // linear interpolation between the bracketing nodes
    NearestNode, // round to the closest node (compatibility mode)
};

/// Radial stretches below this are treated as an exact zero: the image
/// direction is undefined and the limit contribution to the composite is 0.
inline constexpr double zero_stretch_eps = 1e-14;

/// Grid tolerance for the central-symmetry invariant R(phi) = R(phi + pi).
inline constexpr double symmetry_eps = 1e-9;

inline double grid_angle(int k, int node_count) {
    return std::numbers::pi * (2.0 * k - node_count) / node_count;
}

namespace detail {

// Folds the duplicated +-pi endpoint and averages antipodal nodes, making
// periodicity and central symmetry exact.
inline void symmetrize_gauge(std::vector<double>& r, int node_count) {
    r[0] = r[static_cast<std::size_t>(node_count)] = 0.5 * (r[0] + r[node_count]);
    const int half = node_count / 2;
    for (int k = 0; k < half; ++k) {
        const double m = 0.5 * (r[k] + r[k + half]);
        r[k] = m;
        r[k + half] = m;
    }
    r[static_cast<std::size_t>(node_count)] = r[0];
}

} // namespace detail

class PolarNorm {
public:
    /// The Euclidean gauge R = 1.
    static PolarNorm uniform(int node_count) {
        return PolarNorm(node_count, std::vector<double>(node_count + 1, 1.0));
    }

    /// Takes N+1 positive gauge values; the endpoint pair is folded and
    /// antipodal nodes averaged so the stored gauge is exactly periodic and
    /// centrally symmetric.
    PolarNorm(int node_count, std::vector<double> values)
        : n_(node_count), r_(std::move(values)) {
        if (n_ < 8 || n_ % 2 != 0) {
            throw std::invalid_argument("PolarNorm: node count must be even and >= 8");
        }
        if (r_.size() != static_cast<std::size_t>(n_) + 1) {
            throw std::invalid_argument("PolarNorm: need node_count + 1 gauge values");
        }
        for (double v : r_) {
            if (!(v > 0.0) || !std::isfinite(v)) {
                throw std::invalid_argument("PolarNorm: gauge values must be positive and finite");
            }
        }
        detail::symmetrize_gauge(r_, n_);
    }

    int node_count() const { return n_; }
    double delta_phi() const { return 2.0 * std::numbers::pi / n_; }
    double angle(int k) const { return grid_angle(k, n_); }
    const std::vector<double>& values() const { return r_; }
    double operator[](int k) const { return r_[k]; }

    /// Gauge at an arbitrary angle in [-pi, pi].
    double lookup(double phi, LookupMode mode) const {
        const double pos = (phi + std::numbers::pi) * n_ / (2.0 * std::numbers::pi);
        if (mode == LookupMode::NearestNode) {
            const long k = std::lround(pos);
            return r_[static_cast<std::size_t>(std::clamp(k, 0L, static_cast<long>(n_)))];
        }
        const double u = std::clamp(pos, 0.0, static_cast<double>(n_));
        const int j = std::min(static_cast<int>(u), n_ - 1);
        return std::lerp(r_[j], r_[j + 1], u - j);
    }

    /// ||x|| = r * R(phi(x)); zero maps to zero.
    double evaluate(Vec2 x, LookupMode mode = LookupMode::Interpolate) const {
        const double r = length(x);
        if (r == 0.0) return 0.0;
        return r * lookup(std::atan2(x.y, x.x), mode);
    }

private:
    int n_;
    std::vector<double> r_;
};

/// Per-matrix polar transform tables on the grid: the radial stretch
/// H_i(phi) = |A_i (cos phi, sin phi)|, the image angle
/// Phi_i(phi) = atan2 of the image vector, and the nearest grid node of
/// Phi_i for the compatibility lookup.
class TransformTables {
public:
    TransformTables(const MatrixSet& set, int node_count) : n_(node_count) {
        if (n_ < 8 || n_ % 2 != 0) {
            throw std::invalid_argument("TransformTables: node count must be even and >= 8");
        }
        const std::size_t r = set.size();
        stretch_.resize(r);
        image_angle_.resize(r);
        nearest_node_.resize(r);
        for (std::size_t i = 0; i < r; ++i) {
            const Matrix2& m = set[i];
            auto& h = stretch_[i];
            auto& ph = image_angle_[i];
            auto& nn = nearest_node_[i];
            h.resize(n_ + 1);
            ph.resize(n_ + 1);
            nn.resize(n_ + 1);
            for (int k = 0; k <= n_; ++k) {
                const double a = grid_angle(k, n_);
                const double c = std::cos(a);
                const double s = std::sin(a);
                const double u = m.a11 * c + m.a12 * s;
                const double v = m.a21 * c + m.a22 * s;
                h[k] = std::sqrt(u * u + v * v);
                ph[k] = std::atan2(v, u);
                const double pos = (ph[k] + std::numbers::pi) * n_ / (2.0 * std::numbers::pi);
                nn[k] = static_cast<int>(std::clamp(std::lround(pos), 0L, static_cast<long>(n_)));
            }
        }
    }

    int node_count() const { return n_; }
    std::size_t matrix_count() const { return stretch_.size(); }
    const std::vector<double>& stretch(std::size_t i) const { return stretch_[i]; }
    const std::vector<double>& image_angle(std::size_t i) const { return image_angle_[i]; }
    const std::vector<int>& nearest_node(std::size_t i) const { return nearest_node_[i]; }

private:
    int n_;
    std::vector<std::vector<double>> stretch_;
    std::vector<std::vector<double>> image_angle_;
    std::vector<std::vector<int>> nearest_node_;
};

inline TransformTables build_transform_tables(const MatrixSet& set, int node_count) {
    return TransformTables(set, node_count);
}

/// Node-wise composite R*(phi_k) = max_i H_i(phi_k) R(Phi_i(phi_k)).
inline std::vector<double> composite_r_star(const PolarNorm& norm,
                                            const TransformTables& tables,
                                            LookupMode mode = LookupMode::Interpolate) {
    if (tables.node_count() != norm.node_count()) {
        throw std::invalid_argument("composite_r_star: grid mismatch");
    }
    const int n = norm.node_count();
    std::vector<double> out(n + 1, 0.0);
    for (std::size_t i = 0; i < tables.matrix_count(); ++i) {
        const auto& h = tables.stretch(i);
        const auto& ph = tables.image_angle(i);
        const auto& nn = tables.nearest_node(i);
        for (int k = 0; k <= n; ++k) {
            if (h[k] < zero_stretch_eps) continue;
            const double rv = mode == LookupMode::NearestNode
                                  ? norm[nn[k]]
                                  : norm.lookup(ph[k], LookupMode::Interpolate);
            out[k] = std::max(out[k], h[k] * rv);
        }
    }
    return out;
}

/// One cyclic chord-bound pass
///   v_k <- min(v_k, (v_{k-1} + v_{k+1}) sin(dphi) / sin(2 dphi)),
/// neighbours taken from the input list, indices 0 and N identified.
inline std::vector<double> convexify(const std::vector<double>& values) {
    const int n = static_cast<int>(values.size()) - 1;
    if (n < 4) {
        throw std::invalid_argument("convexify: need at least 5 values");
    }
    const double dphi = 2.0 * std::numbers::pi / n;
    const double chord = std::sin(dphi) / std::sin(2.0 * dphi);
    std::vector<double> out(values.size());
    out[0] = std::min(values[0], chord * (values[1] + values[n - 1]));
    for (int k = 1; k < n; ++k) {
        out[k] = std::min(values[k], chord * (values[k - 1] + values[k + 1]));
    }
    out[n] = out[0];
    return out;
}

struct RhoBounds {
    double rho_minus = 0.0;
    double rho_plus = 0.0;
};

/// Extremes of the gauge ratio R*(phi_k) / R(phi_k) over the grid.
inline RhoBounds rho_bounds(const PolarNorm& norm, std::span<const double> r_star) {
    if (r_star.size() != norm.values().size()) {
        throw std::invalid_argument("rho_bounds: grid mismatch");
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int k = 0; k <= norm.node_count(); ++k) {
        const double ratio = r_star[k] / norm[k];
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    return {lo, hi};
}

/// Max-relaxation step R'(phi_k) = max{R(phi_k), R*(phi_k) / gamma}.
/// The scaled composite is symmetrized before the max so the result is
/// node-wise >= the input gauge exactly.
inline PolarNorm relax_update(const PolarNorm& norm, std::span<const double> r_star,
                              double gamma) {
    if (!(gamma > 0.0)) {
        throw std::domain_error("relax_update: gamma must be positive");
    }
    if (r_star.size() != norm.values().size()) {
        throw std::invalid_argument("relax_update: grid mismatch");
    }
    const int n = norm.node_count();
    std::vector<double> scaled(r_star.begin(), r_star.end());
    for (double& v : scaled) v /= gamma;
    detail::symmetrize_gauge(scaled, n);
    std::vector<double> out(scaled.size());
    for (int k = 0; k <= n; ++k) out[k] = std::max(norm[k], scaled[k]);
    return PolarNorm(n, std::move(out));
}

/// Rescales so the gauge at angle 0 equals 1.
inline PolarNorm normalize(const PolarNorm& norm) {
    const double at_zero = norm[norm.node_count() / 2];
    std::vector<double> out = norm.values();
    for (double& v : out) v /= at_zero;
    return PolarNorm(norm.node_count(), std::move(out));
}

/// max_k(R_a/R_b) / min_k(R_a/R_b); equals 1 iff the gauges are proportional.
inline double eccentricity(const PolarNorm& a, const PolarNorm& b) {
    if (a.node_count() != b.node_count()) {
        throw std::invalid_argument("eccentricity: grid mismatch");
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int k = 0; k <= a.node_count(); ++k) {
        const double ratio = a[k] / b[k];
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    return hi / lo;
}

} // namespace barnorm
