#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace barnorm {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double length(Vec2 v) { return std::hypot(v.x, v.y); }

/// Dense real 2x2 matrix, entries in row-major order.
struct Matrix2 {
    double a11 = 0.0, a12 = 0.0;
    double a21 = 0.0, a22 = 0.0;

    static constexpr Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    static Matrix2 rotation(double theta) {
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        return {c, -s, s, c};
    }

    double trace() const { return a11 + a22; }
    double determinant() const { return a11 * a22 - a12 * a21; }

    bool is_finite() const {
        return std::isfinite(a11) && std::isfinite(a12) && std::isfinite(a21) &&
               std::isfinite(a22);
    }

    bool is_zero() const { return a11 == 0.0 && a12 == 0.0 && a21 == 0.0 && a22 == 0.0; }

    Vec2 apply(Vec2 v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }

    Matrix2 transposed() const { return {a11, a21, a12, a22}; }

    friend Matrix2 operator*(const Matrix2& l, const Matrix2& r) {
        return {l.a11 * r.a11 + l.a12 * r.a21, l.a11 * r.a12 + l.a12 * r.a22,
                l.a21 * r.a11 + l.a22 * r.a21, l.a21 * r.a12 + l.a22 * r.a22};
    }

    friend Matrix2 operator*(double c, const Matrix2& m) {
        return {c * m.a11, c * m.a12, c * m.a21, c * m.a22};
    }
};

/// Largest eigenvalue magnitude from the closed-form characteristic roots.
///
/// The discriminant tr^2 - 4 det is evaluated as (a11 - a22)^2 + 4 a12 a21,
/// which is free of the tr^2 vs 4 det cancellation, and the max-magnitude
/// root (|tr| + sqrt(disc)) / 2 never subtracts.
inline double spectral_radius(const Matrix2& a) {
    const double d = a.a11 - a.a22;
    const double disc = d * d + 4.0 * a.a12 * a.a21;
    if (disc < 0.0) {
        // complex conjugate pair: |lambda|^2 = det (> 0 whenever disc < 0)
        return std::sqrt(a.determinant());
    }
    return 0.5 * (std::abs(a.trace()) + std::sqrt(disc));
}

/// Largest singular value, i.e. sqrt of the dominant eigenvalue of A^T A,
/// via the rotation-split form sigma_max = (p + q)/2 with
/// p = |(a11+a22, a21-a12)|, q = |(a11-a22, a21+a12)|, which adds two
/// nonnegative terms instead of subtracting near-equal ones.
inline double induced_two_norm(const Matrix2& a) {
    const double p = std::hypot(a.a11 + a.a22, a.a21 - a.a12);
    const double q = std::hypot(a.a11 - a.a22, a.a21 + a.a12);
    return 0.5 * (p + q);
}

/// An ordered family {A_1, ..., A_r} of nonzero, finite 2x2 matrices.
class MatrixSet {
public:
    explicit MatrixSet(std::vector<Matrix2> matrices) : matrices_(std::move(matrices)) {
        if (matrices_.empty()) {
            throw std::invalid_argument("MatrixSet: at least one matrix required");
        }
        for (const Matrix2& m : matrices_) {
            if (!m.is_finite()) {
                throw std::invalid_argument("MatrixSet: entries must be finite");
            }
            if (m.is_zero()) {
                // a zero matrix forces zero gauge ratios and breaks the
                // relaxation divisions downstream
                throw std::invalid_argument("MatrixSet: zero matrix not allowed");
            }
        }
    }

    MatrixSet(std::initializer_list<Matrix2> ms) : MatrixSet(std::vector<Matrix2>(ms)) {}

    std::size_t size() const { return matrices_.size(); }
    const Matrix2& operator[](std::size_t i) const { return matrices_[i]; }
    const std::vector<Matrix2>& matrices() const { return matrices_; }

    auto begin() const { return matrices_.begin(); }
    auto end() const { return matrices_.end(); }

    MatrixSet scaled(double c) const {
        std::vector<Matrix2> out;
        out.reserve(matrices_.size());
        for (const Matrix2& m : matrices_) out.push_back(c * m);
        return MatrixSet(std::move(out));
    }

private:
    std::vector<Matrix2> matrices_;
};

/// Product A_{i_k} ... A_{i_2} A_{i_1} for the 0-based index chain
/// (i_1, i_2, ..., i_k): the first index supplies the rightmost factor.
inline Matrix2 product_chain(const MatrixSet& set, std::span<const std::size_t> indices) {
    Matrix2 p = Matrix2::identity();
    for (std::size_t i : indices) {
        if (i >= set.size()) {
            throw std::out_of_range("product_chain: matrix index out of range");
        }
        p = set[i] * p;
    }
    return p;
}

inline Matrix2 product_chain(const MatrixSet& set,
                             std::initializer_list<std::size_t> indices) {
    return product_chain(set, std::span<const std::size_t>(indices.begin(), indices.size()));
}

enum class Reducibility { Irreducible, Reducible, Inconclusive };

struct IrreducibilityVerdict {
    Reducibility kind = Reducibility::Irreducible;
    /// Unit direction of the shared invariant line, when reducible.
    std::optional<Vec2> common_direction;
};

/// Two directions are identified when |sin(angle between them)| falls below
/// this; decisions within 10x of it yield an inconclusive verdict.
inline constexpr double direction_tolerance = 1e-9;

namespace detail {

struct EigenDirections {
    bool complex_pair = false;    // no real eigendirection at all
    bool every_direction = false; // scalar multiple of the identity
    int count = 0;
    std::array<Vec2, 2> dirs{}; // unit vectors
};

inline EigenDirections real_eigen_directions(const Matrix2& a) {
    EigenDirections out;
    if (a.a12 == 0.0 && a.a21 == 0.0 && a.a11 == a.a22) {
        out.every_direction = true;
        return out;
    }
    const double d = a.a11 - a.a22;
    const double disc = d * d + 4.0 * a.a12 * a.a21;
    if (disc < 0.0) {
        out.complex_pair = true;
        return out;
    }
    const double sq = std::sqrt(disc);
    const double tr = a.trace();
    const int n_roots = sq > 0.0 ? 2 : 1;
    for (int j = 0; j < n_roots; ++j) {
        const double lam = 0.5 * (tr + (j == 0 ? sq : -sq));
        // null vector of (A - lam I), taken from the better-conditioned row
        const Vec2 v1{a.a12, lam - a.a11};
        const Vec2 v2{lam - a.a22, a.a21};
        const Vec2 v = length(v1) >= length(v2) ? v1 : v2;
        const double len = length(v);
        if (len == 0.0) continue; // cannot happen for a non-scalar matrix
        out.dirs[out.count++] = Vec2{v.x / len, v.y / len};
    }
    return out;
}

} // namespace detail

/// Searches for a real eigendirection shared by every matrix in the set.
/// For m = 2 the only proper invariant subspaces are such lines, so a shared
/// one is exactly what "reducible" means here. Directions closer than
/// direction_tolerance count as equal; matches within 10x of the tolerance
/// make the verdict inconclusive instead of deciding either way.
inline IrreducibilityVerdict irreducibility_check(const MatrixSet& set) {
    // candidate directions come from the first matrix that is not lambda*I
    const detail::EigenDirections* anchor = nullptr;
    detail::EigenDirections storage;
    for (const Matrix2& m : set) {
        storage = detail::real_eigen_directions(m);
        if (!storage.every_direction) {
            anchor = &storage;
            break;
        }
    }
    if (anchor == nullptr) {
        // every matrix is a multiple of the identity: all lines invariant
        return {Reducibility::Reducible, Vec2{1.0, 0.0}};
    }
    if (anchor->complex_pair) {
        return {Reducibility::Irreducible, std::nullopt};
    }

    bool saw_inconclusive = false;
    for (int c = 0; c < anchor->count; ++c) {
        const Vec2 v = anchor->dirs[c]; // unit
        bool all_eigen = true;
        bool near_tolerance = false;
        for (const Matrix2& m : set) {
            const Vec2 w = m.apply(v);
            const double wl = length(w);
            if (wl == 0.0) continue; // eigenvector with eigenvalue 0
            const double sin_angle = std::abs(cross(w, v)) / wl;
            if (sin_angle < direction_tolerance) continue;
            if (sin_angle < 10.0 * direction_tolerance) {
                near_tolerance = true;
                continue;
            }
            all_eigen = false;
            break;
        }
        if (all_eigen && !near_tolerance) {
            return {Reducibility::Reducible, v};
        }
        if (all_eigen && near_tolerance) saw_inconclusive = true;
    }
    return {saw_inconclusive ? Reducibility::Inconclusive : Reducibility::Irreducible,
            std::nullopt};
}

} // namespace barnorm
