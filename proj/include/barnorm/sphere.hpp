#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "barnorm/matrix2.hpp"
#include "barnorm/polar_norm.hpp"
#include "barnorm/report.hpp"

namespace barnorm {

/// Unit-sphere geometry of a computed norm: per grid node the gauge R, the
/// sphere radius 1/R, and for each matrix the radius rho / (H_i R(Phi_i)) of
/// the level set ||A_i x|| = rho.
struct SphereTable {
    int node_count = 0;
    std::vector<double> phi;
    std::vector<double> gauge;
    std::vector<double> inverse_gauge;
    std::vector<std::vector<double>> level;
};

inline SphereTable build_sphere_table(const PolarNorm& norm, const MatrixSet& set,
                                      double rho, LookupMode mode = LookupMode::Interpolate) {
    const int n = norm.node_count();
    const TransformTables tables = build_transform_tables(set, n);
    SphereTable t;
    t.node_count = n;
    t.phi.resize(n + 1);
    t.gauge.resize(n + 1);
    t.inverse_gauge.resize(n + 1);
    t.level.assign(set.size(), std::vector<double>(n + 1));
    for (int k = 0; k <= n; ++k) {
        t.phi[k] = norm.angle(k);
        t.gauge[k] = norm[k];
        t.inverse_gauge[k] = 1.0 / norm[k];
    }
    for (std::size_t i = 0; i < set.size(); ++i) {
        const auto& h = tables.stretch(i);
        const auto& ph = tables.image_angle(i);
        const auto& nn = tables.nearest_node(i);
        for (int k = 0; k <= n; ++k) {
            const double rv = mode == LookupMode::NearestNode
                                  ? norm[nn[k]]
                                  : norm.lookup(ph[k], LookupMode::Interpolate);
            const double denom = h[k] * rv;
            t.level[i][k] = denom > 0.0 ? rho / denom
                                        : std::numeric_limits<double>::infinity();
        }
    }
    return t;
}

/// Header `phi,R,invR,level_1..level_r`, one row per grid node.
inline std::string sphere_csv(const SphereTable& t) {
    std::string out = "phi,R,invR";
    for (std::size_t i = 0; i < t.level.size(); ++i) {
        out += ",level_" + std::to_string(i + 1);
    }
    out += "\n";
    for (int k = 0; k <= t.node_count; ++k) {
        out += fmt_double(t.phi[k]);
        out += ",";
        out += fmt_double(t.gauge[k]);
        out += ",";
        out += fmt_double(t.inverse_gauge[k]);
        for (const auto& lv : t.level) {
            out += ",";
            out += fmt_double(lv[k]);
        }
        out += "\n";
    }
    return out;
}

/// Sign changes of a - b over one cyclic sweep of the grid (the duplicated
/// endpoint node is dropped, exact zeros are skipped).  For two closed
/// radial curves this counts their intersection points.
inline int count_sign_changes(std::span<const double> a, std::span<const double> b) {
    const int n = static_cast<int>(a.size()) - 1;
    int changes = 0;
    int prev = 0, first = 0;
    for (int k = 0; k < n; ++k) {
        const double d = a[k] - b[k];
        const int s = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        if (prev == 0) first = s;
        prev = s;
    }
    if (prev != 0 && first != 0 && prev != first) ++changes; // wrap-around
    return changes;
}

namespace detail {

inline std::string svg_coord(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline void svg_polyline(std::string& out, std::span<const double> radius,
                         std::span<const double> phi, const char* dash, double width) {
    const int n = static_cast<int>(radius.size()) - 1;
    std::string first_pt;
    out += "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"" +
           svg_coord(width) + "\"";
    if (dash[0] != '\0') {
        out += " stroke-dasharray=\"";
        out += dash;
        out += "\"";
    }
    out += " points=\"";
    for (int k = 0; k < n; ++k) {
        if (!std::isfinite(radius[k])) continue; // off-chart node
        // SVG y axis points down
        const std::string pt = svg_coord(radius[k] * std::cos(phi[k])) + "," +
                               svg_coord(-radius[k] * std::sin(phi[k]));
        if (first_pt.empty()) first_pt = pt;
        out += pt;
        out += " ";
    }
    out += first_pt; // close the curve on the exact first point
    out += "\"/>\n";
}

} // namespace detail

/// Standalone SVG: the unit sphere 1/R (thick) plus the level sets
/// ||A_i x|| = rho as dashed closed polylines, dotted coordinate axes,
/// square viewport with equal axes, and a legend.
inline std::string sphere_svg(const SphereTable& t) {
    double max_r = 0.0;
    for (double v : t.inverse_gauge) {
        if (std::isfinite(v)) max_r = std::max(max_r, v);
    }
    for (const auto& lv : t.level) {
        for (double v : lv) {
            if (std::isfinite(v)) max_r = std::max(max_r, v);
        }
    }
    const double m = std::ceil(std::max(max_r, 1.0));
    const double stroke = m / 240.0;
    const double font = m / 14.0;

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" viewBox=\"" +
           detail::svg_coord(-m) + " " + detail::svg_coord(-m) + " " +
           detail::svg_coord(2 * m) + " " + detail::svg_coord(2 * m) + "\">\n";
    out += "  <rect x=\"" + detail::svg_coord(-m) + "\" y=\"" + detail::svg_coord(-m) +
           "\" width=\"" + detail::svg_coord(2 * m) + "\" height=\"" +
           detail::svg_coord(2 * m) + "\" fill=\"white\"/>\n";
    // dotted coordinate axes
    const std::string dot = detail::svg_coord(stroke) + " " + detail::svg_coord(4 * stroke);
    out += "  <line x1=\"" + detail::svg_coord(-m) + "\" y1=\"0\" x2=\"" +
           detail::svg_coord(m) + "\" y2=\"0\" stroke=\"black\" stroke-width=\"" +
           detail::svg_coord(stroke) + "\" stroke-dasharray=\"" + dot + "\"/>\n";
    out += "  <line x1=\"0\" y1=\"" + detail::svg_coord(-m) + "\" x2=\"0\" y2=\"" +
           detail::svg_coord(m) + "\" stroke=\"black\" stroke-width=\"" +
           detail::svg_coord(stroke) + "\" stroke-dasharray=\"" + dot + "\"/>\n";

    static const char* dash_cycle[4] = {"6 3", "7 2 1 2", "2 2", "9 2 2 2 2 2"};
    std::vector<std::string> dashes;
    for (std::size_t i = 0; i < t.level.size(); ++i) {
        std::string d = dash_cycle[i % 4];
        if (i == 2) d = ""; // keep one solid style in the rotation
        double scale = stroke; // dash lengths in viewport units
        std::string scaled;
        if (!d.empty()) {
            for (std::size_t p = 0; p < d.size(); ++p) {
                if (d[p] == ' ') {
                    scaled += " ";
                } else {
                    scaled += detail::svg_coord((d[p] - '0') * 2 * scale);
                }
            }
        }
        dashes.push_back(scaled);
        detail::svg_polyline(out, t.level[i], t.phi, scaled.c_str(), stroke);
    }
    detail::svg_polyline(out, t.inverse_gauge, t.phi, "", 2.5 * stroke);

    // legend, top right
    const double lx = 0.38 * m;
    double ly = -0.92 * m;
    for (std::size_t i = 0; i < t.level.size(); ++i) {
        out += "  <line x1=\"" + detail::svg_coord(lx) + "\" y1=\"" + detail::svg_coord(ly) +
               "\" x2=\"" + detail::svg_coord(lx + 0.14 * m) + "\" y2=\"" +
               detail::svg_coord(ly) + "\" stroke=\"black\" stroke-width=\"" +
               detail::svg_coord(stroke) + "\"";
        if (!dashes[i].empty()) out += " stroke-dasharray=\"" + dashes[i] + "\"";
        out += "/>\n";
        out += "  <text x=\"" + detail::svg_coord(lx + 0.17 * m) + "\" y=\"" +
               detail::svg_coord(ly + 0.03 * m) + "\" font-size=\"" + detail::svg_coord(font) +
               "\" font-family=\"sans-serif\">|A" + std::to_string(i + 1) +
               " x|* = rho</text>\n";
        ly += 0.08 * m;
    }
    out += "  <line x1=\"" + detail::svg_coord(lx) + "\" y1=\"" + detail::svg_coord(ly) +
           "\" x2=\"" + detail::svg_coord(lx + 0.14 * m) + "\" y2=\"" + detail::svg_coord(ly) +
           "\" stroke=\"black\" stroke-width=\"" + detail::svg_coord(2.5 * stroke) + "\"/>\n";
    out += "  <text x=\"" + detail::svg_coord(lx + 0.17 * m) + "\" y=\"" +
           detail::svg_coord(ly + 0.03 * m) + "\" font-size=\"" + detail::svg_coord(font) +
           "\" font-family=\"sans-serif\">|x|* = 1</text>\n";
    out += "</svg>\n";
    return out;
}

} // namespace barnorm
