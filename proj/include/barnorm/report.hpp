#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "barnorm/oracle.hpp"
#include "barnorm/relaxation.hpp"

namespace barnorm {

// Machine-readable run and bounds reports.  write_* emit canonical bytes:
// keys in a fixed (alphabetical) order and every double printed with 17
// significant digits, so parse -> write round-trips byte-identically and
// identical runs produce identical files.

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

} // namespace detail

struct ReportFile {
    std::string label;
    // config echo
    std::string averaging; // "arith" | "geom" | "harm"
    bool convexify = true;
    std::string lookup; // "interp" | "nearest"
    int max_iterations = 0;
    int node_count = 0;
    bool relative_gap = false;
    double tolerance = 0.0;
    // outcome
    std::string irreducibility; // "irreducible" | "reducible" | "inconclusive"
    std::string regime;         // "supported" | "unsupported"
    std::vector<IterationStep> steps;
    double rho_lower = 0.0;
    double rho_upper = 0.0;
    bool converged = false;
    double residual = 0.0;
};

inline const char* averaging_name(Averaging a) {
    switch (a) {
    case Averaging::Arithmetic: return "arith";
    case Averaging::Geometric: return "geom";
    case Averaging::Harmonic: return "harm";
    }
    return "arith";
}

inline const char* lookup_name(LookupMode m) {
    return m == LookupMode::NearestNode ? "nearest" : "interp";
}

inline const char* reducibility_name(Reducibility r) {
    switch (r) {
    case Reducibility::Irreducible: return "irreducible";
    case Reducibility::Reducible: return "reducible";
    case Reducibility::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

inline ReportFile make_report(const std::string& label, const RunConfig& config,
                              const IterationReport& report, double residual) {
    ReportFile rf;
    rf.label = label;
    rf.averaging = averaging_name(config.averaging);
    rf.convexify = config.convexify;
    rf.lookup = lookup_name(config.lookup);
    rf.max_iterations = config.max_iterations;
    rf.node_count = config.node_count;
    rf.relative_gap = config.relative_gap;
    rf.tolerance = config.tolerance;
    rf.irreducibility = reducibility_name(report.irreducibility.kind);
    rf.regime = report.unsupported_regime ? "unsupported" : "supported";
    rf.steps = report.steps;
    rf.rho_lower = report.rho_lower();
    rf.rho_upper = report.rho_upper();
    rf.converged = report.converged;
    rf.residual = residual;
    return rf;
}

inline std::string write_report(const ReportFile& r) {
    std::string out;
    out.reserve(256 + r.steps.size() * 96);
    const char* b = "  ";
    out += "{\n";
    out += std::string(b) + "\"config\": {";
    out += "\"averaging\": \"" + r.averaging + "\", ";
    out += std::string("\"convexify\": ") + (r.convexify ? "true" : "false") + ", ";
    out += "\"lookup\": \"" + r.lookup + "\", ";
    out += "\"max_iterations\": " + std::to_string(r.max_iterations) + ", ";
    out += "\"node_count\": " + std::to_string(r.node_count) + ", ";
    out += std::string("\"relative_gap\": ") + (r.relative_gap ? "true" : "false") + ", ";
    out += "\"tolerance\": " + fmt_double(r.tolerance) + "},\n";
    out += std::string(b) + "\"converged\": " + (r.converged ? "true" : "false") + ",\n";
    out += std::string(b) + "\"irreducibility\": \"" + r.irreducibility + "\",\n";
    out += std::string(b) + "\"label\": \"" + detail::json_escape(r.label) + "\",\n";
    out += std::string(b) + "\"regime\": \"" + r.regime + "\",\n";
    out += std::string(b) + "\"residual\": " + fmt_double(r.residual) + ",\n";
    out += std::string(b) + "\"rho_lower\": " + fmt_double(r.rho_lower) + ",\n";
    out += std::string(b) + "\"rho_upper\": " + fmt_double(r.rho_upper) + ",\n";
    out += std::string(b) + "\"steps\": [\n";
    for (std::size_t i = 0; i < r.steps.size(); ++i) {
        const IterationStep& s = r.steps[i];
        out += std::string(b) + b + "{\"gamma\": " + fmt_double(s.gamma);
        out += ", \"n\": " + std::to_string(s.n);
        out += ", \"rho_minus\": " + fmt_double(s.rho_minus);
        out += ", \"rho_plus\": " + fmt_double(s.rho_plus) + "}";
        out += i + 1 < r.steps.size() ? ",\n" : "\n";
    }
    out += std::string(b) + "]\n";
    out += "}\n";
    return out;
}

inline ReportFile parse_report(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("report file: ") + e.what());
    }
    ReportFile r;
    try {
        const auto& c = j.at("config");
        r.averaging = c.at("averaging").get<std::string>();
        r.convexify = c.at("convexify").get<bool>();
        r.lookup = c.at("lookup").get<std::string>();
        r.max_iterations = c.at("max_iterations").get<int>();
        r.node_count = c.at("node_count").get<int>();
        r.relative_gap = c.at("relative_gap").get<bool>();
        r.tolerance = c.at("tolerance").get<double>();
        r.converged = j.at("converged").get<bool>();
        r.irreducibility = j.at("irreducibility").get<std::string>();
        r.label = j.at("label").get<std::string>();
        r.regime = j.at("regime").get<std::string>();
        r.residual = j.at("residual").get<double>();
        r.rho_lower = j.at("rho_lower").get<double>();
        r.rho_upper = j.at("rho_upper").get<double>();
        for (const auto& s : j.at("steps")) {
            r.steps.push_back({s.at("n").get<int>(), s.at("rho_minus").get<double>(),
                               s.at("rho_plus").get<double>(), s.at("gamma").get<double>()});
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("report file: ") + e.what());
    }
    return r;
}

inline std::string write_bounds_report(const std::string& label, const BoundsBracket& b) {
    std::string out;
    out += "{\n";
    out += "  \"depth\": " + std::to_string(b.depth) + ",\n";
    out += "  \"label\": \"" + detail::json_escape(label) + "\",\n";
    out += "  \"lower\": " + fmt_double(b.lower) + ",\n";
    out += "  \"products_evaluated\": " + std::to_string(b.products_evaluated) + ",\n";
    out += std::string("  \"sampled\": ") + (b.sampled ? "true" : "false") + ",\n";
    out += "  \"seed\": " + std::to_string(b.seed) + ",\n";
    out += "  \"trace_estimate\": " + fmt_double(b.trace_estimate) + ",\n";
    out += "  \"upper\": " + (b.upper ? fmt_double(*b.upper) : std::string("null")) + "\n";
    out += "}\n";
    return out;
}

} // namespace barnorm
