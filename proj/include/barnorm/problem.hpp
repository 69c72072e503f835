#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "barnorm/matrix2.hpp"

namespace barnorm {

/// A problem file:
///   { "dimension": 2,
///     "label": "example-1",                  (optional)
///     "matrices": [[1,1,0,1], [1,0,1,1]] }   (row-major 2x2 entries)
struct Problem {
    std::string label;
    std::vector<Matrix2> matrices;

    MatrixSet matrix_set() const { return MatrixSet(matrices); }
};

inline Problem parse_problem(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("problem file: ") + e.what());
    }
    if (!j.is_object()) {
        throw std::invalid_argument("problem file: top level must be an object");
    }
    if (!j.contains("dimension") || !j["dimension"].is_number_integer() ||
        j["dimension"].get<int>() != 2) {
        throw std::invalid_argument("problem file: dimension must be 2");
    }
    if (!j.contains("matrices") || !j["matrices"].is_array() || j["matrices"].empty()) {
        throw std::invalid_argument("problem file: need a non-empty matrices array");
    }

    Problem p;
    if (j.contains("label")) {
        if (!j["label"].is_string()) {
            throw std::invalid_argument("problem file: label must be a string");
        }
        p.label = j["label"].get<std::string>();
    }
    for (const auto& entry : j["matrices"]) {
        if (!entry.is_array() || entry.size() != 4) {
            throw std::invalid_argument(
                "problem file: each matrix is 4 row-major numbers [a11,a12,a21,a22]");
        }
        Matrix2 m;
        double* slots[4] = {&m.a11, &m.a12, &m.a21, &m.a22};
        for (int i = 0; i < 4; ++i) {
            if (!entry[i].is_number()) {
                throw std::invalid_argument("problem file: matrix entries must be numbers");
            }
            *slots[i] = entry[i].get<double>();
        }
        if (!m.is_finite()) {
            throw std::invalid_argument("problem file: matrix entries must be finite");
        }
        p.matrices.push_back(m);
    }
    return p;
}

inline Problem load_problem(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw std::invalid_argument("problem file: cannot open " + file.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str());
}

} // namespace barnorm
