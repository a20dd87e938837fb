#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "toda/geometry.hpp"

namespace toda {

/// One line of a verification report.
struct CheckEntry {
    std::string relation;
    int n = 0;
    bool pass = false;
    std::vector<std::string> residual;   // serialized nonzero residual components, empty on pass
    std::string note;
};

nlohmann::json to_json(const CheckEntry& e);
nlohmann::json to_json(const std::vector<CheckEntry>& entries);
std::string render_text(const std::vector<CheckEntry>& entries);
bool all_pass(const std::vector<CheckEntry>& entries);

template <class S>
std::vector<std::string> residual_strings(const std::vector<S>& values) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!values[i].is_zero())
            out.push_back("[" + std::to_string(i + 1) + "] " + values[i].to_string());
    return out;
}

template <class S>
std::vector<std::string> residual_strings(const Matrix<S>& m) {
    std::vector<std::string> out;
    for (int a = 0; a < m.rows(); ++a)
        for (int b = 0; b < m.cols(); ++b)
            if (!m(a, b).is_zero())
                out.push_back("[" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "] " + m(a, b).to_string());
    return out;
}

inline std::vector<std::string> residual_strings(const VectorField& v) { return residual_strings(v.components()); }

template <class Residual>
CheckEntry make_check(std::string relation, int n, const Residual& residual, std::string note = {}) {
    CheckEntry e{std::move(relation), n, false, residual_strings(residual), std::move(note)};
    e.pass = e.residual.empty();
    return e;
}

} // namespace toda
