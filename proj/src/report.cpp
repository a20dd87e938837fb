#include "toda/report.hpp"

#include <algorithm>
#include <sstream>

namespace toda {

nlohmann::json to_json(const CheckEntry& e) {
    nlohmann::json j = {{"relation", e.relation}, {"n", e.n}, {"status", e.pass ? "pass" : "fail"}};
    if (!e.pass)
        j["residual"] = e.residual;
    if (!e.note.empty())
        j["note"] = e.note;
    return j;
}

nlohmann::json to_json(const std::vector<CheckEntry>& entries) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : entries)
        arr.push_back(to_json(e));
    return arr;
}

std::string render_text(const std::vector<CheckEntry>& entries) {
    std::ostringstream os;
    for (const auto& e : entries) {
        os << (e.pass ? "PASS " : "FAIL ") << "n=" << e.n << "  " << e.relation;
        if (!e.note.empty())
            os << "  (" << e.note << ")";
        os << '\n';
        for (const auto& r : e.residual)
            os << "     residual " << r << '\n';
    }
    return os.str();
}

bool all_pass(const std::vector<CheckEntry>& entries) {
    return std::all_of(entries.begin(), entries.end(), [](const CheckEntry& e) { return e.pass; });
}

} // namespace toda
