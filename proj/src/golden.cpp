#include "toda/golden.hpp"

#include <cstdlib>
#include <fstream>

#include "toda/serialize.hpp"

#ifndef TODA_DEFAULT_GOLDEN_DIR
#define TODA_DEFAULT_GOLDEN_DIR "data/golden"
#endif

namespace toda {

std::filesystem::path golden_dir() {
    if (const char* env = std::getenv("TODA_GOLDEN_DIR"); env && *env)
        return env;
    return TODA_DEFAULT_GOLDEN_DIR;
}

nlohmann::json load_golden(const std::string& name) {
    const auto path = golden_dir() / (name + ".json");
    std::ifstream in(path);
    if (!in)
        throw DomainError("cannot open golden file " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError("malformed golden file " + path.string() + ": " + e.what());
    }
}

CheckEntry compare_field_with_golden(const VectorField& eta, const nlohmann::json& golden, const std::string& label) {
    const int n = eta.n();
    if (golden.at("n").get<int>() != n)
        throw DomainError(label + ": golden lattice size differs");
    const auto& comps = golden.at("components");
    if (comps.size() != static_cast<std::size_t>(2 * n))
        throw DomainError(label + ": golden field needs 2n components");
    std::vector<RationalExpr> diff;
    for (int a = 0; a < 2 * n; ++a)
        diff.push_back(RationalExpr(eta[a]) - parse_rational(n, comps[static_cast<std::size_t>(a)].get<std::string>()));
    return make_check(label + " matches golden", n, diff);
}

} // namespace toda
