#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "toda/errors.hpp"

namespace toda {

/// Point in extended phase space: positions x^1..x^n, then momenta
/// x^(n+1)..x^(2n), plus a time stamp.
struct PhaseState {
    std::vector<double> x;
    double time = 0.0;

    PhaseState() = default;
    PhaseState(std::vector<double> coords, double t) : x(std::move(coords)), time(t) {
        if (x.empty() || x.size() % 2 != 0)
            throw DomainError("phase state needs 2n coordinates");
    }

    int n() const { return static_cast<int>(x.size() / 2); }
    std::span<const double> positions() const { return {x.data(), x.size() / 2}; }
    std::span<const double> momenta() const { return {x.data() + x.size() / 2, x.size() / 2}; }
};

} // namespace toda
