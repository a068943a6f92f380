#pragma once

#include <string_view>

#include "wrapfs/metaheuristics.hpp"

namespace wrapfs::benchmarks {

/// Sum of squares over [0, 1]^d; optimum 0 at the origin.
inline double sphere(const Position& p) {
    double s = 0.0;
    for (double x : p.coords) s += x * x;
    return s;
}

/// Number of unset bits after binarization; optimum 0 at the all-ones mask.
inline double onemax(const Position& p) {
    const auto mask = binarize_position(p);
    return static_cast<double>(mask.size() - mask.count());
}

/// "sphere" or "onemax"; throws ConfigError otherwise.
CostFunction by_name(std::string_view name);

}  // namespace wrapfs::benchmarks
