#include "wrapfs/benchmarks.hpp"

#include <string>

#include "wrapfs/error.hpp"

namespace wrapfs::benchmarks {

CostFunction by_name(std::string_view name) {
    if (name == "sphere") return sphere;
    if (name == "onemax") return onemax;
    throw ConfigError("unknown benchmark function '" + std::string(name) + "' (expected sphere or onemax)");
}

}  // namespace wrapfs::benchmarks
