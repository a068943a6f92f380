#include "wrapfs/metaheuristics.hpp"

namespace wrapfs {

FeatureMask binarize_position(const Position& p) {
    FeatureMask mask(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) mask.set(j, p.coords[j] >= 0.5);
    return mask;
}

}  // namespace wrapfs
