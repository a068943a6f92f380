#pragma once

#include <limits>

#include "wrapfs/metaheuristics.hpp"
#include "wrapfs/random.hpp"

namespace wrapfs::detail {

/// Counts evaluations and keeps the best position ever seen.
class SearchState {
public:
    SearchState(const CostFunction& cost, const TieBreak& tie_break) : cost_(cost), tie_break_(tie_break) {}

    double evaluate(const Position& p) {
        const double c = cost_(p);
        ++evaluations_;
        if (best_.coords.empty() || c < best_cost_ || (c == best_cost_ && tie_break_ && tie_break_(p, best_))) {
            best_cost_ = c;
            best_ = p;
        }
        return c;
    }

    void record(std::size_t iteration) { history_.push_back({iteration, best_cost_}); }

    const Position& best() const noexcept { return best_; }
    double best_cost() const noexcept { return best_cost_; }

    OptimizeResult finish() && {
        OptimizeResult r;
        r.best_mask = binarize_position(best_);
        r.best_position = std::move(best_);
        r.best_cost = best_cost_;
        r.history = std::move(history_);
        r.evaluations = evaluations_;
        return r;
    }

private:
    const CostFunction& cost_;
    const TieBreak& tie_break_;
    Position best_;
    double best_cost_ = std::numeric_limits<double>::infinity();
    std::vector<HistoryPoint> history_;
    std::size_t evaluations_ = 0;
};

inline Position random_position(std::size_t dim, Rng& rng) {
    Position p{std::vector<double>(dim)};
    for (auto& x : p.coords) x = rng.uniform();
    return p;
}

}  // namespace wrapfs::detail
