#include <algorithm>
#include <cmath>
#include <numeric>

#include "search_state.hpp"
#include "wrapfs/error.hpp"

namespace wrapfs {

void BaConfig::validate() const {
    if (n_pop < 1) throw ConfigError("ba: n_pop must be at least 1");
    if (!(f_min <= f_max)) throw ConfigError("ba: f_min must not exceed f_max");
    if (!(loudness_init > 0.0 && loudness_init <= 1.0)) throw ConfigError("ba: loudness must lie in (0, 1]");
    if (!(pulse_rate_init >= 0.0 && pulse_rate_init <= 1.0)) throw ConfigError("ba: pulse rate must lie in [0, 1]");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("ba: alpha must lie in (0, 1]");
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ConfigError("ba: gamma must be non-negative");
}

BatMove ba_move(const Position& position, std::span<const double> velocity, const Position& best, double f_min,
                double f_max, double beta_draw, bool toward_best) {
    const double f = f_min + (f_max - f_min) * beta_draw;
    const double sign = toward_best ? -1.0 : 1.0;
    BatMove m{std::vector<double>(velocity.begin(), velocity.end()), position};
    for (std::size_t j = 0; j < position.size(); ++j) {
        m.velocity[j] += sign * (position.coords[j] - best.coords[j]) * f;
        m.position.coords[j] = std::clamp(position.coords[j] + m.velocity[j], 0.0, 1.0);
    }
    return m;
}

OptimizeResult ba_optimize(const CostFunction& cost, std::size_t dim, const BaConfig& cfg,
                           const TieBreak& tie_break, const BaObserver& observer) {
    cfg.validate();
    if (dim == 0) throw ConfigError("ba: dimension must be at least 1");
    Rng rng(cfg.seed);
    detail::SearchState state(cost, tie_break);

    std::vector<Bat> bats(cfg.n_pop);
    for (auto& b : bats) {
        b.position = detail::random_position(dim, rng);
        b.velocity.assign(dim, 0.0);
        b.loudness = cfg.loudness_init;
        b.pulse_rate = cfg.pulse_rate_init;
        b.cost = state.evaluate(b.position);
    }
    state.record(0);

    for (std::size_t t = 1; t <= cfg.max_it; ++t) {
        double mean_loudness = 0.0;
        for (const auto& b : bats) mean_loudness += b.loudness;
        mean_loudness /= static_cast<double>(bats.size());

        for (auto& bat : bats) {
            // Snapshot: the global best may move during this bat's own evaluation.
            const Position leader = state.best();
            auto move = ba_move(bat.position, bat.velocity, leader, cfg.f_min, cfg.f_max, rng.uniform(), cfg.toward_best);
            bat.velocity = std::move(move.velocity);
            Position candidate = std::move(move.position);
            if (rng.uniform() > bat.pulse_rate) {
                // Local walk around the best solution scaled by the mean loudness.
                for (std::size_t j = 0; j < dim; ++j) {
                    candidate.coords[j] = std::clamp(leader.coords[j] + rng.uniform(-1.0, 1.0) * mean_loudness, 0.0, 1.0);
                }
            }
            const double c = state.evaluate(candidate);
            if (rng.uniform() < bat.loudness && c < bat.cost) {
                bat.position = std::move(candidate);
                bat.cost = c;
                bat.loudness *= cfg.alpha;
                bat.pulse_rate = cfg.pulse_rate_init * (1.0 - std::exp(-cfg.gamma * static_cast<double>(t)));
            }
        }
        state.record(t);
        if (observer) observer(t, bats);
    }
    return std::move(state).finish();
}

}  // namespace wrapfs
