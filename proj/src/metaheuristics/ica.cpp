#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "search_state.hpp"
#include "wrapfs/error.hpp"

namespace wrapfs {

namespace {

/// |v_k / sum v| with v_k = max - x_k; uniform when every entry is equal.
std::vector<double> normalized_share(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("ICA: empty cost list");
    const double hi = *std::ranges::max_element(values);
    std::vector<double> share(values.size());
    double sum = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        share[k] = hi - values[k];
        sum += share[k];
    }
    if (sum == 0.0) {
        std::ranges::fill(share, 1.0 / static_cast<double>(values.size()));
        return share;
    }
    for (auto& s : share) s = std::abs(s / sum);
    return share;
}

void update_total_cost(Empire& e, double zeta) {
    std::vector<double> costs;
    costs.reserve(e.colonies.size());
    for (const auto& c : e.colonies) costs.push_back(c.cost);
    e.total_cost = ica_total_cost(e.imperialist.cost, costs, zeta);
}

/// Swaps in the cheapest colony when it beats the imperialist.
void exchange(Empire& e) {
    if (e.colonies.empty()) return;
    auto best = std::ranges::min_element(e.colonies, {}, &Country::cost);
    if (best->cost < e.imperialist.cost) std::swap(*best, e.imperialist);
}

}  // namespace

void IcaConfig::validate() const {
    if (n_pop < 2) throw ConfigError("ica: n_pop must be at least 2");
    if (n_imp < 1 || n_imp >= n_pop) throw ConfigError("ica: n_imp must satisfy 1 <= n_imp < n_pop");
    if (!(beta >= 1.0 && beta <= 2.0)) throw ConfigError("ica: beta must lie in [1, 2]");
    if (!(zeta > 0.0 && zeta < 1.0)) throw ConfigError("ica: zeta must lie in (0, 1)");
    if (!(phi >= 0.0 && phi < std::numbers::pi / 2.0)) throw ConfigError("ica: phi must lie in [0, pi/2)");
    if (!(revolution_rate >= 0.0 && revolution_rate <= 1.0)) {
        throw ConfigError("ica: revolution_rate must lie in [0, 1]");
    }
}

std::vector<double> ica_imperialist_power(std::span<const double> costs) { return normalized_share(costs); }

double ica_total_cost(double imperialist_cost, std::span<const double> colony_costs, double zeta) {
    if (colony_costs.empty()) return imperialist_cost;
    const double mean =
        std::accumulate(colony_costs.begin(), colony_costs.end(), 0.0) / static_cast<double>(colony_costs.size());
    return imperialist_cost + zeta * mean;
}

std::vector<double> ica_possession_probability(std::span<const double> total_costs) {
    return normalized_share(total_costs);
}

std::vector<std::size_t> ica_colony_allocation(std::span<const double> powers, std::size_t n_col) {
    std::vector<std::size_t> counts(powers.size());
    std::size_t sum = 0;
    for (std::size_t k = 0; k < powers.size(); ++k) {
        counts[k] = static_cast<std::size_t>(std::llround(powers[k] * static_cast<double>(n_col)));
        sum += counts[k];
    }
    if (sum < n_col) {
        counts[0] += n_col - sum;
    } else {
        // Over-allocation is taken back starting from the strongest imperialist.
        std::size_t excess = sum - n_col;
        for (std::size_t k = 0; excess > 0 && k < counts.size(); ++k) {
            const auto take = std::min(excess, counts[k]);
            counts[k] -= take;
            excess -= take;
        }
    }
    return counts;
}

OptimizeResult ica_optimize(const CostFunction& cost, std::size_t dim, const IcaConfig& cfg,
                            const TieBreak& tie_break, const IcaObserver& observer) {
    cfg.validate();
    if (dim == 0) throw ConfigError("ica: dimension must be at least 1");
    Rng rng(cfg.seed);
    detail::SearchState state(cost, tie_break);

    std::vector<Country> countries(cfg.n_pop);
    for (auto& c : countries) {
        c.position = detail::random_position(dim, rng);
        c.cost = state.evaluate(c.position);
    }
    std::ranges::stable_sort(countries, {}, &Country::cost);
    state.record(0);

    std::vector<Empire> empires(cfg.n_imp);
    std::vector<double> imp_costs;
    for (std::size_t k = 0; k < cfg.n_imp; ++k) {
        empires[k].imperialist = countries[k];
        imp_costs.push_back(countries[k].cost);
    }
    std::vector<Country> colonies(countries.begin() + static_cast<std::ptrdiff_t>(cfg.n_imp), countries.end());
    rng.shuffle(std::span(colonies));
    const auto counts = ica_colony_allocation(ica_imperialist_power(imp_costs), colonies.size());
    for (std::size_t k = 0, next = 0; k < empires.size(); ++k) {
        for (std::size_t c = 0; c < counts[k]; ++c) empires[k].colonies.push_back(std::move(colonies[next++]));
    }
    for (auto& e : empires) update_total_cost(e, cfg.zeta);

    const double jitter_scale = 1.0 / std::sqrt(static_cast<double>(dim));
    std::vector<double> step(dim);
    for (std::size_t it = 1; it <= cfg.max_it; ++it) {
        for (auto& empire : empires) {
            const auto& target = empire.imperialist.position.coords;
            for (auto& colony : empire.colonies) {
                auto& x = colony.position.coords;
                // Assimilation: per-coordinate U[0, beta] fraction of the gap,
                // then a deviation of tan(theta) * |step| / sqrt(d) per coordinate.
                double norm2 = 0.0;
                for (std::size_t j = 0; j < dim; ++j) {
                    step[j] = cfg.beta * rng.uniform() * (target[j] - x[j]);
                    norm2 += step[j] * step[j];
                }
                const double norm = std::sqrt(norm2);
                for (std::size_t j = 0; j < dim; ++j) {
                    const double theta = rng.uniform(-cfg.phi, cfg.phi);
                    x[j] = std::clamp(x[j] + step[j] + std::tan(theta) * norm * jitter_scale, 0.0, 1.0);
                }
                if (rng.uniform() < cfg.revolution_rate) colony.position = detail::random_position(dim, rng);
                colony.cost = state.evaluate(colony.position);
            }
            exchange(empire);
            update_total_cost(empire, cfg.zeta);
        }

        if (empires.size() > 1) {
            // The weakest empire loses its weakest colony to an empire drawn by possession probability.
            std::vector<double> tcs;
            for (const auto& e : empires) tcs.push_back(e.total_cost);
            const auto weakest = static_cast<std::size_t>(std::ranges::max_element(tcs) - tcs.begin());
            if (!empires[weakest].colonies.empty()) {
                auto& losers = empires[weakest].colonies;
                auto victim = std::ranges::max_element(losers, {}, &Country::cost);
                Country moved = std::move(*victim);
                losers.erase(victim);
                const auto probs = ica_possession_probability(tcs);
                std::size_t winner = 0;
                double best_score = -std::numeric_limits<double>::infinity();
                for (std::size_t k = 0; k < probs.size(); ++k) {
                    const double score = probs[k] - rng.uniform();
                    if (score > best_score) {
                        best_score = score;
                        winner = k;
                    }
                }
                empires[winner].colonies.push_back(std::move(moved));
                exchange(empires[winner]);
                update_total_cost(empires[weakest], cfg.zeta);
                update_total_cost(empires[winner], cfg.zeta);
            }

            // Empires left without colonies are absorbed by the lowest-total-cost empire.
            for (std::size_t k = 0; k < empires.size() && empires.size() > 1;) {
                if (!empires[k].colonies.empty()) {
                    ++k;
                    continue;
                }
                Country fallen = std::move(empires[k].imperialist);
                empires.erase(empires.begin() + static_cast<std::ptrdiff_t>(k));
                auto strongest = std::ranges::min_element(empires, {}, &Empire::total_cost);
                strongest->colonies.push_back(std::move(fallen));
                exchange(*strongest);
                update_total_cost(*strongest, cfg.zeta);
                k = 0;
            }
        }

        state.record(it);
        if (observer) observer(it, empires);
    }
    return std::move(state).finish();
}

}  // namespace wrapfs
