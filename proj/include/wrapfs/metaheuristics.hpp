#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "wrapfs/data.hpp"

namespace wrapfs {

/// Point in the unit hypercube [0, 1]^d.
struct Position {
    std::vector<double> coords;

    std::size_t size() const noexcept { return coords.size(); }
    bool operator==(const Position&) const = default;
};

using CostFunction = std::function<double(const Position&)>;

/// Optional preference between two positions of exactly equal cost; returns
/// true when `candidate` should replace `incumbent` as the best-so-far.
using TieBreak = std::function<bool(const Position& candidate, const Position& incumbent)>;

struct HistoryPoint {
    std::size_t iteration = 0;
    double best_cost = 0.0;

    bool operator==(const HistoryPoint&) const = default;
};

struct OptimizeResult {
    Position best_position;
    FeatureMask best_mask;
    double best_cost = 0.0;
    std::vector<HistoryPoint> history;  // iteration 0 is the initial population
    std::size_t evaluations = 0;

    bool operator==(const OptimizeResult&) const = default;
};

/// Bit j is set when coordinate j is at least 0.5.
FeatureMask binarize_position(const Position& p);

// ---------------------------------------------------------------------------
// Imperialist competitive algorithm

struct IcaConfig {
    std::size_t n_pop = 10;
    std::size_t n_imp = 5;
    std::size_t max_it = 30;
    double beta = 2.0;  // assimilation coefficient, in [1, 2]
    double zeta = 0.1;  // weight of the colonies' mean cost in an empire's total cost
    double phi = std::numbers::pi / 4.0;  // deviation angle half-range, radians
    double revolution_rate = 0.1;
    std::uint64_t seed = 0;

    /// Throws ConfigError.
    void validate() const;
};

struct Country {
    Position position;
    double cost = 0.0;
};

struct Empire {
    Country imperialist;
    std::vector<Country> colonies;
    double total_cost = 0.0;
};

/// Called after every iteration with the surviving empires.
using IcaObserver = std::function<void(std::size_t iteration, const std::vector<Empire>& empires)>;

/// Normalized imperialist power: Y_k = max(c) - c_k, P_k = |Y_k / sum Y|; uniform when all costs are equal.
std::vector<double> ica_imperialist_power(std::span<const double> costs);

/// c_k + zeta * mean(colony costs); c_k alone when there are no colonies.
double ica_total_cost(double imperialist_cost, std::span<const double> colony_costs, double zeta);

/// Possession probability from normalized total costs; uniform when all are equal.
std::vector<double> ica_possession_probability(std::span<const double> total_costs);

/// Initial colony counts round(P_k * n_col); the rounding residue goes to the
/// strongest (lowest-cost, index 0) imperialist.
std::vector<std::size_t> ica_colony_allocation(std::span<const double> powers, std::size_t n_col);

OptimizeResult ica_optimize(const CostFunction& cost, std::size_t dim, const IcaConfig& cfg,
                            const TieBreak& tie_break = {}, const IcaObserver& observer = {});

// ---------------------------------------------------------------------------
// Bat algorithm

struct BaConfig {
    std::size_t n_pop = 10;
    std::size_t max_it = 30;
    double loudness_init = 0.9;
    double pulse_rate_init = 0.6;
    double f_min = 0.0;
    double f_max = 2.0;
    double alpha = 0.9;  // loudness decay
    double gamma = 0.9;  // pulse-rate growth
    /// true: v' = v + (x* - x) f, pulling bats toward the best solution.
    /// false: v' = v + (x - x*) f, the sign as commonly printed, which pushes
    /// bats away from the best and stalls on bounded domains.
    bool toward_best = true;
    std::uint64_t seed = 0;

    /// Throws ConfigError.
    void validate() const;
};

struct Bat {
    Position position;
    std::vector<double> velocity;
    double cost = 0.0;
    double loudness = 0.0;
    double pulse_rate = 0.0;
};

/// Called after every iteration with the current bats.
using BaObserver = std::function<void(std::size_t iteration, const std::vector<Bat>& bats)>;

struct BatMove {
    std::vector<double> velocity;
    Position position;
};

/// Frequency f = f_min + (f_max - f_min) * beta_draw, v' = v + (x* - x) f
/// (or v + (x - x*) f when `toward_best` is false), x' = clamp(x + v', 0, 1).
BatMove ba_move(const Position& position, std::span<const double> velocity, const Position& best, double f_min,
                double f_max, double beta_draw, bool toward_best = true);

OptimizeResult ba_optimize(const CostFunction& cost, std::size_t dim, const BaConfig& cfg,
                           const TieBreak& tie_break = {}, const BaObserver& observer = {});

}  // namespace wrapfs
