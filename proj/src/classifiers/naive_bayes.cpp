#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "models.hpp"
#include "wrapfs/error.hpp"

namespace wrapfs::detail {

Label NaiveBayesModel::predict_row(std::span<const double> x) const {
    double score[2];
    for (int c = 0; c < 2; ++c) {
        if (params_.priors[c] == 0.0) {
            score[c] = -std::numeric_limits<double>::infinity();
            continue;
        }
        double s = std::log(params_.priors[c]);
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double var = params_.variances[c][j];
            const double diff = x[j] - params_.means[c][j];
            s -= 0.5 * (std::log(2.0 * std::numbers::pi * var) + diff * diff / var);
        }
        score[c] = s;
    }
    return score[1] >= score[0] ? Label::positive : Label::negative;
}

ModelPtr fit_naive_bayes(const ClassifierConfig& cfg, const Dataset& train) {
    const double smoothing = cfg.get("var_smoothing");
    if (smoothing < 0.0) throw ConfigError("nb: var_smoothing must be non-negative");
    const auto& x = train.features();
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();

    // Floor relative to the largest per-feature variance of the whole training set.
    double max_var = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += x(i, j);
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) var += (x(i, j) - mean) * (x(i, j) - mean);
        max_var = std::max(max_var, var / static_cast<double>(n));
    }
    double floor = smoothing * max_var;
    if (floor <= 0.0) floor = std::max(smoothing, std::numeric_limits<double>::min());

    GaussianNbParams p;
    for (int c = 0; c < 2; ++c) {
        const Label label = static_cast<Label>(c);
        const std::size_t nc = train.count(label);
        p.priors[c] = static_cast<double>(nc) / static_cast<double>(n);
        p.means[c].assign(d, 0.0);
        p.variances[c].assign(d, floor);
        if (nc == 0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            if (train.labels()[i] != label) continue;
            for (std::size_t j = 0; j < d; ++j) p.means[c][j] += x(i, j);
        }
        for (auto& m : p.means[c]) m /= static_cast<double>(nc);
        std::vector<double> var(d, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            if (train.labels()[i] != label) continue;
            for (std::size_t j = 0; j < d; ++j) var[j] += (x(i, j) - p.means[c][j]) * (x(i, j) - p.means[c][j]);
        }
        for (std::size_t j = 0; j < d; ++j) p.variances[c][j] = std::max(var[j] / static_cast<double>(nc), floor);
    }
    return std::make_shared<NaiveBayesModel>(std::move(p));
}

}  // namespace wrapfs::detail
