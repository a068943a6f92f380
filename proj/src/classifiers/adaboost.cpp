#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "models.hpp"

namespace wrapfs::detail {

namespace {

/// Depth-1 stump: predicts `polarity` when x[feature] > threshold, -polarity otherwise.
struct Stump {
    std::size_t feature = 0;
    double threshold = 0.0;
    int polarity = 1;

    int predict(std::span<const double> x) const { return x[feature] > threshold ? polarity : -polarity; }
};

class AdaBoostModel final : public Model {
public:
    AdaBoostModel(std::vector<Stump> stumps, std::vector<double> alphas, int fallback)
        : stumps_(std::move(stumps)), alphas_(std::move(alphas)), fallback_(fallback) {}

    Label predict_row(std::span<const double> x) const override {
        double score = 0.0;
        for (std::size_t t = 0; t < stumps_.size(); ++t) score += alphas_[t] * stumps_[t].predict(x);
        if (stumps_.empty()) score = fallback_;
        return score >= 0.0 ? Label::positive : Label::negative;
    }

private:
    std::vector<Stump> stumps_;
    std::vector<double> alphas_;
    int fallback_;
};

/// Minimum weighted-error stump over every feature, threshold and polarity.
std::pair<Stump, double> best_stump(const Matrix& x, std::span<const int> y, std::span<const double> w,
                                    const std::vector<std::vector<std::size_t>>& order) {
    const std::size_t n = x.rows();
    double total_pos = 0.0;
    for (std::size_t i = 0; i < n; ++i) total_pos += y[i] > 0 ? w[i] : 0.0;
    const double total = std::accumulate(w.begin(), w.end(), 0.0);

    Stump best;
    double best_err = std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < x.cols(); ++f) {
        const auto& idx = order[f];
        // Threshold below the minimum: every sample is on the "> threshold" side.
        double left_pos = 0.0, left_w = 0.0;
        for (std::size_t k = 0; k <= n; ++k) {
            if (k == 0 || k == n || x(idx[k - 1], f) != x(idx[k], f)) {
                // Polarity +1: left predicts -1, right predicts +1.
                const double err_pos = left_pos + ((total - left_w) - (total_pos - left_pos));
                const double err_neg = total - err_pos;
                const double thr = k == 0   ? x(idx[0], f) - 1.0
                                   : k == n ? x(idx[n - 1], f)
                                            : 0.5 * (x(idx[k - 1], f) + x(idx[k], f));
                if (err_pos < best_err) {
                    best_err = err_pos;
                    best = {f, thr, 1};
                }
                if (err_neg < best_err) {
                    best_err = err_neg;
                    best = {f, thr, -1};
                }
            }
            if (k < n) {
                left_w += w[idx[k]];
                if (y[idx[k]] > 0) left_pos += w[idx[k]];
            }
        }
    }
    return {best, best_err / total};
}

}  // namespace

ModelPtr fit_adaboost(const ClassifierConfig& cfg, const Dataset& train) {
    const auto rounds = count_param(cfg, "n_rounds");
    const auto& x = train.features();
    const std::size_t n = x.rows();
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = train.labels()[i] == Label::positive ? 1 : -1;
    const int majority = 2 * train.count(Label::positive) >= n ? 1 : -1;

    std::vector<std::vector<std::size_t>> order(x.cols(), std::vector<std::size_t>(n));
    for (std::size_t f = 0; f < x.cols(); ++f) {
        std::iota(order[f].begin(), order[f].end(), 0);
        std::ranges::stable_sort(order[f], {}, [&](std::size_t i) { return x(i, f); });
    }

    std::vector<double> w(n, 1.0 / static_cast<double>(n));
    std::vector<Stump> stumps;
    std::vector<double> alphas;
    constexpr double kMinError = 1e-10;
    for (std::size_t t = 0; t < rounds; ++t) {
        auto [stump, err] = best_stump(x, y, w, order);
        if (err >= 0.5) break;
        const bool perfect = err <= 0.0;
        err = std::max(err, kMinError);
        const double alpha = 0.5 * std::log((1.0 - err) / err);
        stumps.push_back(stump);
        alphas.push_back(alpha);
        if (perfect) break;
        double z = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            w[i] *= std::exp(-alpha * y[i] * stump.predict(x.row(i)));
            z += w[i];
        }
        for (auto& wi : w) wi /= z;
    }
    return std::make_shared<AdaBoostModel>(std::move(stumps), std::move(alphas), majority);
}

}  // namespace wrapfs::detail
