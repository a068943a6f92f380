#include "models.hpp"
#include "wrapfs/error.hpp"

namespace wrapfs::detail {

namespace {

class LogisticModel final : public Model {
public:
    LogisticModel(std::vector<double> w, double b, double threshold)
        : w_(std::move(w)), b_(b), threshold_(threshold) {}

    Label predict_row(std::span<const double> x) const override {
        return sigmoid(dot(w_, x) + b_) >= threshold_ ? Label::positive : Label::negative;
    }

private:
    std::vector<double> w_;
    double b_;
    double threshold_;
};

}  // namespace

ModelPtr fit_logistic_regression(const ClassifierConfig& cfg, const Dataset& train) {
    require_both_classes(train, "lr");
    const double lr = cfg.get("learning_rate");
    const auto iterations = count_param(cfg, "iterations");
    const double l2 = cfg.get("l2");
    const double threshold = cfg.get("threshold");
    if (lr <= 0.0) throw ConfigError("lr: learning_rate must be positive");
    if (l2 < 0.0) throw ConfigError("lr: l2 must be non-negative");
    if (threshold <= 0.0 || threshold >= 1.0) throw ConfigError("lr: threshold must lie in (0, 1)");

    const auto& x = train.features();
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<double> w(d, 0.0), grad(d);
    double b = 0.0;
    for (std::size_t it = 0; it < iterations; ++it) {
        std::fill(grad.begin(), grad.end(), 0.0);
        double grad_b = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = x.row(i);
            const double err = sigmoid(dot(w, row) + b) - to_int(train.labels()[i]);
            for (std::size_t j = 0; j < d; ++j) grad[j] += err * row[j];
            grad_b += err;
        }
        // Bias is not regularized.
        for (std::size_t j = 0; j < d; ++j) w[j] -= lr * (grad[j] * inv_n + l2 * w[j]);
        b -= lr * grad_b * inv_n;
    }
    return std::make_shared<LogisticModel>(std::move(w), b, threshold);
}

}  // namespace wrapfs::detail
