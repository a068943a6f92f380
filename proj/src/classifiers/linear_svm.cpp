#include "models.hpp"
#include "wrapfs/error.hpp"

namespace wrapfs::detail {

namespace {

class LinearSvmModel final : public Model {
public:
    LinearSvmModel(std::vector<double> w, double b) : w_(std::move(w)), b_(b) {}

    Label predict_row(std::span<const double> x) const override {
        return dot(w_, x) + b_ >= 0.0 ? Label::positive : Label::negative;
    }

private:
    std::vector<double> w_;
    double b_;
};

}  // namespace

// Soft-margin primal, lambda/2 |w|^2 + mean hinge with lambda = 1/(C n),
// minimized by full-batch sub-gradient steps of size 1/(lambda t).
ModelPtr fit_linear_svm(const ClassifierConfig& cfg, const Dataset& train) {
    require_both_classes(train, "svm");
    const double c = cfg.get("c");
    const auto epochs = count_param(cfg, "epochs");
    if (c <= 0.0) throw ConfigError("svm: c must be positive");

    const auto& x = train.features();
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    const double lambda = 1.0 / (c * static_cast<double>(n));
    std::vector<double> w(d, 0.0), step(d);
    double b = 0.0;
    for (std::size_t t = 1; t <= epochs; ++t) {
        const double eta = 1.0 / (lambda * static_cast<double>(t));
        std::fill(step.begin(), step.end(), 0.0);
        double step_b = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = x.row(i);
            const double yi = train.labels()[i] == Label::positive ? 1.0 : -1.0;
            if (yi * (dot(w, row) + b) < 1.0) {
                for (std::size_t j = 0; j < d; ++j) step[j] += yi * row[j];
                step_b += yi;
            }
        }
        const double shrink = 1.0 - eta * lambda;
        const double scale = eta / static_cast<double>(n);
        for (std::size_t j = 0; j < d; ++j) w[j] = shrink * w[j] + scale * step[j];
        b += scale * step_b;
    }
    return std::make_shared<LinearSvmModel>(std::move(w), b);
}

}  // namespace wrapfs::detail
