#include <algorithm>
#include <numeric>

#include "models.hpp"
#include "wrapfs/error.hpp"

namespace wrapfs::detail {

namespace {

class KnnModel final : public Model {
public:
    KnnModel(Matrix x, std::vector<Label> y, std::size_t k) : x_(std::move(x)), y_(std::move(y)), k_(k) {}

    Label predict_row(std::span<const double> q) const override {
        const std::size_t n = x_.rows();
        std::vector<std::pair<double, std::size_t>> dist(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto r = x_.row(i);
            double d2 = 0.0;
            for (std::size_t j = 0; j < r.size(); ++j) {
                const double diff = r[j] - q[j];
                d2 += diff * diff;
            }
            dist[i] = {d2, i};
        }
        const std::size_t k = std::min(k_, n);
        // pair ordering breaks distance ties by training index.
        std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
        std::size_t pos = 0;
        for (std::size_t i = 0; i < k; ++i) pos += y_[dist[i].second] == Label::positive;
        const std::size_t neg = k - pos;
        if (pos == neg) return y_[dist[0].second];
        return pos > neg ? Label::positive : Label::negative;
    }

private:
    Matrix x_;
    std::vector<Label> y_;
    std::size_t k_;
};

}  // namespace

ModelPtr fit_knn(const ClassifierConfig& cfg, const Dataset& train) {
    const auto k = count_param(cfg, "k");
    if (k == 0) throw ConfigError("knn: k must be at least 1");
    return std::make_shared<KnnModel>(train.features(), train.labels(), k);
}

}  // namespace wrapfs::detail
