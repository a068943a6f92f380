#include <algorithm>
#include <cmath>
#include <numeric>

#include "models.hpp"
#include "wrapfs/error.hpp"

namespace wrapfs::detail {

namespace {

double gini(std::size_t pos, std::size_t n) {
    if (n == 0) return 0.0;
    const double p = static_cast<double>(pos) / static_cast<double>(n);
    return 2.0 * p * (1.0 - p);
}

Tree::Options tree_options(const ClassifierConfig& cfg) {
    Tree::Options opt;
    opt.min_samples_split = count_param(cfg, "min_samples_split");
    opt.max_depth = count_param(cfg, "max_depth");
    if (opt.min_samples_split < 2) throw ConfigError("min_samples_split must be at least 2");
    return opt;
}

class RandomForestModel final : public Model {
public:
    explicit RandomForestModel(std::vector<Tree> trees) : trees_(std::move(trees)) {}

    Label predict_row(std::span<const double> x) const override {
        std::size_t pos = 0;
        for (const auto& t : trees_) pos += t.predict(x) == Label::positive;
        return 2 * pos >= trees_.size() ? Label::positive : Label::negative;
    }

private:
    std::vector<Tree> trees_;
};

}  // namespace

Tree Tree::grow(const Matrix& x, std::span<const Label> y, std::span<const std::size_t> rows, const Options& opt,
                Rng& rng) {
    Tree t;
    std::vector<std::size_t> work(rows.begin(), rows.end());
    t.build(x, y, work, 0, opt, rng);
    return t;
}

int Tree::build(const Matrix& x, std::span<const Label> y, std::vector<std::size_t>& rows, std::size_t depth,
                const Options& opt, Rng& rng) {
    const std::size_t m = rows.size();
    std::size_t pos = 0;
    for (auto r : rows) pos += y[r] == Label::positive;

    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back({});
    // Majority label; an even split goes to positive.
    nodes_[id].label = 2 * pos >= m ? Label::positive : Label::negative;

    const bool pure = pos == 0 || pos == m;
    if (pure || m < opt.min_samples_split || (opt.max_depth > 0 && depth >= opt.max_depth)) return id;

    const std::size_t d = x.cols();
    std::vector<std::size_t> features(d);
    std::iota(features.begin(), features.end(), 0);
    const bool subsample = opt.max_features > 0 && opt.max_features < d;
    if (subsample) rng.shuffle(std::span(features));
    const std::size_t wanted = subsample ? opt.max_features : d;

    double best_impurity = std::numeric_limits<double>::infinity();
    int best_feature = -1;
    double best_threshold = 0.0;
    std::vector<std::pair<double, Label>> column(m);
    std::size_t tried = 0;
    for (std::size_t f : features) {
        if (tried == wanted) break;
        for (std::size_t i = 0; i < m; ++i) column[i] = {x(rows[i], f), y[rows[i]]};
        std::ranges::sort(column, {}, &std::pair<double, Label>::first);
        if (column.front().first == column.back().first) continue;  // constant here; does not count
        ++tried;
        std::size_t left_pos = 0;
        for (std::size_t i = 0; i + 1 < m; ++i) {
            left_pos += column[i].second == Label::positive;
            if (column[i].first == column[i + 1].first) continue;
            const std::size_t nl = i + 1;
            const std::size_t nr = m - nl;
            const double impurity =
                (static_cast<double>(nl) * gini(left_pos, nl) + static_cast<double>(nr) * gini(pos - left_pos, nr)) /
                static_cast<double>(m);
            if (impurity < best_impurity) {
                best_impurity = impurity;
                best_feature = static_cast<int>(f);
                best_threshold = 0.5 * (column[i].first + column[i + 1].first);
                // Midpoint can round up to the right value for adjacent doubles.
                if (best_threshold >= column[i + 1].first) best_threshold = column[i].first;
            }
        }
    }
    if (best_feature < 0) return id;

    std::vector<std::size_t> left, right;
    for (auto r : rows) (x(r, static_cast<std::size_t>(best_feature)) <= best_threshold ? left : right).push_back(r);
    rows.clear();
    rows.shrink_to_fit();

    nodes_[id].feature = best_feature;
    nodes_[id].threshold = best_threshold;
    const int l = build(x, y, left, depth + 1, opt, rng);
    const int r = build(x, y, right, depth + 1, opt, rng);
    nodes_[id].left = l;
    nodes_[id].right = r;
    return id;
}

Label Tree::predict(std::span<const double> x) const {
    int i = 0;
    while (nodes_[i].feature >= 0) {
        const auto& n = nodes_[i];
        i = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
    }
    return nodes_[i].label;
}

int Tree::split_count() const {
    return static_cast<int>(std::ranges::count_if(nodes_, [](const Node& n) { return n.feature >= 0; }));
}

ModelPtr fit_decision_tree(const ClassifierConfig& cfg, const Dataset& train) {
    const auto opt = tree_options(cfg);
    std::vector<std::size_t> rows(train.n_samples());
    std::iota(rows.begin(), rows.end(), 0);
    Rng rng(cfg.seed());
    return std::make_shared<DecisionTreeModel>(Tree::grow(train.features(), train.labels(), rows, opt, rng));
}

ModelPtr fit_random_forest(const ClassifierConfig& cfg, const Dataset& train) {
    auto opt = tree_options(cfg);
    const auto n_trees = count_param(cfg, "n_trees");
    if (n_trees == 0) throw ConfigError("rf: n_trees must be at least 1");
    const auto max_features = count_param(cfg, "max_features");
    const std::size_t d = train.n_features();
    opt.max_features = max_features == 0 ? static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(d))))
                                          : std::min(max_features, d);
    const bool bootstrap = cfg.get("bootstrap") != 0.0;

    const std::size_t n = train.n_samples();
    std::vector<Tree> trees;
    trees.reserve(n_trees);
    std::vector<std::size_t> rows(n);
    for (std::size_t t = 0; t < n_trees; ++t) {
        Rng rng(derive_seed(cfg.seed(), t));
        if (bootstrap) {
            for (auto& r : rows) r = rng.index(n);
        } else {
            std::iota(rows.begin(), rows.end(), 0);
        }
        trees.push_back(Tree::grow(train.features(), train.labels(), rows, opt, rng));
    }
    return std::make_shared<RandomForestModel>(std::move(trees));
}

}  // namespace wrapfs::detail
