#pragma once

#include <memory>
#include <span>
#include <vector>

#include "wrapfs/classifiers.hpp"
#include "wrapfs/random.hpp"

namespace wrapfs::detail {

using ModelPtr = std::shared_ptr<const Model>;

ModelPtr fit_knn(const ClassifierConfig& cfg, const Dataset& train);
ModelPtr fit_naive_bayes(const ClassifierConfig& cfg, const Dataset& train);
ModelPtr fit_lda(const ClassifierConfig& cfg, const Dataset& train);
ModelPtr fit_logistic_regression(const ClassifierConfig& cfg, const Dataset& train);
ModelPtr fit_decision_tree(const ClassifierConfig& cfg, const Dataset& train);
ModelPtr fit_random_forest(const ClassifierConfig& cfg, const Dataset& train);
ModelPtr fit_adaboost(const ClassifierConfig& cfg, const Dataset& train);
ModelPtr fit_linear_svm(const ClassifierConfig& cfg, const Dataset& train);
ModelPtr fit_mlp(const ClassifierConfig& cfg, const Dataset& train);

/// Throws "degenerate training set" unless both classes are present.
void require_both_classes(const Dataset& train, const char* who);

/// Reads a count-like hyperparameter, rejecting negatives and non-integers.
std::size_t count_param(const ClassifierConfig& cfg, const char* name);

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

class NaiveBayesModel final : public Model {
public:
    explicit NaiveBayesModel(GaussianNbParams params) : params_(std::move(params)) {}
    Label predict_row(std::span<const double> x) const override;
    const GaussianNbParams& params() const noexcept { return params_; }

private:
    GaussianNbParams params_;
};

/// CART tree on Gini impurity. Shared by the decision tree and random forest.
class Tree {
public:
    struct Options {
        std::size_t min_samples_split = 2;
        std::size_t max_depth = 0;     // 0 = unlimited
        std::size_t max_features = 0;  // 0 = all, evaluated in index order
    };

    /// `rows` selects (possibly repeated) training rows; rng is only used when max_features < width.
    static Tree grow(const Matrix& x, std::span<const Label> y, std::span<const std::size_t> rows,
                     const Options& opt, Rng& rng);

    Label predict(std::span<const double> x) const;
    int split_count() const;

private:
    struct Node {
        int feature = -1;  // -1 marks a leaf
        double threshold = 0.0;
        int left = -1;
        int right = -1;
        Label label = Label::positive;
    };

    int build(const Matrix& x, std::span<const Label> y, std::vector<std::size_t>& rows, std::size_t depth,
              const Options& opt, Rng& rng);

    std::vector<Node> nodes_;
};

class DecisionTreeModel final : public Model {
public:
    explicit DecisionTreeModel(Tree tree) : tree_(std::move(tree)) {}
    Label predict_row(std::span<const double> x) const override { return tree_.predict(x); }
    const Tree& tree() const noexcept { return tree_; }

private:
    Tree tree_;
};

}  // namespace wrapfs::detail
