#include <cmath>
#include <stdexcept>

#include "models.hpp"
#include "wrapfs/error.hpp"

namespace wrapfs {

namespace {

struct KindName {
    ClassifierKind kind;
    std::string_view name;
};

constexpr KindName kNames[] = {
    {ClassifierKind::knn, "knn"},           {ClassifierKind::naive_bayes, "nb"},
    {ClassifierKind::lda, "lda"},           {ClassifierKind::logistic_regression, "lr"},
    {ClassifierKind::decision_tree, "dt"},  {ClassifierKind::random_forest, "rf"},
    {ClassifierKind::adaboost, "ab"},       {ClassifierKind::linear_svm, "svm"},
    {ClassifierKind::mlp, "mlp"},
};

constexpr KindName kAliases[] = {
    {ClassifierKind::naive_bayes, "naive_bayes"},
    {ClassifierKind::logistic_regression, "logistic_regression"},
    {ClassifierKind::decision_tree, "decision_tree"},
    {ClassifierKind::random_forest, "random_forest"},
    {ClassifierKind::adaboost, "adaboost"},
    {ClassifierKind::linear_svm, "linear_svm"},
    {ClassifierKind::mlp, "ann"},
};

}  // namespace

std::string_view to_string(ClassifierKind kind) {
    for (const auto& [k, name] : kNames) {
        if (k == kind) return name;
    }
    return "unknown";
}

ClassifierKind parse_classifier_kind(std::string_view name) {
    for (const auto& [k, n] : kNames) {
        if (n == name) return k;
    }
    for (const auto& [k, n] : kAliases) {
        if (n == name) return k;
    }
    throw ConfigError("unknown classifier '" + std::string(name) + "'");
}

std::map<std::string, double, std::less<>> default_hyperparams(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::knn:
            return {{"k", 5}};
        case ClassifierKind::naive_bayes:
            return {{"var_smoothing", 1e-9}};
        case ClassifierKind::lda:
            return {{"ridge", 1e-6}};
        case ClassifierKind::logistic_regression:
            return {{"learning_rate", 0.1}, {"iterations", 1000}, {"l2", 1e-4}, {"threshold", 0.5}};
        case ClassifierKind::decision_tree:
            return {{"min_samples_split", 2}, {"max_depth", 0}};
        case ClassifierKind::random_forest:
            // max_features 0 means ceil(sqrt(d)).
            return {{"n_trees", 100}, {"max_features", 0}, {"bootstrap", 1}, {"min_samples_split", 2},
                    {"max_depth", 0}};
        case ClassifierKind::adaboost:
            return {{"n_rounds", 50}};
        case ClassifierKind::linear_svm:
            return {{"c", 1.0}, {"epochs", 1000}};
        case ClassifierKind::mlp:
            return {{"hidden_layers", 5}, {"hidden_units", 10}, {"learning_rate", 0.1}, {"epochs", 200},
                    {"init_range", 1.0}};
    }
    return {};
}

ClassifierConfig::ClassifierConfig(ClassifierKind kind, std::uint64_t seed)
    : kind_(kind), params_(default_hyperparams(kind)), seed_(seed) {}

void ClassifierConfig::set(std::string_view name, double value) {
    auto it = params_.find(name);
    if (it == params_.end()) {
        throw ConfigError("classifier '" + std::string(to_string(kind_)) + "' has no hyperparameter '" +
                          std::string(name) + "'");
    }
    if (!std::isfinite(value)) throw ConfigError("hyperparameter '" + std::string(name) + "' must be finite");
    it->second = value;
}

double ClassifierConfig::get(std::string_view name) const {
    auto it = params_.find(name);
    if (it == params_.end()) {
        throw ConfigError("classifier '" + std::string(to_string(kind_)) + "' has no hyperparameter '" +
                          std::string(name) + "'");
    }
    return it->second;
}

namespace detail {

void require_both_classes(const Dataset& train, const char* who) {
    if (train.count(Label::positive) == 0 || train.count(Label::negative) == 0) {
        throw std::invalid_argument(std::string(who) + ": degenerate training set (single class)");
    }
}

std::size_t count_param(const ClassifierConfig& cfg, const char* name) {
    const double v = cfg.get(name);
    if (v < 0.0 || v != std::floor(v)) {
        throw ConfigError(std::string("hyperparameter '") + name + "' must be a non-negative integer");
    }
    return static_cast<std::size_t>(v);
}

}  // namespace detail

TrainedModel train_classifier(const ClassifierConfig& cfg, const Dataset& train) {
    if (train.n_samples() == 0) throw std::invalid_argument("train_classifier: empty training set");
    if (train.n_features() == 0) throw std::invalid_argument("train_classifier: no features");
    detail::ModelPtr impl;
    switch (cfg.kind()) {
        case ClassifierKind::knn: impl = detail::fit_knn(cfg, train); break;
        case ClassifierKind::naive_bayes: impl = detail::fit_naive_bayes(cfg, train); break;
        case ClassifierKind::lda: impl = detail::fit_lda(cfg, train); break;
        case ClassifierKind::logistic_regression: impl = detail::fit_logistic_regression(cfg, train); break;
        case ClassifierKind::decision_tree: impl = detail::fit_decision_tree(cfg, train); break;
        case ClassifierKind::random_forest: impl = detail::fit_random_forest(cfg, train); break;
        case ClassifierKind::adaboost: impl = detail::fit_adaboost(cfg, train); break;
        case ClassifierKind::linear_svm: impl = detail::fit_linear_svm(cfg, train); break;
        case ClassifierKind::mlp: impl = detail::fit_mlp(cfg, train); break;
    }
    return TrainedModel(cfg.kind(), train.n_features(), std::move(impl));
}

std::vector<Label> predict(const TrainedModel& model, const Matrix& features) {
    if (features.rows() > 0 && features.cols() != model.n_features_expected()) {
        throw std::invalid_argument("predict: expected " + std::to_string(model.n_features_expected()) +
                                    " features, got " + std::to_string(features.cols()));
    }
    std::vector<Label> out;
    out.reserve(features.rows());
    for (std::size_t i = 0; i < features.rows(); ++i) out.push_back(model.impl().predict_row(features.row(i)));
    return out;
}

const GaussianNbParams* naive_bayes_params(const TrainedModel& model) {
    const auto* nb = dynamic_cast<const detail::NaiveBayesModel*>(&model.impl());
    return nb ? &nb->params() : nullptr;
}

int decision_tree_split_count(const TrainedModel& model) {
    const auto* dt = dynamic_cast<const detail::DecisionTreeModel*>(&model.impl());
    return dt ? dt->tree().split_count() : -1;
}

}  // namespace wrapfs
