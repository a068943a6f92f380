#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wrapfs/data.hpp"

namespace wrapfs {

enum class ClassifierKind {
    knn,
    naive_bayes,
    lda,
    logistic_regression,
    decision_tree,
    random_forest,
    adaboost,
    linear_svm,
    mlp,
};

inline constexpr std::array<ClassifierKind, 9> kAllClassifiers = {
    ClassifierKind::knn,           ClassifierKind::naive_bayes,   ClassifierKind::lda,
    ClassifierKind::logistic_regression, ClassifierKind::decision_tree, ClassifierKind::random_forest,
    ClassifierKind::adaboost,      ClassifierKind::linear_svm,    ClassifierKind::mlp,
};

/// Short name used in reports and on the command line ("knn", "nb", ..., "mlp").
std::string_view to_string(ClassifierKind kind);

/// Accepts the short names plus a few aliases ("ann", "svm", "naive_bayes", ...). Throws ConfigError.
ClassifierKind parse_classifier_kind(std::string_view name);

/// Hyperparameters for one classifier. Every name has a default; unknown names are rejected.
class ClassifierConfig {
public:
    explicit ClassifierConfig(ClassifierKind kind, std::uint64_t seed = 0);

    ClassifierKind kind() const noexcept { return kind_; }
    std::uint64_t seed() const noexcept { return seed_; }
    void set_seed(std::uint64_t seed) noexcept { seed_ = seed; }

    /// Throws ConfigError for a name this kind does not define.
    void set(std::string_view name, double value);
    double get(std::string_view name) const;

    const std::map<std::string, double, std::less<>>& hyperparams() const noexcept { return params_; }

    bool operator==(const ClassifierConfig&) const = default;

private:
    ClassifierKind kind_;
    std::map<std::string, double, std::less<>> params_;
    std::uint64_t seed_;
};

/// Default hyperparameter table for a kind.
std::map<std::string, double, std::less<>> default_hyperparams(ClassifierKind kind);

namespace detail {

class Model {
public:
    virtual ~Model() = default;
    virtual Label predict_row(std::span<const double> x) const = 0;
};

}  // namespace detail

/// Immutable trained classifier; cheap to copy and safe to share across threads.
class TrainedModel {
public:
    TrainedModel(ClassifierKind kind, std::size_t n_features, std::shared_ptr<const detail::Model> impl)
        : kind_(kind), n_features_(n_features), impl_(std::move(impl)) {}

    ClassifierKind kind() const noexcept { return kind_; }
    std::size_t n_features_expected() const noexcept { return n_features_; }

    /// Underlying model, for kind-specific inspection in tests.
    const detail::Model& impl() const noexcept { return *impl_; }

private:
    ClassifierKind kind_;
    std::size_t n_features_;
    std::shared_ptr<const detail::Model> impl_;
};

/// Fits a model. Throws std::invalid_argument on an empty set, or with
/// "degenerate training set" when LDA/LR/SVM/MLP see a single class.
TrainedModel train_classifier(const ClassifierConfig& cfg, const Dataset& train);

/// One label per row. Throws std::invalid_argument on a width mismatch.
std::vector<Label> predict(const TrainedModel& model, const Matrix& features);

// Kind-specific inspection used by tests.

struct GaussianNbParams {
    std::array<double, 2> priors;
    std::array<std::vector<double>, 2> means;      // indexed by to_int(Label)
    std::array<std::vector<double>, 2> variances;  // after smoothing
};

/// Returns nullptr when the model is not Gaussian naive Bayes.
const GaussianNbParams* naive_bayes_params(const TrainedModel& model);

/// Number of internal split nodes; -1 when the model is not a decision tree.
int decision_tree_split_count(const TrainedModel& model);

}  // namespace wrapfs
