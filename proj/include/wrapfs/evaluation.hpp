#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wrapfs/classifiers.hpp"
#include "wrapfs/data.hpp"

namespace wrapfs {

/// Counts with benign as the positive class.
struct ConfusionMatrix {
    std::size_t tp = 0;
    std::size_t fn = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;

    std::size_t total() const noexcept { return tp + fn + fp + tn; }
    bool operator==(const ConfusionMatrix&) const = default;
};

/// Bits set in MetricsReport::degenerate when a ratio had a zero denominator
/// (the value is then reported as 0).
enum DegenerateFlag : std::uint32_t {
    kDegenerateSensitivity = 1u << 0,
    kDegenerateSpecificity = 1u << 1,
    kDegeneratePrecision = 1u << 2,
    kDegenerateFScore = 1u << 3,
    kDegenerateKappa = 1u << 4,
    kDegenerateRae = 1u << 5,
};

/// All nine measures as fractions. `rae` is the L2 ratio
/// sqrt(sum (pred - true)^2) / sqrt(sum true^2) despite its name.
struct MetricsReport {
    double accuracy = 0.0;
    double sensitivity = 0.0;
    double specificity = 0.0;
    double precision = 0.0;
    double f_score = 0.0;
    double kappa = 0.0;
    double mae = 0.0;
    double rmse = 0.0;
    double rae = 0.0;
    std::uint32_t degenerate = 0;

    bool operator==(const MetricsReport&) const = default;
};

struct ErrorMetrics {
    double mae = 0.0;
    double rmse = 0.0;
    double rae = 0.0;
    bool rae_degenerate = false;
};

struct CvResult {
    std::vector<MetricsReport> fold_metrics;
    double ocv_accuracy = 0.0;
    std::size_t k = 0;
};

/// Throws std::invalid_argument on length mismatch or empty input.
ConfusionMatrix confusion_matrix(std::span<const Label> truth, std::span<const Label> predicted);

/// Accuracy, sensitivity, specificity, precision, F-score and Cohen's kappa.
/// The error fields of the result are left at zero.
MetricsReport classification_metrics(const ConfusionMatrix& cm);

/// MAE, RMSE and the L2 "RAE" ratio over 0/1-encoded labels.
ErrorMetrics error_metrics(std::span<const Label> truth, std::span<const Label> predicted);

/// Full nine-field report for a prediction set.
MetricsReport evaluate(std::span<const Label> truth, std::span<const Label> predicted);

/// Mean of the per-fold indicators.
double overall_cv_score(std::span<const double> fold_scores);

/// Seeded stratified partition of row indices into k folds whose sizes differ by at most one.
/// Throws std::invalid_argument when k < 2 or a class has fewer than k rows.
std::vector<std::vector<std::size_t>> stratified_folds(std::span<const Label> labels, std::size_t k,
                                                        std::uint64_t seed);

/// Stratified k-fold cross-validation of one classifier configuration.
CvResult k_fold_cv(const ClassifierConfig& cfg, const Dataset& ds, std::size_t k, std::uint64_t seed);

}  // namespace wrapfs
