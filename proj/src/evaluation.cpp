#include "wrapfs/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "wrapfs/random.hpp"

namespace wrapfs {

namespace {

double ratio(double num, double den, std::uint32_t flag, std::uint32_t& degenerate) {
    if (den == 0.0) {
        degenerate |= flag;
        return 0.0;
    }
    return num / den;
}

void check_lengths(std::span<const Label> truth, std::span<const Label> predicted, const char* who) {
    if (truth.size() != predicted.size()) {
        throw std::invalid_argument(std::string(who) + ": length mismatch (" + std::to_string(truth.size()) +
                                    " vs " + std::to_string(predicted.size()) + ")");
    }
    if (truth.empty()) throw std::invalid_argument(std::string(who) + ": no samples");
}

}  // namespace

ConfusionMatrix confusion_matrix(std::span<const Label> truth, std::span<const Label> predicted) {
    check_lengths(truth, predicted, "confusion_matrix");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const bool actual = truth[i] == Label::positive;
        const bool pred = predicted[i] == Label::positive;
        if (actual && pred) {
            ++cm.tp;
        } else if (actual) {
            ++cm.fn;
        } else if (pred) {
            ++cm.fp;
        } else {
            ++cm.tn;
        }
    }
    return cm;
}

MetricsReport classification_metrics(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw std::invalid_argument("classification_metrics: empty confusion matrix");
    const double tp = static_cast<double>(cm.tp);
    const double fn = static_cast<double>(cm.fn);
    const double fp = static_cast<double>(cm.fp);
    const double tn = static_cast<double>(cm.tn);
    const double n = tp + fn + fp + tn;

    MetricsReport r;
    r.accuracy = (tp + tn) / n;
    r.sensitivity = ratio(tp, tp + fn, kDegenerateSensitivity, r.degenerate);
    r.specificity = ratio(tn, tn + fp, kDegenerateSpecificity, r.degenerate);
    r.precision = ratio(tp, tp + fp, kDegeneratePrecision, r.degenerate);
    r.f_score = ratio(2.0 * r.sensitivity * r.precision, r.sensitivity + r.precision, kDegenerateFScore,
                      r.degenerate);

    // Cohen's kappa: chance agreement from the row and column marginals.
    const double observed = (tp + tn) / n;
    const double expected = ((tp + fn) * (tp + fp) + (fp + tn) * (fn + tn)) / (n * n);
    r.kappa = ratio(observed - expected, 1.0 - expected, kDegenerateKappa, r.degenerate);
    return r;
}

ErrorMetrics error_metrics(std::span<const Label> truth, std::span<const Label> predicted) {
    check_lengths(truth, predicted, "error_metrics");
    double abs_sum = 0.0;
    double sq_sum = 0.0;
    double truth_sq = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const double meas = to_int(truth[i]);
        const double diff = to_int(predicted[i]) - meas;
        abs_sum += std::abs(diff);
        sq_sum += diff * diff;
        truth_sq += meas * meas;
    }
    const double n = static_cast<double>(truth.size());
    ErrorMetrics e;
    e.mae = abs_sum / n;
    e.rmse = std::sqrt(sq_sum / n);
    if (truth_sq == 0.0) {
        e.rae_degenerate = true;
    } else {
        e.rae = std::sqrt(sq_sum) / std::sqrt(truth_sq);
    }
    return e;
}

MetricsReport evaluate(std::span<const Label> truth, std::span<const Label> predicted) {
    auto r = classification_metrics(confusion_matrix(truth, predicted));
    const auto e = error_metrics(truth, predicted);
    r.mae = e.mae;
    r.rmse = e.rmse;
    r.rae = e.rae;
    if (e.rae_degenerate) r.degenerate |= kDegenerateRae;
    return r;
}

double overall_cv_score(std::span<const double> fold_scores) {
    if (fold_scores.empty()) throw std::invalid_argument("overall_cv_score: no folds");
    return std::accumulate(fold_scores.begin(), fold_scores.end(), 0.0) / static_cast<double>(fold_scores.size());
}

std::vector<std::vector<std::size_t>> stratified_folds(std::span<const Label> labels, std::size_t k,
                                                        std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("k-fold: k must be at least 2");
    Rng rng(seed);
    std::vector<std::vector<std::size_t>> folds(k);
    // Deal class-by-class round robin, continuing the fold cursor across
    // classes so total fold sizes stay within one of each other.
    std::size_t cursor = 0;
    for (Label cls : {Label::negative, Label::positive}) {
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == cls) rows.push_back(i);
        }
        if (rows.size() < k) {
            throw std::invalid_argument("k-fold: class " + std::to_string(to_int(cls)) + " has " +
                                        std::to_string(rows.size()) + " samples, fewer than k=" + std::to_string(k));
        }
        rng.shuffle(std::span(rows));
        for (auto r : rows) folds[cursor++ % k].push_back(r);
    }
    for (auto& f : folds) std::sort(f.begin(), f.end());
    return folds;
}

CvResult k_fold_cv(const ClassifierConfig& cfg, const Dataset& ds, std::size_t k, std::uint64_t seed) {
    const auto folds = stratified_folds(ds.labels(), k, seed);
    CvResult result;
    result.k = k;
    std::vector<double> accuracies;
    for (std::size_t f = 0; f < k; ++f) {
        std::vector<std::size_t> train_rows;
        for (std::size_t g = 0; g < k; ++g) {
            if (g != f) train_rows.insert(train_rows.end(), folds[g].begin(), folds[g].end());
        }
        std::sort(train_rows.begin(), train_rows.end());
        const auto model = train_classifier(cfg, ds.select_rows(train_rows));
        const auto held_out = ds.select_rows(folds[f]);
        const auto predicted = predict(model, held_out.features());
        result.fold_metrics.push_back(evaluate(held_out.labels(), predicted));
        accuracies.push_back(result.fold_metrics.back().accuracy);
    }
    result.ocv_accuracy = overall_cv_score(accuracies);
    return result;
}

}  // namespace wrapfs
