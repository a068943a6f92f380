#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wrapfs/classifiers.hpp"
#include "wrapfs/data.hpp"
#include "wrapfs/evaluation.hpp"
#include "wrapfs/metaheuristics.hpp"

namespace wrapfs {

enum class OptimizerKind { none, ica, ba };

std::string_view to_string(OptimizerKind kind);
OptimizerKind parse_optimizer_kind(std::string_view name);

enum class ReportFormat { json, csv };

std::string_view to_string(ReportFormat format);
ReportFormat parse_report_format(std::string_view name);

/// Fitness returned for a mask with no selected feature; worse than any feasible cost.
inline constexpr double kEmptyMaskPenalty = 2.0;

struct ExperimentConfig {
    std::string data_path;
    OptimizerKind optimizer = OptimizerKind::ba;
    std::vector<ClassifierKind> classifiers{kAllClassifiers.begin(), kAllClassifiers.end()};
    double split_fraction = 0.6;
    std::size_t cv_k = 4;
    std::uint64_t seed = 0;
    IcaConfig ica;
    BaConfig ba;
    /// Hyperparameter overrides per classifier; seeds are always derived from `seed`.
    std::map<ClassifierKind, ClassifierConfig> classifier_overrides;
    /// Added to the CV error as penalty * n_selected / n_features. 0 = pure error.
    double fitness_feature_penalty = 0.0;
    std::string output_path;
    ReportFormat output_format = ReportFormat::json;
    /// Include per-row wall-clock seconds in emitted reports (breaks byte-stability).
    bool include_timings = false;

    /// Throws ConfigError on contradictory or out-of-range settings.
    void validate() const;

    /// Classifier configuration for `kind` with its derived seed.
    ClassifierConfig classifier_config(ClassifierKind kind) const;
};

/// Applies `key=value` lines ('#' comments, blank lines allowed). Keys:
/// data, optimizer, classifiers, seed, split, cv_k, output, format, timings,
/// fitness_feature_penalty, ica.<field>, ba.<field>, <classifier>.<hyperparameter>.
/// Throws ConfigError naming the offending line, IoError when unreadable.
void apply_config_file(const std::string& path, ExperimentConfig& cfg);
void apply_config_text(std::istream& in, ExperimentConfig& cfg);

enum class EvaluationMode { without_fs, with_fs };

std::string_view to_string(EvaluationMode mode);

struct ReportRow {
    ClassifierKind classifier = ClassifierKind::knn;
    EvaluationMode mode = EvaluationMode::without_fs;
    MetricsReport metrics;  // on the held-out test split
    FeatureMask mask;
    std::vector<std::string> selected_features;
    std::size_t n_selected = 0;
    std::vector<HistoryPoint> history;  // empty without feature selection
    double fitness = 0.0;               // best wrapper cost; 0 without feature selection
    double seconds = 0.0;
    std::optional<std::string> error;   // set when the row failed; metrics are then zero
};

struct DatasetStats {
    std::size_t n_samples = 0;
    std::size_t n_features = 0;
    std::size_t n_positive = 0;
    std::size_t n_negative = 0;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
};

struct ExperimentReport {
    ExperimentConfig config;
    DatasetStats dataset;
    std::vector<ReportRow> rows;
};

/// Train/test split of a loaded dataset, scaled with parameters fitted on train rows only.
struct PreparedData {
    Dataset train;
    Dataset test;
    ScalerParams scaler;
    std::vector<std::size_t> train_rows;
    std::vector<std::size_t> test_rows;
};

PreparedData prepare_data(const Dataset& raw, double split_fraction, std::uint64_t seed);

/// Wrapper cost: 1 - OCV accuracy of `cfg` on the masked training set
/// (plus the optional feature-count penalty); kEmptyMaskPenalty for an empty mask.
double fs_fitness(const FeatureMask& mask, const ClassifierConfig& cfg, const Dataset& train, std::size_t cv_k,
                  std::uint64_t seed, double feature_penalty = 0.0);

/// Runs ICA or BA over feature masks of `train` for one classifier. The
/// returned mask is never empty.
OptimizeResult run_wrapper_fs(OptimizerKind optimizer, const ClassifierConfig& clf_cfg, const Dataset& train,
                              const ExperimentConfig& exp_cfg);

/// Evaluates the configured classifiers with and without feature selection on an
/// already loaded dataset.
ExperimentReport run_experiment(const ExperimentConfig& cfg, const Dataset& raw);

/// Loads `cfg.data_path` and runs the experiment.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

}  // namespace wrapfs
