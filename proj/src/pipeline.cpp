#include "wrapfs/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_map>

#include "wrapfs/error.hpp"
#include "wrapfs/random.hpp"

namespace wrapfs {

std::string_view to_string(OptimizerKind kind) {
    switch (kind) {
        case OptimizerKind::none: return "none";
        case OptimizerKind::ica: return "ica";
        case OptimizerKind::ba: return "ba";
    }
    return "unknown";
}

OptimizerKind parse_optimizer_kind(std::string_view name) {
    if (name == "none") return OptimizerKind::none;
    if (name == "ica") return OptimizerKind::ica;
    if (name == "ba") return OptimizerKind::ba;
    throw ConfigError("unknown optimizer '" + std::string(name) + "' (expected ica, ba or none)");
}

std::string_view to_string(ReportFormat format) { return format == ReportFormat::json ? "json" : "csv"; }

ReportFormat parse_report_format(std::string_view name) {
    if (name == "json") return ReportFormat::json;
    if (name == "csv") return ReportFormat::csv;
    throw ConfigError("unknown output format '" + std::string(name) + "' (expected json or csv)");
}

std::string_view to_string(EvaluationMode mode) {
    return mode == EvaluationMode::with_fs ? "with_fs" : "without_fs";
}

void ExperimentConfig::validate() const {
    if (!(split_fraction > 0.0 && split_fraction < 1.0)) throw ConfigError("split must lie in (0, 1)");
    if (cv_k < 2) throw ConfigError("cv_k must be at least 2");
    if (classifiers.empty()) throw ConfigError("no classifiers selected");
    for (std::size_t i = 0; i < classifiers.size(); ++i) {
        for (std::size_t j = i + 1; j < classifiers.size(); ++j) {
            if (classifiers[i] == classifiers[j]) {
                throw ConfigError("classifier '" + std::string(to_string(classifiers[i])) + "' listed twice");
            }
        }
    }
    if (!(fitness_feature_penalty >= 0.0)) throw ConfigError("fitness_feature_penalty must be non-negative");
    for (const auto& [kind, c] : classifier_overrides) {
        if (c.kind() != kind) throw ConfigError("classifier override stored under the wrong kind");
    }
    ica.validate();
    ba.validate();
}

ClassifierConfig ExperimentConfig::classifier_config(ClassifierKind kind) const {
    auto it = classifier_overrides.find(kind);
    ClassifierConfig cfg = it != classifier_overrides.end() ? it->second : ClassifierConfig(kind);
    cfg.set_seed(derive_seed(seed, "classifier:" + std::string(to_string(kind))));
    return cfg;
}

PreparedData prepare_data(const Dataset& raw, double split_fraction, std::uint64_t seed) {
    auto split = stratified_split(raw, split_fraction, derive_seed(seed, "split"));
    PreparedData out;
    out.scaler = fit_scaler(split.train);
    out.train = transform(split.train, out.scaler);
    out.test = transform(split.test, out.scaler);
    out.train_rows = std::move(split.train_rows);
    out.test_rows = std::move(split.test_rows);
    return out;
}

double fs_fitness(const FeatureMask& mask, const ClassifierConfig& cfg, const Dataset& train, std::size_t cv_k,
                  std::uint64_t seed, double feature_penalty) {
    if (mask.size() != train.n_features()) {
        throw std::invalid_argument("fs_fitness: mask length does not match the training width");
    }
    const auto selected = mask.count();
    if (selected == 0) return kEmptyMaskPenalty;
    const auto cv = k_fold_cv(cfg, apply_mask(train, mask), cv_k, seed);
    return 1.0 - cv.ocv_accuracy +
           feature_penalty * static_cast<double>(selected) / static_cast<double>(mask.size());
}

OptimizeResult run_wrapper_fs(OptimizerKind optimizer, const ClassifierConfig& clf_cfg, const Dataset& train,
                              const ExperimentConfig& exp_cfg) {
    if (optimizer == OptimizerKind::none) throw ConfigError("run_wrapper_fs: no optimizer selected");
    if (train.count(Label::positive) == 0 || train.count(Label::negative) == 0) {
        throw std::invalid_argument("run_wrapper_fs: training set must contain both classes");
    }
    const std::size_t dim = train.n_features();
    const std::string tag(to_string(clf_cfg.kind()));
    const std::uint64_t fitness_seed = derive_seed(exp_cfg.seed, "fitness:" + tag);

    // Same mask, same folds, same cost: memoize per run.
    std::unordered_map<std::string, double> cache;
    const CostFunction cost = [&](const Position& p) {
        const auto mask = binarize_position(p);
        auto key = mask.to_string();
        if (auto it = cache.find(key); it != cache.end()) return it->second;
        const double c = fs_fitness(mask, clf_cfg, train, exp_cfg.cv_k, derive_seed(fitness_seed, mask.hash()),
                                    exp_cfg.fitness_feature_penalty);
        cache.emplace(std::move(key), c);
        return c;
    };
    const TieBreak fewer_features = [](const Position& candidate, const Position& incumbent) {
        const auto n = binarize_position(candidate).count();
        return n > 0 && n < binarize_position(incumbent).count();
    };

    OptimizeResult result;
    if (optimizer == OptimizerKind::ica) {
        auto ica = exp_cfg.ica;
        ica.seed = derive_seed(exp_cfg.seed, "ica:" + tag);
        result = ica_optimize(cost, dim, ica, fewer_features);
    } else {
        auto ba = exp_cfg.ba;
        ba.seed = derive_seed(exp_cfg.seed, "ba:" + tag);
        result = ba_optimize(cost, dim, ba, fewer_features);
    }

    if (result.best_mask.none()) {
        // Every visited mask was empty; fall back to the full feature set.
        result.best_position = Position{std::vector<double>(dim, 1.0)};
        result.best_mask = FeatureMask::all(dim);
        result.best_cost = cost(result.best_position);
    }
    return result;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

ReportRow evaluate_row(ClassifierKind kind, EvaluationMode mode, const ClassifierConfig& clf_cfg,
                       const PreparedData& data, const ExperimentConfig& cfg) {
    ReportRow row;
    row.classifier = kind;
    row.mode = mode;
    const auto start = Clock::now();
    try {
        row.mask = FeatureMask::all(data.train.n_features());
        if (mode == EvaluationMode::with_fs) {
            auto result = run_wrapper_fs(cfg.optimizer, clf_cfg, data.train, cfg);
            row.mask = std::move(result.best_mask);
            row.history = std::move(result.history);
            row.fitness = result.best_cost;
        }
        // The test split is projected by the same mask the model was trained on.
        const auto train = apply_mask(data.train, row.mask);
        const auto test = apply_mask(data.test, row.mask);
        const auto model = train_classifier(clf_cfg, train);
        row.metrics = evaluate(test.labels(), predict(model, test.features()));
        row.selected_features = train.feature_names();
    } catch (const std::exception& e) {
        row.error = e.what();
        row.metrics = {};
        row.selected_features.clear();
        for (auto j : row.mask.selected()) row.selected_features.push_back(data.train.feature_names()[j]);
    }
    row.n_selected = row.mask.count();
    row.seconds = seconds_since(start);
    return row;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg, const Dataset& raw) {
    cfg.validate();
    const auto data = prepare_data(raw, cfg.split_fraction, cfg.seed);

    ExperimentReport report;
    report.config = cfg;
    report.dataset = {raw.n_samples(),         raw.n_features(),         raw.count(Label::positive),
                      raw.count(Label::negative), data.train.n_samples(), data.test.n_samples()};
    for (auto kind : cfg.classifiers) {
        const auto clf_cfg = cfg.classifier_config(kind);
        report.rows.push_back(evaluate_row(kind, EvaluationMode::without_fs, clf_cfg, data, cfg));
        if (cfg.optimizer != OptimizerKind::none) {
            report.rows.push_back(evaluate_row(kind, EvaluationMode::with_fs, clf_cfg, data, cfg));
        }
    }
    return report;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    return run_experiment(cfg, load_dataset(cfg.data_path));
}

}  // namespace wrapfs
