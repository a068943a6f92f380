#include "wrapfs/report.hpp"

#include <cmath>
#include <algorithm>
#include <cstdio>
#include <fstream>

#include "wrapfs/error.hpp"

namespace wrapfs {

namespace {

double round6(double x) {
    const double r = std::round(x * 1e6) / 1e6;
    return r == 0.0 ? 0.0 : r;  // no "-0.0"
}

nlohmann::ordered_json metrics_json(const MetricsReport& m) {
    nlohmann::ordered_json j;
    j["accuracy"] = round6(m.accuracy);
    j["sensitivity"] = round6(m.sensitivity);
    j["specificity"] = round6(m.specificity);
    j["precision"] = round6(m.precision);
    j["f_score"] = round6(m.f_score);
    j["kappa"] = round6(m.kappa);
    j["mae"] = round6(m.mae);
    j["rmse"] = round6(m.rmse);
    j["rae"] = round6(m.rae);
    j["degenerate"] = m.degenerate;
    return j;
}

MetricsReport metrics_from_json(const nlohmann::json& j) {
    MetricsReport m;
    m.accuracy = j.at("accuracy").get<double>();
    m.sensitivity = j.at("sensitivity").get<double>();
    m.specificity = j.at("specificity").get<double>();
    m.precision = j.at("precision").get<double>();
    m.f_score = j.at("f_score").get<double>();
    m.kappa = j.at("kappa").get<double>();
    m.mae = j.at("mae").get<double>();
    m.rmse = j.at("rmse").get<double>();
    m.rae = j.at("rae").get<double>();
    m.degenerate = j.at("degenerate").get<std::uint32_t>();
    return m;
}

FeatureMask mask_from_string(const std::string& bits) {
    FeatureMask m(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != '0' && bits[i] != '1') throw ParseError("report: malformed mask '" + bits + "'", 0);
        m.set(i, bits[i] == '1');
    }
    return m;
}

}  // namespace

nlohmann::ordered_json report_to_json(const ExperimentReport& report) {
    const auto& cfg = report.config;
    nlohmann::ordered_json meta;
    meta["seed"] = cfg.seed;
    meta["data_path"] = cfg.data_path;
    meta["optimizer"] = to_string(cfg.optimizer);
    meta["split"] = cfg.split_fraction;
    meta["cv_k"] = cfg.cv_k;
    meta["fitness_feature_penalty"] = cfg.fitness_feature_penalty;
    meta["metrics_on"] = "test_split";
    meta["rae_definition"] = "sqrt(sum((pred-true)^2))/sqrt(sum(true^2))";
    meta["dataset"] = {{"n_samples", report.dataset.n_samples}, {"n_features", report.dataset.n_features},
                       {"n_positive", report.dataset.n_positive}, {"n_negative", report.dataset.n_negative},
                       {"n_train", report.dataset.n_train},       {"n_test", report.dataset.n_test}};
    meta["ica"] = {{"n_pop", cfg.ica.n_pop}, {"n_imp", cfg.ica.n_imp}, {"max_it", cfg.ica.max_it},
                   {"beta", cfg.ica.beta},   {"zeta", cfg.ica.zeta},   {"phi", cfg.ica.phi},
                   {"revolution_rate", cfg.ica.revolution_rate}};
    meta["ba"] = {{"n_pop", cfg.ba.n_pop},         {"max_it", cfg.ba.max_it}, {"loudness", cfg.ba.loudness_init},
                  {"pulse_rate", cfg.ba.pulse_rate_init}, {"f_min", cfg.ba.f_min}, {"f_max", cfg.ba.f_max},
                  {"alpha", cfg.ba.alpha},         {"gamma", cfg.ba.gamma}, {"toward_best", cfg.ba.toward_best}};
    nlohmann::ordered_json classifiers = nlohmann::ordered_json::object();
    for (auto kind : cfg.classifiers) {
        nlohmann::ordered_json params = nlohmann::ordered_json::object();
        const auto clf_cfg = cfg.classifier_config(kind);
        for (const auto& [name, value] : clf_cfg.hyperparams()) params[name] = value;
        classifiers[std::string(to_string(kind))] = params;
    }
    meta["classifiers"] = classifiers;

    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        nlohmann::ordered_json r;
        r["classifier"] = to_string(row.classifier);
        r["mode"] = to_string(row.mode);
        r["metrics"] = metrics_json(row.metrics);
        r["mask"] = row.mask.to_string();
        r["selected_features"] = row.selected_features;
        r["n_selected"] = row.n_selected;
        r["fitness"] = round6(row.fitness);
        nlohmann::ordered_json history = nlohmann::ordered_json::array();
        for (const auto& h : row.history) history.push_back({h.iteration, round6(h.best_cost)});
        r["history"] = history;
        r["error"] = row.error ? nlohmann::ordered_json(*row.error) : nlohmann::ordered_json(nullptr);
        if (cfg.include_timings) r["seconds"] = round6(row.seconds);
        rows.push_back(std::move(r));
    }

    nlohmann::ordered_json j;
    j["metadata"] = std::move(meta);
    j["rows"] = std::move(rows);
    return j;
}

ExperimentReport report_from_json(const nlohmann::json& j) {
    try {
        ExperimentReport report;
        const auto& meta = j.at("metadata");
        auto& cfg = report.config;
        cfg.seed = meta.at("seed").get<std::uint64_t>();
        cfg.data_path = meta.at("data_path").get<std::string>();
        cfg.optimizer = parse_optimizer_kind(meta.at("optimizer").get<std::string>());
        cfg.split_fraction = meta.at("split").get<double>();
        cfg.cv_k = meta.at("cv_k").get<std::size_t>();
        cfg.fitness_feature_penalty = meta.at("fitness_feature_penalty").get<double>();
        const auto& ds = meta.at("dataset");
        report.dataset = {ds.at("n_samples").get<std::size_t>(), ds.at("n_features").get<std::size_t>(),
                          ds.at("n_positive").get<std::size_t>(), ds.at("n_negative").get<std::size_t>(),
                          ds.at("n_train").get<std::size_t>(),    ds.at("n_test").get<std::size_t>()};
        const auto& ica = meta.at("ica");
        cfg.ica.n_pop = ica.at("n_pop").get<std::size_t>();
        cfg.ica.n_imp = ica.at("n_imp").get<std::size_t>();
        cfg.ica.max_it = ica.at("max_it").get<std::size_t>();
        cfg.ica.beta = ica.at("beta").get<double>();
        cfg.ica.zeta = ica.at("zeta").get<double>();
        cfg.ica.phi = ica.at("phi").get<double>();
        cfg.ica.revolution_rate = ica.at("revolution_rate").get<double>();
        const auto& ba = meta.at("ba");
        cfg.ba.n_pop = ba.at("n_pop").get<std::size_t>();
        cfg.ba.max_it = ba.at("max_it").get<std::size_t>();
        cfg.ba.loudness_init = ba.at("loudness").get<double>();
        cfg.ba.pulse_rate_init = ba.at("pulse_rate").get<double>();
        cfg.ba.f_min = ba.at("f_min").get<double>();
        cfg.ba.f_max = ba.at("f_max").get<double>();
        cfg.ba.alpha = ba.at("alpha").get<double>();
        cfg.ba.gamma = ba.at("gamma").get<double>();
        cfg.ba.toward_best = ba.at("toward_best").get<bool>();
        cfg.classifiers.clear();
        // Classifier order follows the rows; nlohmann::json sorts object keys.
        for (const auto& r : j.at("rows")) {
            const auto kind = parse_classifier_kind(r.at("classifier").get<std::string>());
            if (std::ranges::find(cfg.classifiers, kind) == cfg.classifiers.end()) cfg.classifiers.push_back(kind);
        }
        for (auto kind : cfg.classifiers) {
            ClassifierConfig c(kind);
            for (const auto& [name, value] : meta.at("classifiers").at(std::string(to_string(kind))).items()) {
                c.set(name, value.get<double>());
            }
            if (c.hyperparams() != default_hyperparams(kind)) cfg.classifier_overrides.emplace(kind, c);
        }

        for (const auto& r : j.at("rows")) {
            ReportRow row;
            row.classifier = parse_classifier_kind(r.at("classifier").get<std::string>());
            row.mode = r.at("mode").get<std::string>() == "with_fs" ? EvaluationMode::with_fs
                                                                     : EvaluationMode::without_fs;
            row.metrics = metrics_from_json(r.at("metrics"));
            row.mask = mask_from_string(r.at("mask").get<std::string>());
            row.selected_features = r.at("selected_features").get<std::vector<std::string>>();
            row.n_selected = r.at("n_selected").get<std::size_t>();
            row.fitness = r.at("fitness").get<double>();
            for (const auto& h : r.at("history")) {
                row.history.push_back({h.at(0).get<std::size_t>(), h.at(1).get<double>()});
            }
            if (!r.at("error").is_null()) row.error = r.at("error").get<std::string>();
            if (r.contains("seconds")) {
                row.seconds = r.at("seconds").get<double>();
                cfg.include_timings = true;
            }
            report.rows.push_back(std::move(row));
        }
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("report: ") + e.what(), 0);
    }
}

std::string report_to_csv(const ExperimentReport& report) {
    std::string out = kCsvHeader;
    out += '\n';
    char buf[64];
    for (const auto& row : report.rows) {
        out += to_string(row.classifier);
        out += ',';
        out += to_string(row.mode);
        for (double v : {row.metrics.accuracy, row.metrics.sensitivity, row.metrics.specificity, row.metrics.precision,
                         row.metrics.f_score, row.metrics.kappa, row.metrics.mae, row.metrics.rmse, row.metrics.rae}) {
            std::snprintf(buf, sizeof buf, ",%.6f", round6(v));
            out += buf;
        }
        out += ',';
        out += std::to_string(row.n_selected);
        out += ',';
        for (std::size_t i = 0; i < row.selected_features.size(); ++i) {
            if (i > 0) out += ';';
            out += row.selected_features[i];
        }
        out += '\n';
    }
    return out;
}

std::string render_report(const ExperimentReport& report, ReportFormat format) {
    if (format == ReportFormat::csv) return report_to_csv(report);
    return report_to_json(report).dump(2) + "\n";
}

void emit_report(const ExperimentReport& report, ReportFormat format, const std::string& path) {
    const auto text = render_report(report, format);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open output file '" + path + "'");
    out << text;
    out.flush();
    if (!out) throw IoError("failed writing output file '" + path + "'");
}

}  // namespace wrapfs
