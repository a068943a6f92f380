#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "wrapfs/error.hpp"
#include "wrapfs/pipeline.hpp"

namespace wrapfs {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double to_double(std::string_view key, std::string_view value) {
    double v = 0.0;
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
        throw ConfigError("'" + std::string(key) + "' expects a number, got '" + std::string(value) + "'");
    }
    return v;
}

std::uint64_t to_uint(std::string_view key, std::string_view value) {
    std::uint64_t v = 0;
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, v);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("'" + std::string(key) + "' expects a non-negative integer, got '" + std::string(value) +
                          "'");
    }
    return v;
}

bool to_bool(std::string_view key, std::string_view value) {
    if (value == "1" || value == "true") return true;
    if (value == "0" || value == "false") return false;
    throw ConfigError("'" + std::string(key) + "' expects true or false");
}

std::vector<ClassifierKind> to_classifiers(std::string_view value) {
    if (value == "all") return {kAllClassifiers.begin(), kAllClassifiers.end()};
    std::vector<ClassifierKind> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        const auto comma = value.find(',', start);
        const auto item = trim(value.substr(start, comma == std::string_view::npos ? value.npos : comma - start));
        if (!item.empty()) out.push_back(parse_classifier_kind(item));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

void apply_ica(IcaConfig& ica, std::string_view field, std::string_view key, std::string_view value) {
    if (field == "n_pop") ica.n_pop = to_uint(key, value);
    else if (field == "n_imp") ica.n_imp = to_uint(key, value);
    else if (field == "max_it") ica.max_it = to_uint(key, value);
    else if (field == "beta") ica.beta = to_double(key, value);
    else if (field == "zeta") ica.zeta = to_double(key, value);
    else if (field == "phi") ica.phi = to_double(key, value);
    else if (field == "revolution_rate") ica.revolution_rate = to_double(key, value);
    else throw ConfigError("unknown key '" + std::string(key) + "'");
}

void apply_ba(BaConfig& ba, std::string_view field, std::string_view key, std::string_view value) {
    if (field == "n_pop") ba.n_pop = to_uint(key, value);
    else if (field == "max_it") ba.max_it = to_uint(key, value);
    else if (field == "loudness") ba.loudness_init = to_double(key, value);
    else if (field == "pulse_rate") ba.pulse_rate_init = to_double(key, value);
    else if (field == "f_min") ba.f_min = to_double(key, value);
    else if (field == "f_max") ba.f_max = to_double(key, value);
    else if (field == "alpha") ba.alpha = to_double(key, value);
    else if (field == "gamma") ba.gamma = to_double(key, value);
    else if (field == "toward_best") ba.toward_best = to_bool(key, value);
    else throw ConfigError("unknown key '" + std::string(key) + "'");
}

void apply_key(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
    if (key == "data") cfg.data_path = value;
    else if (key == "optimizer") cfg.optimizer = parse_optimizer_kind(value);
    else if (key == "classifiers") cfg.classifiers = to_classifiers(value);
    else if (key == "seed") cfg.seed = to_uint(key, value);
    else if (key == "split") cfg.split_fraction = to_double(key, value);
    else if (key == "cv_k") cfg.cv_k = to_uint(key, value);
    else if (key == "output") cfg.output_path = value;
    else if (key == "format") cfg.output_format = parse_report_format(value);
    else if (key == "timings") cfg.include_timings = to_bool(key, value);
    else if (key == "fitness_feature_penalty") cfg.fitness_feature_penalty = to_double(key, value);
    else {
        const auto dot = key.find('.');
        if (dot == std::string_view::npos) throw ConfigError("unknown key '" + std::string(key) + "'");
        const auto scope = key.substr(0, dot);
        const auto field = key.substr(dot + 1);
        if (scope == "ica") {
            apply_ica(cfg.ica, field, key, value);
        } else if (scope == "ba") {
            apply_ba(cfg.ba, field, key, value);
        } else {
            const auto kind = parse_classifier_kind(scope);
            auto [it, inserted] = cfg.classifier_overrides.try_emplace(kind, kind);
            it->second.set(field, to_double(key, value));
        }
    }
}

}  // namespace

void apply_config_text(std::istream& in, ExperimentConfig& cfg) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
        }
        try {
            apply_key(cfg, trim(view.substr(0, eq)), trim(view.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
        }
    }
}

void apply_config_file(const std::string& path, ExperimentConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    apply_config_text(in, cfg);
}

}  // namespace wrapfs
