// wrapfs: wrapper feature selection experiments on tabular binary data.
//
//   wrapfs run --data data/wdbc.data --optimizer ba --classifiers all --seed 1 --output report.json
//   wrapfs bench-opt --function sphere --optimizer ica
//
// Exit codes: 0 success, 1 configuration error, 2 I/O or parse error.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "wrapfs/benchmarks.hpp"
#include "wrapfs/error.hpp"
#include "wrapfs/pipeline.hpp"
#include "wrapfs/report.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;

std::uint64_t parse_seed(const std::string& text, const char* origin) {
    try {
        std::size_t used = 0;
        const auto v = std::stoull(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw wrapfs::ConfigError(std::string(origin) + " must be a non-negative integer, got '" + text + "'");
    }
}

void print_summary(const wrapfs::ExperimentReport& report) {
    std::fprintf(stderr, "%-4s %-10s %9s %9s %9s %6s\n", "clf", "mode", "accuracy", "f_score", "kappa", "n_sel");
    for (const auto& row : report.rows) {
        const auto clf = std::string(wrapfs::to_string(row.classifier));
        const auto mode = std::string(wrapfs::to_string(row.mode));
        if (row.error) {
            std::fprintf(stderr, "%-4s %-10s error: %s\n", clf.c_str(), mode.c_str(), row.error->c_str());
            continue;
        }
        std::fprintf(stderr, "%-4s %-10s %9.4f %9.4f %9.4f %6zu\n", clf.c_str(), mode.c_str(), row.metrics.accuracy,
                     row.metrics.f_score, row.metrics.kappa, row.n_selected);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wrapper feature selection with ICA / bat algorithm search"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Evaluate classifiers with and without wrapper feature selection");
    std::string data_path, optimizer, classifiers, seed_text, output, format, config_path;
    double split = 0.0;
    std::size_t cv_k = 0;
    bool timings = false;
    run->add_option("--data", data_path, "Dataset file (UCI wdbc.data format or CSV with a 'label' column)");
    run->add_option("--optimizer", optimizer, "ica | ba | none");
    run->add_option("--classifiers", classifiers, "Comma-separated list (knn,nb,lda,lr,dt,rf,ab,svm,mlp) or 'all'");
    run->add_option("--seed", seed_text, "Experiment seed (overrides WRAPFS_SEED)");
    run->add_option("--split", split, "Training fraction");
    run->add_option("--cv-k", cv_k, "Folds for the wrapper fitness");
    run->add_option("--output", output, "Report path (stdout when omitted)");
    run->add_option("--format", format, "json | csv");
    run->add_option("--config", config_path, "key=value file overriding defaults");
    run->add_flag("--timings", timings, "Include wall-clock seconds per row");

    // bench-opt
    auto* bench = app.add_subcommand("bench-opt", "Optimizer-only convergence check on a test function");
    std::string function = "sphere", bench_optimizer = "ba", bench_seed_text, bench_config;
    std::size_t dim = 10;
    bench->add_option("--function", function, "sphere | onemax");
    bench->add_option("--optimizer", bench_optimizer, "ica | ba");
    bench->add_option("--dim", dim, "Search-space dimension");
    bench->add_option("--seed", bench_seed_text, "Seed (overrides WRAPFS_SEED)");
    bench->add_option("--config", bench_config, "key=value file with ica.* / ba.* overrides");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    const char* env_seed = std::getenv("WRAPFS_SEED");
    try {
        if (*run) {
            wrapfs::ExperimentConfig cfg;
            if (env_seed != nullptr) cfg.seed = parse_seed(env_seed, "WRAPFS_SEED");
            if (!config_path.empty()) wrapfs::apply_config_file(config_path, cfg);
            if (!data_path.empty()) cfg.data_path = data_path;
            if (!optimizer.empty()) cfg.optimizer = wrapfs::parse_optimizer_kind(optimizer);
            if (!classifiers.empty()) {
                std::istringstream line("classifiers=" + classifiers);
                wrapfs::apply_config_text(line, cfg);
            }
            if (!seed_text.empty()) cfg.seed = parse_seed(seed_text, "--seed");
            if (run->count("--split") > 0) cfg.split_fraction = split;
            if (run->count("--cv-k") > 0) cfg.cv_k = cv_k;
            if (!output.empty()) cfg.output_path = output;
            if (!format.empty()) cfg.output_format = wrapfs::parse_report_format(format);
            if (timings) cfg.include_timings = true;
            if (cfg.data_path.empty()) throw wrapfs::ConfigError("--data is required");
            cfg.validate();

            const auto report = wrapfs::run_experiment(cfg);
            if (cfg.output_path.empty()) {
                std::cout << wrapfs::render_report(report, cfg.output_format);
            } else {
                wrapfs::emit_report(report, cfg.output_format, cfg.output_path);
            }
            print_summary(report);
        } else if (*bench) {
            wrapfs::ExperimentConfig cfg;
            if (!bench_config.empty()) wrapfs::apply_config_file(bench_config, cfg);
            std::uint64_t seed = cfg.seed;
            if (env_seed != nullptr) seed = parse_seed(env_seed, "WRAPFS_SEED");
            if (!bench_seed_text.empty()) seed = parse_seed(bench_seed_text, "--seed");
            const auto cost = wrapfs::benchmarks::by_name(function);
            const auto kind = wrapfs::parse_optimizer_kind(bench_optimizer);
            wrapfs::OptimizeResult result;
            if (kind == wrapfs::OptimizerKind::ica) {
                cfg.ica.seed = seed;
                result = wrapfs::ica_optimize(cost, dim, cfg.ica);
            } else if (kind == wrapfs::OptimizerKind::ba) {
                cfg.ba.seed = seed;
                result = wrapfs::ba_optimize(cost, dim, cfg.ba);
            } else {
                throw wrapfs::ConfigError("bench-opt needs --optimizer ica or ba");
            }
            std::printf("function=%s optimizer=%s dim=%zu seed=%llu\n", function.c_str(), bench_optimizer.c_str(),
                        dim, static_cast<unsigned long long>(seed));
            std::printf("evaluations=%zu best_cost=%.9g mask=%s\n", result.evaluations, result.best_cost,
                        result.best_mask.to_string().c_str());
            for (const auto& h : result.history) std::printf("%zu %.9g\n", h.iteration, h.best_cost);
        }
    } catch (const wrapfs::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const wrapfs::IoError& e) {
        std::fprintf(stderr, "I/O error: %s\n", e.what());
        return kExitIo;
    } catch (const wrapfs::ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return kExitIo;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }
    return 0;
}
