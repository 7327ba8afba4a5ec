// devlab: reproducible renormalization / deviation experiments

#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "devlab/error.hpp"
#include "devlab/experiment.hpp"
#include "devlab/lyapunov.hpp"
#include "devlab/parallel.hpp"
#include "devlab/rng.hpp"

namespace {

int exit_code_for(const devlab::Error& e) {
    switch (e.code()) {
        case devlab::ErrorCode::InvalidConfig:
        case devlab::ErrorCode::InvalidArgument:
        case devlab::ErrorCode::RejectReducible:
        case devlab::ErrorCode::RejectNonPositive:
            return 2;
        default:
            return 1;
    }
}

void apply_seed_env(devlab::ExperimentConfig& cfg) {
    if (const char* env = std::getenv("DEVLAB_SEED")) {
        cfg.seed = std::strtoull(env, nullptr, 10);
    }
}

void print_report(const devlab::ExperimentReport& report) {
    std::printf("experiment: %s  (%d trial%s, seed %llu)\n",
                devlab::experiment_kind_name(report.config.experiment),
                report.config.trials, report.config.trials == 1 ? "" : "s",
                static_cast<unsigned long long>(report.config.seed));
    std::printf("%-26s %14s %12s %12s %10s %s\n", "metric", "estimate", "stderr",
                "target", "tol", "verdict");
    for (const auto& row : report.metrics) {
        auto cell = [](double v) {
            if (std::isnan(v)) return std::string("-");
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6g", v);
            return std::string(buf);
        };
        std::printf("%-26s %14s %12s %12s %10s %s\n", row.metric.c_str(),
                    cell(row.estimate).c_str(), cell(row.stderr_).c_str(),
                    cell(row.target).c_str(), cell(row.tolerance).c_str(),
                    row.verdict.c_str());
    }
    std::printf("outputs: %s/{report.csv,series.csv,plot.svg}\n",
                report.config.output_dir.c_str());
    std::printf("%s (%.2f s)\n", report.pass ? "PASS" : "FAIL", report.wall_seconds);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"renormalization and deviation-spectrum experiment runner"};
    app.require_subcommand(1);

    // devlab run <config> [--jobs N] [--output DIR]
    auto* run_cmd = app.add_subcommand("run", "run an experiment described by a config file");
    std::string config_path;
    int jobs = 0;
    std::string output_override;
    run_cmd->add_option("config", config_path, "key = value config file")->required();
    run_cmd->add_option("--jobs", jobs, "trial parallelism (default: logical cores)");
    run_cmd->add_option("--output", output_override, "override output_dir");

    // devlab spectrum --perm ABCD/DCBA --steps 1e6 --seed 42
    auto* spec_cmd = app.add_subcommand("spectrum", "quick Lyapunov spectrum estimate");
    std::string perm_text = "ABCD/DCBA";
    double steps_opt = 1e5;
    std::uint64_t seed = 42;
    int k_opt = 0;
    int trials = 1;
    spec_cmd->add_option("--perm", perm_text, "permutation TOP/BOTTOM")->required();
    spec_cmd->add_option("--steps", steps_opt, "renormalization steps (e.g. 1e6)");
    spec_cmd->add_option("--seed", seed, "base seed");
    spec_cmd->add_option("--k", k_opt, "number of exponents (default: full)");
    spec_cmd->add_option("--trials", trials, "independent runs to merge");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            devlab::ExperimentConfig cfg = devlab::load_config_file(config_path);
            apply_seed_env(cfg);
            if (!output_override.empty()) cfg.output_dir = output_override;
            devlab::ExperimentReport report = devlab::run(cfg, jobs);
            print_report(report);
            return report.pass ? 0 : 1;
        }
        if (*spec_cmd) {
            auto perm = devlab::LabeledPermutation::parse(perm_text);
            if (const char* env = std::getenv("DEVLAB_SEED"))
                seed = std::strtoull(env, nullptr, 10);
            int k = k_opt > 0 ? k_opt : perm.size();
            std::vector<devlab::SpectrumReport> parts;
            for (int t = 0; t < trials; ++t)
                parts.push_back(devlab::estimate_spectrum(
                    perm, devlab::trial_seed(seed, static_cast<std::uint64_t>(t)),
                    static_cast<std::uint64_t>(steps_opt), k));
            auto report = devlab::merge_reports(parts);
            std::printf("perm %s: d=%d g=%d sigma=%d, %llu zorich steps, "
                        "teich time %.1f\n",
                        perm.to_string().c_str(), report.d, report.g, report.sigma,
                        static_cast<unsigned long long>(report.steps),
                        report.teich_time);
            for (std::size_t i = 0; i < report.exponents.size(); ++i)
                std::printf("  nu_%zu = %+.6f  (stderr %.6f)\n", i + 1,
                            report.exponents[i], report.stderrs[i]);
            auto predicted = devlab::predict_deviation_exponents(report);
            std::printf("  predicted deviation exponents:");
            for (double p : predicted) std::printf(" %.4f", p);
            std::printf("\n  sobolev orders:");
            for (double s : devlab::sobolev_order_report(report))
                std::printf(" %.4f", s < 0.0 ? 0.0 : s);
            std::printf("\n");
            return 0;
        }
    } catch (const devlab::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
