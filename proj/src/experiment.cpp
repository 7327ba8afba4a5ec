#include "devlab/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "devlab/deviation.hpp"
#include "devlab/error.hpp"
#include "devlab/homogeneous.hpp"
#include "devlab/lyapunov.hpp"
#include "devlab/parallel.hpp"
#include "devlab/rng.hpp"

namespace devlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double default_tolerance(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::lyapunov: return 0.02;
        case ExperimentKind::structure: return 0.03;
        case ExperimentKind::torus: return 0.1;
        default: return 0.05;
    }
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct ObservableSpec {
    enum class Kind { trig, piecewise_linear, indicator_symbol, indicator_range, constant };
    Kind kind = Kind::trig;
    int m = 1;
    int symbol = 0;
    double a = 0.0, b = 0.5, c = 1.0;
};

ObservableSpec parse_observable_spec(const std::string& text, int d) {
    ObservableSpec spec;
    auto colon = text.find(':');
    std::string name = text.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (name == "trigonometric" || name == "trig") {
        spec.kind = ObservableSpec::Kind::trig;
        spec.m = arg.empty() ? 1 : std::stoi(arg);
        if (spec.m < 1)
            throw Error(ErrorCode::InvalidConfig, "observable order must be >= 1");
    } else if (name == "piecewise_linear" || name == "pl") {
        spec.kind = ObservableSpec::Kind::piecewise_linear;
    } else if (name == "indicator") {
        if (arg.size() == 1 && arg[0] >= 'A' && arg[0] <= 'Z') {
            spec.kind = ObservableSpec::Kind::indicator_symbol;
            spec.symbol = arg[0] - 'A';
            if (spec.symbol >= d)
                throw Error(ErrorCode::InvalidConfig,
                            "indicator symbol out of range: " + arg);
        } else {
            auto comma = arg.find(',');
            if (comma == std::string::npos)
                throw Error(ErrorCode::InvalidConfig,
                            "indicator needs a symbol or a,b bounds");
            spec.kind = ObservableSpec::Kind::indicator_range;
            spec.a = std::stod(arg.substr(0, comma));
            spec.b = std::stod(arg.substr(comma + 1));
        }
    } else if (name == "constant") {
        spec.kind = ObservableSpec::Kind::constant;
        spec.c = arg.empty() ? 1.0 : std::stod(arg);
    } else {
        throw Error(ErrorCode::InvalidConfig, "unknown observable '" + text + "'");
    }
    return spec;
}

Observable make_observable(const ObservableSpec& spec, const IntervalExchange& iet) {
    switch (spec.kind) {
        case ObservableSpec::Kind::trig:
            return Observable::trigonometric(spec.m);
        case ObservableSpec::Kind::piecewise_linear:
            return Observable::piecewise_linear();
        case ObservableSpec::Kind::indicator_symbol: {
            int pos = iet.permutation().position_in_top(spec.symbol);
            double a = iet.top_prefix()[static_cast<std::size_t>(pos)];
            double b = iet.top_prefix()[static_cast<std::size_t>(pos + 1)];
            return Observable::indicator(a, b);
        }
        case ObservableSpec::Kind::indicator_range:
            return Observable::indicator(spec.a, spec.b);
        case ObservableSpec::Kind::constant:
            return Observable::constant(spec.c);
    }
    return Observable::trigonometric(1);
}

struct TrialOutcome {
    DeviationSeries series;
    DeviationFit fit{};
    bool fitted = false;
};

void append_series_rows(ExperimentReport& report, int trial,
                        const DeviationSeries& series) {
    double running = 0.0;
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        running = std::max(running, series.values[i]);
        report.series.push_back(
            SeriesRow{trial, series.times[i], series.values[i], running});
    }
}

MetricRow make_row(const std::string& metric, double estimate, double stderr_,
                   double target, double tolerance, bool pass) {
    return MetricRow{metric, estimate, stderr_, target, tolerance,
                     pass ? "PASS" : "FAIL"};
}

MetricRow info_row(const std::string& metric, double estimate, double stderr_ = kNaN) {
    return MetricRow{metric, estimate, stderr_, kNaN, kNaN, "INFO"};
}

void overlay_median_fit(ExperimentReport& report, const std::vector<TrialOutcome>& outcomes) {
    std::vector<double> slopes, intercepts;
    for (const auto& o : outcomes)
        if (o.fitted) {
            slopes.push_back(o.fit.slope);
            intercepts.push_back(o.fit.intercept);
        }
    if (slopes.empty()) return;
    report.overlay_slope = median(slopes);
    report.overlay_intercept = median(intercepts);
}

// ------------------------------------------------------------------ lyapunov

void run_spectrum_experiment(const ExperimentConfig& cfg, int jobs,
                             ExperimentReport& report) {
    LabeledPermutation perm = LabeledPermutation::parse(cfg.perm);
    int d = perm.size();
    bool structure = cfg.experiment == ExperimentKind::structure;
    int k = structure ? d : (cfg.k > 0 ? cfg.k : d);
    if (k < 1 || k > d)
        throw Error(ErrorCode::InvalidConfig, "k must lie in [1, d]");
    double tol = cfg.tolerance > 0.0 ? cfg.tolerance : default_tolerance(cfg.experiment);

    std::vector<SpectrumReport> parts(static_cast<std::size_t>(cfg.trials));
    run_trials(cfg.trials, jobs, [&](int t) {
        parts[static_cast<std::size_t>(t)] = estimate_spectrum(
            perm, trial_seed(cfg.seed, static_cast<std::uint64_t>(t)), cfg.steps, k);
    });

    // convergence series: per-batch estimate of the tracked exponent
    int tracked = k >= 2 ? 1 : 0;
    for (int t = 0; t < cfg.trials; ++t) {
        const auto& part = parts[static_cast<std::size_t>(t)];
        double running = 0.0;
        for (std::size_t b = 0; b < part.batch_steps.size(); ++b) {
            double v = part.batch_exponents[b][static_cast<std::size_t>(tracked)];
            running = std::max(running, std::abs(v));
            report.series.push_back(SeriesRow{
                t, static_cast<std::int64_t>(part.batch_steps[b]), v, running});
        }
    }

    SpectrumReport merged = merge_reports(parts);
    bool pass;
    if (structure) {
        SpectrumStructure st = full_spectrum_structure(merged);
        bool sym_ok = st.symmetry_defect < tol;
        bool zero_ok = st.near_zero_count == st.expected_zero_count;
        double top_tol = cfg.tolerance > 0.0 ? cfg.tolerance : 0.02;
        bool top_ok = st.top_gap < top_tol;
        report.metrics.push_back(
            make_row("symmetry_defect", st.symmetry_defect, kNaN, 0.0, tol, sym_ok));
        report.metrics.push_back(make_row("near_zero_count", st.near_zero_count, kNaN,
                                          st.expected_zero_count, 0.0, zero_ok));
        report.metrics.push_back(make_row("top_gap", st.top_gap, kNaN, 0.0, top_tol, top_ok));
        pass = sym_ok && zero_ok && top_ok;
    } else {
        double top_gap = std::abs(merged.exponents.front() - 1.0);
        pass = top_gap < tol;
        report.metrics.push_back(
            make_row("nu_1", merged.exponents.front(), merged.stderrs.front(), 1.0, tol, pass));
    }
    for (std::size_t i = structure ? 0 : 1; i < merged.exponents.size(); ++i)
        report.metrics.push_back(info_row("nu_" + std::to_string(i + 1),
                                          merged.exponents[i], merged.stderrs[i]));
    auto predicted = predict_deviation_exponents(merged);
    for (std::size_t i = 0; i < predicted.size(); ++i)
        report.metrics.push_back(
            info_row("predicted_deviation_" + std::to_string(i + 1), predicted[i]));
    auto orders = sobolev_order_report(merged);
    for (std::size_t i = 0; i < orders.size(); ++i)
        report.metrics.push_back(info_row("sobolev_order_" + std::to_string(i + 1),
                                          std::max(0.0, orders[i])));
    report.metrics.push_back(info_row("teich_time", merged.teich_time));
    report.pass = pass;
}

// ------------------------------------------------- deviation-style experiments

void run_deviation_experiment(const ExperimentConfig& cfg, int jobs,
                              ExperimentReport& report) {
    LabeledPermutation perm = LabeledPermutation::parse(cfg.perm);
    int d = perm.size();
    double tol = cfg.tolerance > 0.0 ? cfg.tolerance : default_tolerance(cfg.experiment);
    double t_min = std::cbrt(static_cast<double>(cfg.t_max));
    bool homology = cfg.experiment == ExperimentKind::homology;
    ObservableSpec ospec;
    if (!homology) {
        ospec = parse_observable_spec(cfg.observable, d);
        if (ospec.kind == ObservableSpec::Kind::constant && ospec.c != 0.0)
            throw Error(ErrorCode::NonZeroMean,
                        "deviation fit requested for an observable with nonzero mean");
    }

    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(cfg.trials));
    run_trials(cfg.trials, jobs, [&](int t) {
        Rng rng(trial_seed(cfg.seed, static_cast<std::uint64_t>(t)));
        IntervalExchange iet = new_iet(perm, rng.simplex(d));
        double x0 = rng.uniform01();
        TrialOutcome& out = outcomes[static_cast<std::size_t>(t)];
        if (homology) {
            out.series = homology_deviation(iet, x0, cfg.t_max, cfg.schedule_ratio);
        } else {
            Observable f = make_observable(ospec, iet);
            ensure_mean_zero(f);
            out.series = observable_sum(iet, f, x0, cfg.t_max, cfg.schedule_ratio);
        }
        out.fit = fit_exponent(out.series, t_min);
        out.fitted = true;
    });

    std::vector<double> slopes, r2s;
    for (int t = 0; t < cfg.trials; ++t) {
        append_series_rows(report, t, outcomes[static_cast<std::size_t>(t)].series);
        slopes.push_back(outcomes[static_cast<std::size_t>(t)].fit.slope);
        r2s.push_back(outcomes[static_cast<std::size_t>(t)].fit.r2);
    }
    overlay_median_fit(report, outcomes);

    double med = median(slopes);
    bool pass = true;
    if (cfg.target >= 0.0) {
        double gap = std::abs(med - cfg.target);
        pass = gap < tol;
        report.metrics.push_back(make_row("median_slope", med, kNaN, cfg.target, tol, pass));
    } else {
        report.metrics.push_back(info_row("median_slope", med));
    }
    std::vector<double> dev;
    for (double s : slopes) dev.push_back(std::abs(s - med));
    report.metrics.push_back(info_row("slope_mad", median(dev)));
    report.metrics.push_back(info_row("median_r2", median(r2s)));
    report.pass = pass;
}

// ----------------------------------------------------------------- baselines

void run_torus_experiment(const ExperimentConfig& cfg, int jobs,
                          ExperimentReport& report) {
    double alpha = cfg.alpha;
    double tol = cfg.tolerance > 0.0 ? cfg.tolerance : default_tolerance(cfg.experiment);
    double t_min = std::cbrt(static_cast<double>(cfg.t_max));
    LabeledPermutation perm = LabeledPermutation::parse("AB/BA");
    ObservableSpec ospec = parse_observable_spec(cfg.observable, 2);

    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(cfg.trials));
    run_trials(cfg.trials, jobs, [&](int t) {
        Rng rng(trial_seed(cfg.seed, static_cast<std::uint64_t>(t)));
        double x0 = rng.uniform01();
        IntervalExchange iet = new_iet(perm, {1.0 - alpha, alpha});
        Observable f = make_observable(ospec, iet);
        ensure_mean_zero(f);
        TrialOutcome& out = outcomes[static_cast<std::size_t>(t)];
        out.series = observable_sum(iet, f, x0, cfg.t_max, cfg.schedule_ratio);
        out.fit = fit_exponent(out.series, t_min);
        out.fitted = true;
    });

    std::vector<double> slopes;
    for (int t = 0; t < cfg.trials; ++t) {
        append_series_rows(report, t, outcomes[static_cast<std::size_t>(t)].series);
        slopes.push_back(outcomes[static_cast<std::size_t>(t)].fit.slope);
    }
    overlay_median_fit(report, outcomes);

    double med = median(slopes);
    bool slope_ok = med < tol;

    // Denjoy-Koksma levels at every convergent denominator within t_max
    Rng rng(trial_seed(cfg.seed, 0));
    double x0 = rng.uniform01();
    IntervalExchange iet = new_iet(perm, {1.0 - alpha, alpha});
    Observable f = make_observable(ospec, iet);
    int n_levels = 1;
    for (int n = 1; n <= 40; ++n) {
        try {
            ContinuedFraction cf = continued_fraction(alpha, n);
            if (cf.q.back() > cfg.t_max) break;
            n_levels = n;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::RationalAlpha && e.code() != ErrorCode::Overflow)
                throw;
            break;
        }
    }
    DenjoyKoksmaReport dk = denjoy_koksma_check(alpha, f, x0, n_levels);

    report.metrics.push_back(make_row("median_slope", med, kNaN, 0.0, tol, slope_ok));
    report.metrics.push_back(make_row("dk_worst_excess", dk.worst_excess, kNaN, 0.0,
                                      1e-8, dk.all_pass));
    report.metrics.push_back(info_row("dk_levels", static_cast<double>(dk.levels.size())));
    report.pass = slope_ok && dk.all_pass;
}

void run_heisenberg_experiment(const ExperimentConfig& cfg, int jobs,
                               ExperimentReport& report) {
    double alpha = cfg.alpha;
    double tol = cfg.tolerance > 0.0 ? cfg.tolerance : default_tolerance(cfg.experiment);
    double target = cfg.target >= 0.0 ? cfg.target : 0.5;
    double t_min = std::cbrt(static_cast<double>(cfg.t_max));

    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(cfg.trials));
    run_trials(cfg.trials, jobs, [&](int t) {
        Rng rng(trial_seed(cfg.seed, static_cast<std::uint64_t>(t)));
        double beta = cfg.beta >= 0.0 ? cfg.beta : rng.uniform01();
        double x0 = rng.uniform01();
        double y0 = rng.uniform01();
        TrialOutcome& out = outcomes[static_cast<std::size_t>(t)];
        out.series = heisenberg_sum(alpha, beta, x0, y0, cfg.t_max, cfg.schedule_ratio);
        out.fit = fit_exponent(out.series, t_min);
        out.fitted = true;
    });

    std::vector<double> slopes;
    for (int t = 0; t < cfg.trials; ++t) {
        append_series_rows(report, t, outcomes[static_cast<std::size_t>(t)].series);
        slopes.push_back(outcomes[static_cast<std::size_t>(t)].fit.slope);
    }
    overlay_median_fit(report, outcomes);

    double med = median(slopes);
    double gap = std::abs(med - target);
    bool pass = gap < tol;
    report.metrics.push_back(make_row("median_slope", med, kNaN, target, tol, pass));
    std::vector<double> dev;
    for (double s : slopes) dev.push_back(std::abs(s - med));
    report.metrics.push_back(info_row("slope_mad", median(dev)));
    report.pass = pass;
}

void run_end2end_experiment(const ExperimentConfig& cfg, int jobs,
                            ExperimentReport& report) {
    LabeledPermutation perm = LabeledPermutation::parse(cfg.perm);
    int d = perm.size();
    double tol = cfg.tolerance > 0.0 ? cfg.tolerance : default_tolerance(cfg.experiment);
    double t_min = std::cbrt(static_cast<double>(cfg.t_max));
    int k = cfg.k > 0 ? std::max(cfg.k, 2) : std::min(2, d);

    const int spectrum_runs = 8;
    std::vector<SpectrumReport> parts(spectrum_runs);
    run_trials(spectrum_runs, jobs, [&](int t) {
        parts[static_cast<std::size_t>(t)] = estimate_spectrum(
            perm, trial_seed(cfg.seed ^ 0xE2E2E2E2ULL, static_cast<std::uint64_t>(t)),
            cfg.steps, k);
    });
    SpectrumReport merged = merge_reports(parts);
    auto predicted = predict_deviation_exponents(merged);

    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(cfg.trials));
    run_trials(cfg.trials, jobs, [&](int t) {
        Rng rng(trial_seed(cfg.seed, static_cast<std::uint64_t>(t)));
        IntervalExchange iet = new_iet(perm, rng.simplex(d));
        double x0 = rng.uniform01();
        TrialOutcome& out = outcomes[static_cast<std::size_t>(t)];
        out.series = homology_deviation(iet, x0, cfg.t_max, cfg.schedule_ratio);
        out.fit = fit_exponent(out.series, t_min);
        out.fitted = true;
    });
    std::vector<DeviationFit> fits;
    for (int t = 0; t < cfg.trials; ++t) {
        append_series_rows(report, t, outcomes[static_cast<std::size_t>(t)].series);
        fits.push_back(outcomes[static_cast<std::size_t>(t)].fit);
    }
    overlay_median_fit(report, outcomes);

    SpectrumComparison cmp = compare_spectrum(fits, predicted, tol);
    report.metrics.push_back(info_row("nu_1", merged.exponents.front(),
                                      merged.stderrs.front()));
    if (merged.exponents.size() > 1)
        report.metrics.push_back(
            info_row("nu_2", merged.exponents[1], merged.stderrs[1]));
    report.metrics.push_back(info_row("median_slope", cmp.median_slope));
    report.metrics.push_back(info_row("slope_mad", cmp.dispersion));
    if (cmp.vacuous) {
        report.metrics.push_back(MetricRow{"deviation_gap", kNaN, kNaN, kNaN, tol,
                                           "PASS"});
    } else {
        report.metrics.push_back(
            make_row("deviation_gap", cmp.gap, kNaN, 0.0, tol, cmp.pass));
    }
    report.pass = cmp.pass;
}

} // namespace

ExperimentReport run(const ExperimentConfig& config, int jobs) {
    auto t0 = std::chrono::steady_clock::now();
    if (jobs <= 0) jobs = hardware_jobs();
    ExperimentReport report;
    report.config = config;
    switch (config.experiment) {
        case ExperimentKind::lyapunov:
        case ExperimentKind::structure:
            run_spectrum_experiment(config, jobs, report);
            break;
        case ExperimentKind::homology:
        case ExperimentKind::observable:
            run_deviation_experiment(config, jobs, report);
            break;
        case ExperimentKind::torus:
            run_torus_experiment(config, jobs, report);
            break;
        case ExperimentKind::heisenberg:
            run_heisenberg_experiment(config, jobs, report);
            break;
        case ExperimentKind::end2end:
            run_end2end_experiment(config, jobs, report);
            break;
    }
    std::sort(report.series.begin(), report.series.end(),
              [](const SeriesRow& a, const SeriesRow& b) {
                  return a.trial != b.trial ? a.trial < b.trial : a.t < b.t;
              });
    std::filesystem::create_directories(config.output_dir);
    write_report_csv(report, config.output_dir + "/report.csv");
    write_series_csv(report, config.output_dir + "/series.csv");
    write_plot_svg(report, config.output_dir + "/plot.svg");
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

} // namespace devlab
