#ifndef DEVLAB_EXPERIMENT_HPP
#define DEVLAB_EXPERIMENT_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "devlab/config.hpp"

namespace devlab {

// one row of series.csv
struct SeriesRow {
    int trial;
    std::int64_t t;
    double value;
    double running_max;
};

// one row of report.csv
struct MetricRow {
    std::string metric;
    double estimate;
    double stderr_;   // NaN when not applicable
    double target;    // NaN when informational
    double tolerance; // NaN when informational
    std::string verdict; // "PASS" / "FAIL" / "INFO"
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<SeriesRow> series;    // ordered by (trial, t)
    std::vector<MetricRow> metrics;
    bool pass = false;
    double wall_seconds = 0.0;        // never serialized
    // median fitted line for the plot overlay (NaN when no fit exists)
    double overlay_slope = std::numeric_limits<double>::quiet_NaN();
    double overlay_intercept = std::numeric_limits<double>::quiet_NaN();
};

// Runs the configured experiment with `jobs`-way trial parallelism and
// writes report.csv, series.csv and plot.svg into config.output_dir.
ExperimentReport run(const ExperimentConfig& config, int jobs = 0);

void write_report_csv(const ExperimentReport& report, const std::string& path);
void write_series_csv(const ExperimentReport& report, const std::string& path);
void write_plot_svg(const ExperimentReport& report, const std::string& path);

} // namespace devlab

#endif
