#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "devlab/error.hpp"
#include "devlab/experiment.hpp"

namespace devlab {

namespace {

// RFC 4180: CRLF record separators; all our fields are plain, no quoting
constexpr const char* kCrlf = "\r\n";

std::string fmt(double v) {
    if (std::isnan(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(std::int64_t v) { return std::to_string(v); }

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    return out;
}

} // namespace

void write_report_csv(const ExperimentReport& report, const std::string& path) {
    auto out = open_out(path);
    out << "metric,estimate,stderr,target,tolerance,verdict" << kCrlf;
    for (const auto& row : report.metrics) {
        out << row.metric << ',' << fmt(row.estimate) << ',' << fmt(row.stderr_) << ','
            << fmt(row.target) << ',' << fmt(row.tolerance) << ',' << row.verdict
            << kCrlf;
    }
}

void write_series_csv(const ExperimentReport& report, const std::string& path) {
    auto out = open_out(path);
    out << "trial,T,value,running_max" << kCrlf;
    for (const auto& row : report.series) {
        out << row.trial << ',' << fmt(row.t) << ',' << fmt(row.value) << ','
            << fmt(row.running_max) << kCrlf;
    }
}

namespace {

struct PlotBox {
    double x0, x1, y0, y1;          // data bounds in log10
    double px0, px1, py0, py1;      // pixel bounds

    double px(double x) const { return px0 + (x - x0) / (x1 - x0) * (px1 - px0); }
    double py(double y) const { return py0 - (y - y0) / (y1 - y0) * (py0 - py1); }
};

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

} // namespace

void write_plot_svg(const ExperimentReport& report, const std::string& path) {
    auto out = open_out(path);
    const int width = 720, height = 540;

    // usable points: T >= 1 and positive running max
    double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
    for (const auto& row : report.series) {
        if (row.t < 1 || !(row.running_max > 0.0)) continue;
        double lx = std::log10(static_cast<double>(row.t));
        double ly = std::log10(row.running_max);
        x_min = std::min(x_min, lx);
        x_max = std::max(x_max, lx);
        y_min = std::min(y_min, ly);
        y_max = std::max(y_max, ly);
    }
    bool empty = x_min > x_max;
    if (empty) { x_min = 0; x_max = 1; y_min = 0; y_max = 1; }
    if (x_max - x_min < 1e-9) x_max = x_min + 1.0;
    if (y_max - y_min < 1e-9) y_max = y_min + 1.0;

    PlotBox box{x_min, x_max, y_min, y_max, 70.0, width - 20.0, height - 50.0, 20.0};

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
        << "\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"14\" text-anchor=\"middle\" "
        << "font-family=\"monospace\" font-size=\"13\">"
        << experiment_kind_name(report.config.experiment)
        << " (log10 T vs log10 running max)</text>\n";

    // axes
    out << "<line x1=\"" << coord(box.px0) << "\" y1=\"" << coord(box.py0) << "\" x2=\""
        << coord(box.px1) << "\" y2=\"" << coord(box.py0)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<line x1=\"" << coord(box.px0) << "\" y1=\"" << coord(box.py0) << "\" x2=\""
        << coord(box.px0) << "\" y2=\"" << coord(box.py1)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // decade ticks
    for (int e = static_cast<int>(std::ceil(x_min)); e <= static_cast<int>(std::floor(x_max)); ++e) {
        double px = box.px(e);
        out << "<line x1=\"" << coord(px) << "\" y1=\"" << coord(box.py0) << "\" x2=\""
            << coord(px) << "\" y2=\"" << coord(box.py0 + 5)
            << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << coord(px) << "\" y=\"" << coord(box.py0 + 20)
            << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">1e"
            << e << "</text>\n";
    }
    for (int e = static_cast<int>(std::ceil(y_min)); e <= static_cast<int>(std::floor(y_max)); ++e) {
        double py = box.py(e);
        out << "<line x1=\"" << coord(box.px0 - 5) << "\" y1=\"" << coord(py)
            << "\" x2=\"" << coord(box.px0) << "\" y2=\"" << coord(py)
            << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << coord(box.px0 - 8) << "\" y=\"" << coord(py + 4)
            << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">1e" << e
            << "</text>\n";
    }

    // one polyline per trial
    if (!empty) {
        int trial = -1;
        std::string pts;
        auto emit = [&]() {
            if (!pts.empty())
                out << "<polyline fill=\"none\" stroke=\"#9aa5b1\" stroke-width=\"1\" points=\""
                    << pts << "\"/>\n";
            pts.clear();
        };
        for (const auto& row : report.series) {
            if (row.trial != trial) { emit(); trial = row.trial; }
            if (row.t < 1 || !(row.running_max > 0.0)) continue;
            pts += coord(box.px(std::log10(static_cast<double>(row.t)))) + "," +
                   coord(box.py(std::log10(row.running_max))) + " ";
        }
        emit();
    }

    // median fitted line overlaid: log10 y = (slope * ln x + intercept)/ln 10
    if (std::isfinite(report.overlay_slope) && !empty) {
        const double ln10 = std::log(10.0);
        double ya = (report.overlay_slope * x_min * ln10 + report.overlay_intercept) / ln10;
        double yb = (report.overlay_slope * x_max * ln10 + report.overlay_intercept) / ln10;
        out << "<line x1=\"" << coord(box.px(x_min)) << "\" y1=\"" << coord(box.py(ya))
            << "\" x2=\"" << coord(box.px(x_max)) << "\" y2=\"" << coord(box.py(yb))
            << "\" stroke=\"#c0392b\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
        char label[64];
        std::snprintf(label, sizeof label, "median slope %.4f", report.overlay_slope);
        out << "<text x=\"" << coord(box.px1 - 8) << "\" y=\"" << coord(box.py1 + 14)
            << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"12\" "
            << "fill=\"#c0392b\">" << label << "</text>\n";
    }
    out << "</svg>\n";
}

} // namespace devlab
