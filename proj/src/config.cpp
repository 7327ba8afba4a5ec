#include "devlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "devlab/error.hpp"
#include "devlab/homogeneous.hpp"

namespace devlab {

const char* experiment_kind_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::lyapunov: return "lyapunov";
        case ExperimentKind::structure: return "structure";
        case ExperimentKind::homology: return "homology";
        case ExperimentKind::observable: return "observable";
        case ExperimentKind::torus: return "torus";
        case ExperimentKind::heisenberg: return "heisenberg";
        case ExperimentKind::end2end: return "end2end";
    }
    return "unknown";
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

[[noreturn]] void line_error(int line, const std::string& message) {
    throw Error(ErrorCode::InvalidConfig,
                "line " + std::to_string(line) + ": " + message);
}

double parse_double(const std::string& v, int line, const std::string& key) {
    try {
        std::size_t used = 0;
        double out = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        line_error(line, "cannot parse '" + v + "' as a number for " + key);
    }
}

std::int64_t parse_count(const std::string& v, int line, const std::string& key) {
    double d = parse_double(v, line, key);
    if (!(d >= 0.0) || d != std::floor(d) || d > 9e18)
        line_error(line, key + " must be a nonnegative integer, got '" + v + "'");
    return static_cast<std::int64_t>(d);
}

ExperimentKind parse_kind(const std::string& v, int line) {
    for (auto k : {ExperimentKind::lyapunov, ExperimentKind::structure,
                   ExperimentKind::homology, ExperimentKind::observable,
                   ExperimentKind::torus, ExperimentKind::heisenberg,
                   ExperimentKind::end2end})
        if (v == experiment_kind_name(k)) return k;
    line_error(line, "unknown experiment '" + v +
                         "' (expected one of lyapunov, structure, homology, "
                         "observable, torus, heisenberg, end2end)");
}

} // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::set<std::string> present;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string s = trim(raw);
        if (s.empty()) continue;
        auto eq = s.find('=');
        if (eq == std::string::npos) line_error(line, "expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key.empty()) line_error(line, "empty key");
        if (value.empty()) line_error(line, "empty value for " + key);
        if (present.count(key)) line_error(line, "duplicate key " + key);
        present.insert(key);

        if (key == "experiment") {
            cfg.experiment = parse_kind(value, line);
        } else if (key == "perm") {
            cfg.perm = value;
        } else if (key == "alpha") {
            cfg.alpha = (value == "golden") ? kGoldenRotation
                                            : parse_double(value, line, key);
            if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
                line_error(line, "alpha must lie in (0,1)");
        } else if (key == "beta") {
            cfg.beta = parse_double(value, line, key);
            if (!(cfg.beta >= 0.0 && cfg.beta < 1.0))
                line_error(line, "beta must lie in [0,1)");
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(parse_count(value, line, key));
        } else if (key == "trials") {
            cfg.trials = static_cast<int>(parse_count(value, line, key));
            if (cfg.trials < 1) line_error(line, "trials must be >= 1");
        } else if (key == "t_max") {
            cfg.t_max = parse_count(value, line, key);
            if (cfg.t_max < 1) line_error(line, "t_max must be >= 1");
        } else if (key == "steps") {
            cfg.steps = static_cast<std::uint64_t>(parse_count(value, line, key));
        } else if (key == "k") {
            cfg.k = static_cast<int>(parse_count(value, line, key));
        } else if (key == "schedule_ratio") {
            cfg.schedule_ratio = parse_double(value, line, key);
            if (!(cfg.schedule_ratio > 1.0))
                line_error(line, "schedule_ratio must exceed 1");
        } else if (key == "tolerance") {
            cfg.tolerance = parse_double(value, line, key);
            if (!(cfg.tolerance > 0.0)) line_error(line, "tolerance must be positive");
        } else if (key == "target") {
            cfg.target = parse_double(value, line, key);
        } else if (key == "observable") {
            cfg.observable = value;
        } else if (key == "output_dir") {
            cfg.output_dir = value;
        } else {
            line_error(line, "unknown key '" + key + "'");
        }
    }

    if (!present.count("experiment"))
        throw Error(ErrorCode::InvalidConfig, "missing required key: experiment");

    std::vector<std::string> required{"seed", "trials"};
    switch (cfg.experiment) {
        case ExperimentKind::lyapunov:
        case ExperimentKind::structure:
            required.push_back("perm");
            required.push_back("steps");
            break;
        case ExperimentKind::homology:
        case ExperimentKind::observable:
            required.push_back("perm");
            required.push_back("t_max");
            break;
        case ExperimentKind::torus:
        case ExperimentKind::heisenberg:
            required.push_back("alpha");
            required.push_back("t_max");
            break;
        case ExperimentKind::end2end:
            required.push_back("perm");
            required.push_back("steps");
            required.push_back("t_max");
            break;
    }
    std::string missing;
    for (const auto& key : required)
        if (!present.count(key)) missing += missing.empty() ? key : ", " + key;
    if (!missing.empty())
        throw Error(ErrorCode::InvalidConfig,
                    std::string("missing required key") +
                        (missing.find(',') != std::string::npos ? "s" : "") + ": " +
                        missing + " (experiment " +
                        experiment_kind_name(cfg.experiment) + ")");
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::InvalidConfig, "cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace devlab
