#ifndef DEVLAB_CONFIG_HPP
#define DEVLAB_CONFIG_HPP

#include <cstdint>
#include <string>

namespace devlab {

enum class ExperimentKind {
    lyapunov,    // exponent spectrum over a permutation class
    structure,   // full-spectrum symmetry / zero-count verdict
    homology,    // homology-deviation slopes
    observable,  // Birkhoff-sum slopes of a mean-zero observable
    torus,       // rotation baseline: slope + Denjoy-Koksma levels
    heisenberg,  // nilflow Weyl-sum slope
    end2end,     // spectrum prediction vs measured deviation slopes
};

const char* experiment_kind_name(ExperimentKind kind);

struct ExperimentConfig {
    ExperimentKind experiment;
    std::string perm;          // "ABCD/DCBA"
    double alpha = -1.0;       // rotation/skew parameter ("golden" accepted)
    double beta = -1.0;        // skew offset; < 0 means per-trial random
    std::uint64_t seed = 0;
    int trials = 1;
    std::int64_t t_max = 0;
    std::uint64_t steps = 0;   // renormalization steps (lyapunov kinds)
    int k = 0;                 // frame size, 0 = full (d)
    double schedule_ratio = 1.25;
    double tolerance = -1.0;   // < 0 = experiment default
    double target = -1.0;      // optional reference slope
    std::string observable = "trigonometric:1";
    std::string output_dir = "out";
};

// key = value lines, '#' comments; unknown keys and malformed values are
// reported with their line number; missing required keys are listed
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig load_config_file(const std::string& path);

} // namespace devlab

#endif
