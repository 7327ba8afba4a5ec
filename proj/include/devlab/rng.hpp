#ifndef DEVLAB_RNG_HPP
#define DEVLAB_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace devlab {

// splitmix64, used only to derive per-trial seeds from (seed, trial_index)
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial_index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(trial_index + 0x51ED270B9A5F2D31ULL));
}

// mt19937_64 stream with explicit, implementation-independent variate
// derivations; everything an experiment draws goes through this class.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // uniform in [0, 1), 53-bit resolution
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // standard exponential via inversion; strictly positive
    double exponential() { return -std::log1p(-uniform01()); }

    // Dirichlet(1,...,1) on the d-simplex: normalized exponentials
    std::vector<double> simplex(int d) {
        std::vector<double> v(static_cast<std::size_t>(d));
        double sum = 0.0;
        for (auto& x : v) {
            x = exponential();
            sum += x;
        }
        for (auto& x : v) x /= sum;
        return v;
    }

private:
    std::mt19937_64 gen_;
};

} // namespace devlab

#endif
