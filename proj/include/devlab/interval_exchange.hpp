#ifndef DEVLAB_INTERVAL_EXCHANGE_HPP
#define DEVLAB_INTERVAL_EXCHANGE_HPP

#include <cstdint>
#include <vector>

#include "devlab/permutation.hpp"

namespace devlab {

struct Itinerary {
    std::vector<int> symbols;        // subinterval visited at steps 0..n-1
    std::vector<std::int64_t> counts; // visits per symbol, sums to n
};

/**
 * Interval exchange transformation of [0,1): the d subintervals, listed in
 * top order with lengths summing to one, are translated into bottom order.
 * Immutable after construction; all derived offsets are precomputed with
 * compensated summation.
 */
class IntervalExchange {
public:
    IntervalExchange(LabeledPermutation perm, std::vector<double> lengths);

    const LabeledPermutation& permutation() const { return perm_; }
    int size() const { return perm_.size(); }

    // lengths indexed by symbol id (== top order of the defining permutation)
    const std::vector<double>& lengths() const { return lengths_; }

    // x' = x + translation(symbol containing x). Points within 1e-15 of a
    // cut snap to the cut and follow the half-open convention.
    std::pair<double, int> apply(double x) const {
        int j = locate(x);
        int s = perm_.top()[static_cast<std::size_t>(j)];
        double y = x + translation_[static_cast<std::size_t>(s)];
        if (y >= 1.0) y = before_one_;
        if (y < 0.0) y = 0.0;
        return {y, s};
    }

    Itinerary itinerary(double x0, std::int64_t n) const;

    // symbol frequencies of almost every orbit; equals the lengths vector
    std::vector<double> asymptotic_cycle() const { return lengths_; }

    // prefix sums of lengths in top order, prefix[0] = 0, prefix[d] = 1
    const std::vector<double>& top_prefix() const { return top_prefix_; }
    const std::vector<double>& bottom_prefix() const { return bottom_prefix_; }

    static constexpr double kCutSnap = 1e-15;

private:
    LabeledPermutation perm_;
    std::vector<double> lengths_;
    std::vector<double> top_prefix_, bottom_prefix_;
    std::vector<double> translation_; // per symbol id
    double before_one_;

    int locate(double x) const {
        // top-order subinterval index containing x, with cut snapping
        int d = size();
        int j = 0;
        while (j + 1 < d && x >= top_prefix_[static_cast<std::size_t>(j + 1)]) ++j;
        if (j + 1 < d && top_prefix_[static_cast<std::size_t>(j + 1)] - x <= kCutSnap) ++j;
        return j;
    }
};

// validated, normalized construction (the spec-facing factory)
IntervalExchange new_iet(const LabeledPermutation& perm, std::vector<double> lengths);

} // namespace devlab

#endif
