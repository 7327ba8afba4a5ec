#include "devlab/interval_exchange.hpp"

#include <cmath>
#include <limits>

#include "devlab/error.hpp"

namespace devlab {

namespace {

// compensated prefix sums: prefix[0] = 0, prefix[i+1] = sum of v[0..i]
std::vector<double> kahan_prefix(const std::vector<int>& order,
                                 const std::vector<double>& lengths) {
    std::vector<double> prefix(order.size() + 1, 0.0);
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        double y = lengths[static_cast<std::size_t>(order[i])] - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        prefix[i + 1] = sum;
    }
    return prefix;
}

} // namespace

IntervalExchange::IntervalExchange(LabeledPermutation perm, std::vector<double> lengths)
    : perm_(std::move(perm)),
      lengths_(std::move(lengths)),
      before_one_(std::nextafter(1.0, 0.0)) {
    int d = perm_.size();
    if (static_cast<int>(lengths_.size()) != d)
        throw Error(ErrorCode::InvalidArgument, "length count != symbol count");
    for (double l : lengths_)
        if (!(l > 0.0) || !std::isfinite(l))
            throw Error(ErrorCode::RejectNonPositive, "lengths must be strictly positive");

    // normalize to unit total with compensated summation
    double sum = 0.0, comp = 0.0;
    for (double l : lengths_) {
        double y = l - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    for (double& l : lengths_) l /= sum;

    top_prefix_ = kahan_prefix(perm_.top(), lengths_);
    bottom_prefix_ = kahan_prefix(perm_.bottom(), lengths_);
    top_prefix_.back() = 1.0;
    bottom_prefix_.back() = 1.0;

    translation_.assign(static_cast<std::size_t>(d), 0.0);
    for (int s = 0; s < d; ++s) {
        int it = perm_.position_in_top(s);
        int ib = perm_.position_in_bottom(s);
        translation_[static_cast<std::size_t>(s)] =
            bottom_prefix_[static_cast<std::size_t>(ib)] -
            top_prefix_[static_cast<std::size_t>(it)];
    }
}

Itinerary IntervalExchange::itinerary(double x0, std::int64_t n) const {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "itinerary needs n >= 1");
    Itinerary it;
    it.symbols.reserve(static_cast<std::size_t>(n));
    it.counts.assign(static_cast<std::size_t>(size()), 0);
    double x = x0;
    for (std::int64_t i = 0; i < n; ++i) {
        auto [y, s] = apply(x);
        it.symbols.push_back(s);
        ++it.counts[static_cast<std::size_t>(s)];
        x = y;
    }
    return it;
}

IntervalExchange new_iet(const LabeledPermutation& perm, std::vector<double> lengths) {
    return IntervalExchange(perm, std::move(lengths));
}

} // namespace devlab
