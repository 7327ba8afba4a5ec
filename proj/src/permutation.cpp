#include "devlab/permutation.hpp"

#include <algorithm>
#include <set>

#include "devlab/error.hpp"

namespace devlab {

namespace {

bool is_permutation_of_range(const std::vector<int>& v) {
    std::vector<bool> seen(v.size(), false);
    for (int s : v) {
        if (s < 0 || s >= static_cast<int>(v.size())) return false;
        if (seen[static_cast<std::size_t>(s)]) return false;
        seen[static_cast<std::size_t>(s)] = true;
    }
    return true;
}

bool irreducible_rows(const std::vector<int>& top, const std::vector<int>& bottom) {
    // no k < d with {top_1..top_k} == {bottom_1..bottom_k} as sets
    int d = static_cast<int>(top.size());
    std::vector<bool> in_top(static_cast<std::size_t>(d), false);
    std::vector<bool> in_bottom(static_cast<std::size_t>(d), false);
    int overlap = 0;
    for (int k = 0; k + 1 < d; ++k) {
        int a = top[static_cast<std::size_t>(k)];
        int b = bottom[static_cast<std::size_t>(k)];
        if (in_bottom[static_cast<std::size_t>(a)]) ++overlap;
        in_top[static_cast<std::size_t>(a)] = true;
        if (in_top[static_cast<std::size_t>(b)]) ++overlap;
        in_bottom[static_cast<std::size_t>(b)] = true;
        if (overlap == k + 1) return false;
    }
    return true;
}

} // namespace

LabeledPermutation::LabeledPermutation(std::vector<int> top, std::vector<int> bottom,
                                       std::string labels)
    : top_(std::move(top)), bottom_(std::move(bottom)), labels_(std::move(labels)) {
    int d = static_cast<int>(top_.size());
    if (d < 2)
        throw Error(ErrorCode::InvalidArgument, "need at least 2 symbols");
    if (bottom_.size() != top_.size())
        throw Error(ErrorCode::InvalidArgument, "top and bottom sizes differ");
    if (!is_permutation_of_range(top_) || !is_permutation_of_range(bottom_))
        throw Error(ErrorCode::InvalidArgument,
                    "top and bottom must order the same symbol set");
    if (labels_.empty()) {
        for (int i = 0; i < d; ++i)
            labels_.push_back(static_cast<char>('A' + (i % 26)));
    }
    if (static_cast<int>(labels_.size()) != d)
        throw Error(ErrorCode::InvalidArgument, "label count mismatch");
    if (!irreducible_rows(top_, bottom_))
        throw Error(ErrorCode::RejectReducible,
                    "permutation splits into independent blocks: " + to_string());
    pos_top_.assign(static_cast<std::size_t>(d), 0);
    pos_bottom_.assign(static_cast<std::size_t>(d), 0);
    for (int i = 0; i < d; ++i) {
        pos_top_[static_cast<std::size_t>(top_[static_cast<std::size_t>(i)])] = i;
        pos_bottom_[static_cast<std::size_t>(bottom_[static_cast<std::size_t>(i)])] = i;
    }
}

LabeledPermutation LabeledPermutation::parse(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos)
        throw Error(ErrorCode::InvalidArgument,
                    "permutation must be TOP/BOTTOM, e.g. ABCD/DCBA");
    std::string top_s = text.substr(0, slash);
    std::string bottom_s = text.substr(slash + 1);
    if (top_s.empty() || top_s.size() != bottom_s.size())
        throw Error(ErrorCode::InvalidArgument,
                    "top and bottom symbol strings must have equal nonzero length");
    // symbol ids in order of first appearance on top
    std::vector<int> top(top_s.size()), bottom(bottom_s.size());
    for (std::size_t i = 0; i < top_s.size(); ++i) top[i] = static_cast<int>(i);
    for (std::size_t i = 0; i < bottom_s.size(); ++i) {
        auto at = top_s.find(bottom_s[i]);
        if (at == std::string::npos)
            throw Error(ErrorCode::InvalidArgument,
                        std::string("bottom symbol '") + bottom_s[i] +
                            "' does not appear on top");
        bottom[i] = static_cast<int>(at);
    }
    return LabeledPermutation(std::move(top), std::move(bottom), top_s);
}

std::string LabeledPermutation::label(int symbol) const {
    return std::string(1, labels_[static_cast<std::size_t>(symbol)]);
}

std::string LabeledPermutation::to_string() const {
    std::string out;
    for (int s : top_) out += labels_[static_cast<std::size_t>(s)];
    out += '/';
    for (int s : bottom_) out += labels_[static_cast<std::size_t>(s)];
    return out;
}

} // namespace devlab
