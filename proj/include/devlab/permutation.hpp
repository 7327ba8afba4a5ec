#ifndef DEVLAB_PERMUTATION_HPP
#define DEVLAB_PERMUTATION_HPP

#include <string>
#include <vector>

namespace devlab {

/**
 * Combinatorial datum of an interval exchange: the order of the d symbols
 * on the top and on the bottom of the interval. Symbols are small integer
 * ids; `labels` keeps the original characters for printing.
 *
 * Irreducibility: no proper prefix of the top row is a set-equal prefix of
 * the bottom row. Reducible data split into two independent exchanges and
 * are rejected at construction.
 */
class LabeledPermutation {
public:
    LabeledPermutation(std::vector<int> top, std::vector<int> bottom,
                       std::string labels = "");

    // "ABCD/DCBA" -> symbol ids in order of first appearance on top
    static LabeledPermutation parse(const std::string& text);

    int size() const { return static_cast<int>(top_.size()); }
    const std::vector<int>& top() const { return top_; }
    const std::vector<int>& bottom() const { return bottom_; }

    int position_in_top(int symbol) const { return pos_top_[static_cast<std::size_t>(symbol)]; }
    int position_in_bottom(int symbol) const { return pos_bottom_[static_cast<std::size_t>(symbol)]; }

    std::string label(int symbol) const;
    std::string to_string() const; // "ABCD/DCBA"

    bool operator==(const LabeledPermutation& other) const {
        return top_ == other.top_ && bottom_ == other.bottom_;
    }

private:
    std::vector<int> top_, bottom_;
    std::vector<int> pos_top_, pos_bottom_;
    std::string labels_;
};

} // namespace devlab

#endif
