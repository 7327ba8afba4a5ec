#ifndef DEVLAB_TRANSITION_MATRIX_HPP
#define DEVLAB_TRANSITION_MATRIX_HPP

#include <cstdint>
#include <vector>

#include "devlab/permutation.hpp"

namespace devlab {

/**
 * Nonnegative integer cocycle step of the renormalization, det = 1.
 * Entries are 64-bit with overflow-checked composition; an elementary
 * Rauzy step is the identity plus a single off-diagonal 1.
 */
class TransitionMatrix {
public:
    explicit TransitionMatrix(int d);

    static TransitionMatrix identity(int d) { return TransitionMatrix(d); }
    static TransitionMatrix elementary(int d, int winner, int loser);

    int size() const { return d_; }
    std::int64_t at(int row, int col) const {
        return entries_[static_cast<std::size_t>(row) * static_cast<std::size_t>(d_)
                        + static_cast<std::size_t>(col)];
    }
    std::int64_t& at(int row, int col) {
        return entries_[static_cast<std::size_t>(row) * static_cast<std::size_t>(d_)
                        + static_cast<std::size_t>(col)];
    }

    // this := this * other, overflow-checked (throws ErrorCode::Overflow)
    void compose(const TransitionMatrix& other);

    // y = M x over int64, overflow-checked
    std::vector<std::int64_t> apply(const std::vector<std::int64_t>& x) const;
    // y = M^T x over int64, overflow-checked
    std::vector<std::int64_t> apply_transpose(const std::vector<std::int64_t>& x) const;

    // column-major d x k frame <- M^T frame (doubles; the streaming side of
    // the cocycle)
    void transposed_push(std::vector<double>& frame, int k) const;

    std::vector<double> apply(const std::vector<double>& x) const;

    TransitionMatrix transposed() const;

    bool operator==(const TransitionMatrix& other) const {
        return d_ == other.d_ && entries_ == other.entries_;
    }

private:
    int d_;
    std::vector<std::int64_t> entries_; // row-major
};

/**
 * Antisymmetric intersection form of a permutation: +1 when a precedes b on
 * top and follows it on bottom, -1 in the opposite case. Its integer rank
 * is 2g.
 */
class OmegaMatrix {
public:
    explicit OmegaMatrix(const LabeledPermutation& perm);

    int size() const { return d_; }
    int at(int row, int col) const {
        return entries_[static_cast<std::size_t>(row) * static_cast<std::size_t>(d_)
                        + static_cast<std::size_t>(col)];
    }
    int rank() const; // exact integer rank (fraction-free elimination)

    bool operator==(const OmegaMatrix& other) const {
        return d_ == other.d_ && entries_ == other.entries_;
    }

private:
    int d_;
    std::vector<int> entries_;
};

} // namespace devlab

#endif
