#include "devlab/transition_matrix.hpp"

#include "devlab/error.hpp"

namespace devlab {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out))
        throw Error(ErrorCode::Overflow, "transition matrix entry overflow");
    return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out))
        throw Error(ErrorCode::Overflow, "transition matrix entry overflow");
    return out;
}

} // namespace

TransitionMatrix::TransitionMatrix(int d) : d_(d) {
    entries_.assign(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), 0);
    for (int i = 0; i < d; ++i) at(i, i) = 1;
}

TransitionMatrix TransitionMatrix::elementary(int d, int winner, int loser) {
    TransitionMatrix m(d);
    m.at(winner, loser) = 1;
    return m;
}

void TransitionMatrix::compose(const TransitionMatrix& other) {
    std::vector<std::int64_t> out(entries_.size(), 0);
    for (int i = 0; i < d_; ++i) {
        for (int l = 0; l < d_; ++l) {
            std::int64_t a = at(i, l);
            if (a == 0) continue;
            for (int j = 0; j < d_; ++j) {
                std::int64_t b = other.at(l, j);
                if (b == 0) continue;
                auto& cell = out[static_cast<std::size_t>(i) * static_cast<std::size_t>(d_)
                                 + static_cast<std::size_t>(j)];
                cell = checked_add(cell, checked_mul(a, b));
            }
        }
    }
    entries_ = std::move(out);
}

std::vector<std::int64_t> TransitionMatrix::apply(const std::vector<std::int64_t>& x) const {
    std::vector<std::int64_t> y(static_cast<std::size_t>(d_), 0);
    for (int i = 0; i < d_; ++i) {
        std::int64_t acc = 0;
        for (int j = 0; j < d_; ++j)
            acc = checked_add(acc, checked_mul(at(i, j), x[static_cast<std::size_t>(j)]));
        y[static_cast<std::size_t>(i)] = acc;
    }
    return y;
}

std::vector<std::int64_t> TransitionMatrix::apply_transpose(
    const std::vector<std::int64_t>& x) const {
    std::vector<std::int64_t> y(static_cast<std::size_t>(d_), 0);
    for (int i = 0; i < d_; ++i) {
        std::int64_t acc = 0;
        for (int j = 0; j < d_; ++j)
            acc = checked_add(acc, checked_mul(at(j, i), x[static_cast<std::size_t>(j)]));
        y[static_cast<std::size_t>(i)] = acc;
    }
    return y;
}

void TransitionMatrix::transposed_push(std::vector<double>& frame, int k) const {
    // frame (column-major d x k) <- M^T frame
    std::vector<double> col(static_cast<std::size_t>(d_));
    for (int c = 0; c < k; ++c) {
        double* f = frame.data() + static_cast<std::size_t>(c) * static_cast<std::size_t>(d_);
        for (int i = 0; i < d_; ++i) {
            double acc = 0.0;
            for (int j = 0; j < d_; ++j)
                acc += static_cast<double>(at(j, i)) * f[j];
            col[static_cast<std::size_t>(i)] = acc;
        }
        for (int i = 0; i < d_; ++i) f[i] = col[static_cast<std::size_t>(i)];
    }
}

std::vector<double> TransitionMatrix::apply(const std::vector<double>& x) const {
    std::vector<double> y(static_cast<std::size_t>(d_), 0.0);
    for (int i = 0; i < d_; ++i) {
        double acc = 0.0;
        for (int j = 0; j < d_; ++j)
            acc += static_cast<double>(at(i, j)) * x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = acc;
    }
    return y;
}

TransitionMatrix TransitionMatrix::transposed() const {
    TransitionMatrix m(d_);
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j) m.at(j, i) = at(i, j);
    return m;
}

OmegaMatrix::OmegaMatrix(const LabeledPermutation& perm) : d_(perm.size()) {
    entries_.assign(static_cast<std::size_t>(d_) * static_cast<std::size_t>(d_), 0);
    for (int a = 0; a < d_; ++a) {
        for (int b = 0; b < d_; ++b) {
            if (a == b) continue;
            bool top_before = perm.position_in_top(a) < perm.position_in_top(b);
            bool bottom_before = perm.position_in_bottom(a) < perm.position_in_bottom(b);
            int v = 0;
            if (top_before && !bottom_before) v = 1;
            else if (!top_before && bottom_before) v = -1;
            entries_[static_cast<std::size_t>(a) * static_cast<std::size_t>(d_)
                     + static_cast<std::size_t>(b)] = v;
        }
    }
}

int OmegaMatrix::rank() const {
    // Bareiss fraction-free elimination; entries stay exact in __int128
    if (d_ > 32)
        throw Error(ErrorCode::InvalidArgument, "omega rank limited to d <= 32");
    std::vector<__int128> m(entries_.begin(), entries_.end());
    auto cell = [&](int i, int j) -> __int128& {
        return m[static_cast<std::size_t>(i) * static_cast<std::size_t>(d_)
                 + static_cast<std::size_t>(j)];
    };
    int rank = 0;
    __int128 prev = 1;
    for (int col = 0; col < d_ && rank < d_; ++col) {
        int pivot = -1;
        for (int r = rank; r < d_; ++r)
            if (cell(r, col) != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int j = 0; j < d_; ++j) std::swap(cell(pivot, j), cell(rank, j));
        for (int r = rank + 1; r < d_; ++r) {
            for (int j = col + 1; j < d_; ++j)
                cell(r, j) = (cell(rank, col) * cell(r, j) - cell(r, col) * cell(rank, j)) / prev;
            cell(r, col) = 0;
        }
        prev = cell(rank, col);
        ++rank;
    }
    return rank;
}

} // namespace devlab
