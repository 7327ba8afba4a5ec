#include "devlab/rauzy_veech.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "devlab/error.hpp"

namespace devlab {

namespace {

// mutable induction state; lengths are kept un-normalized within a step
struct InductionState {
    std::vector<int> top, bottom;
    std::vector<double> lengths; // by symbol id
    double total = 1.0;
    std::string labels;

    explicit InductionState(const IntervalExchange& iet)
        : top(iet.permutation().top()),
          bottom(iet.permutation().bottom()),
          lengths(iet.lengths()) {
        for (int s = 0; s < iet.size(); ++s) labels += iet.permutation().label(s)[0];
    }

    StepKind peek_kind() const {
        int wt = top.back(), wb = bottom.back();
        double lt = lengths[static_cast<std::size_t>(wt)];
        double lb = lengths[static_cast<std::size_t>(wb)];
        if (std::abs(lt - lb) <= kKeaneTolerance * std::max(lt, lb))
            throw Error(ErrorCode::KeaneViolation,
                        "candidate lengths rationally dependent");
        return lt > lb ? StepKind::top : StepKind::bottom;
    }

    // one elementary step of the already-determined kind; returns
    // (winner, loser, -log(1 - loser/total))
    std::tuple<int, int, double> elementary(StepKind kind) {
        int winner, loser;
        if (kind == StepKind::top) {
            winner = top.back();
            loser = bottom.back();
            bottom.pop_back();
            auto at = std::find(bottom.begin(), bottom.end(), winner);
            bottom.insert(at + 1, loser);
        } else {
            winner = bottom.back();
            loser = top.back();
            top.pop_back();
            auto at = std::find(top.begin(), top.end(), winner);
            top.insert(at + 1, loser);
        }
        double l = lengths[static_cast<std::size_t>(loser)];
        double scale = -std::log1p(-l / total);
        lengths[static_cast<std::size_t>(winner)] -= l;
        total -= l;
        return {winner, loser, scale};
    }

    IntervalExchange to_iet() const {
        return IntervalExchange(LabeledPermutation(top, bottom, labels), lengths);
    }
};

} // namespace

std::pair<IntervalExchange, RenormStep> rauzy_step(const IntervalExchange& iet) {
    InductionState st(iet);
    StepKind kind = st.peek_kind();
    auto [winner, loser, scale] = st.elementary(kind);
    RenormStep step{kind, TransitionMatrix::elementary(iet.size(), winner, loser),
                    scale, 1};
    return {st.to_iet(), std::move(step)};
}

namespace {

// Within a same-type run the loser lengths never change: the row segment
// after the winner rotates through itself, one loser per step. Whole
// periods of that rotation can therefore be taken in one arithmetic batch
// (the rows are unchanged by a full period).
struct BatchResult {
    std::int64_t steps = 0;
    double log_scale = 0.0;
};

BatchResult batch_full_periods(InductionState& st, StepKind kind,
                               std::vector<std::int64_t>& losses,
                               std::int64_t budget) {
    BatchResult out;
    const std::vector<int>& row = (kind == StepKind::top) ? st.bottom : st.top;
    int winner = (kind == StepKind::top) ? st.top.back() : st.bottom.back();
    int at = 0;
    while (row[static_cast<std::size_t>(at)] != winner) ++at;
    int seg_len = static_cast<int>(row.size()) - 1 - at;
    double seg_sum = 0.0;
    for (int i = at + 1; i < static_cast<int>(row.size()); ++i)
        seg_sum += st.lengths[static_cast<std::size_t>(row[static_cast<std::size_t>(i)])];
    double w_len = st.lengths[static_cast<std::size_t>(winner)];
    if (!(w_len > 4.0 * seg_sum)) return out;
    if (!(seg_sum > 1e-250))
        throw Error(ErrorCode::NonRecurrent, "length vector degenerated");
    double periods = std::floor(w_len / seg_sum) - 2.0;
    if (periods < 1.0) return out;
    if (periods * static_cast<double>(seg_len) >
        static_cast<double>(budget - out.steps))
        throw Error(ErrorCode::NonRecurrent,
                    "winner type persisted beyond the elementary-step cap");
    auto q = static_cast<std::int64_t>(periods);
    double eaten = static_cast<double>(q) * seg_sum;
    out.log_scale = -std::log1p(-eaten / st.total);
    st.lengths[static_cast<std::size_t>(winner)] = w_len - eaten;
    st.total -= eaten;
    for (int i = at + 1; i < static_cast<int>(row.size()); ++i)
        losses[static_cast<std::size_t>(row[static_cast<std::size_t>(i)])] += q;
    out.steps = q * static_cast<std::int64_t>(seg_len);
    return out;
}

} // namespace

std::pair<IntervalExchange, RenormStep> zorich_step(const IntervalExchange& iet) {
    InductionState st(iet);
    int d = iet.size();
    StepKind kind = st.peek_kind();
    std::vector<std::int64_t> losses(static_cast<std::size_t>(d), 0);
    double log_scale = 0.0;
    std::int64_t count = 0;
    int winner = -1;
    for (;;) {
        BatchResult batch = batch_full_periods(st, kind, losses, kNonRecurrentCap - count);
        count += batch.steps;
        log_scale += batch.log_scale;
        auto [w, l, scale] = st.elementary(kind);
        winner = w;
        ++losses[static_cast<std::size_t>(l)];
        log_scale += scale;
        if (++count > kNonRecurrentCap)
            throw Error(ErrorCode::NonRecurrent,
                        "winner type persisted beyond the elementary-step cap");
        StepKind next;
        try {
            next = st.peek_kind();
        } catch (const Error& e) {
            if (e.code() != ErrorCode::KeaneViolation) throw;
            break; // acceleration ends; the violation surfaces on the next call
        }
        if (next != kind) break;
    }
    // same-type elementary matrices compose additively: I + sum_l c_l E[w,l]
    TransitionMatrix matrix(d);
    for (int l = 0; l < d; ++l)
        matrix.at(winner, l) += losses[static_cast<std::size_t>(l)];
    RenormStep step{kind, std::move(matrix), log_scale, count};
    return {st.to_iet(), std::move(step)};
}

OmegaMatrix omega_matrix(const LabeledPermutation& perm) { return OmegaMatrix(perm); }

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

} // namespace

StratumSignature stratum(const LabeledPermutation& perm) {
    int d = perm.size();
    OmegaMatrix omega(perm);
    int rank = omega.rank();
    if (rank % 2 != 0)
        throw Error(ErrorCode::InconsistentSignature, "odd intersection-form rank");
    int g = rank / 2;
    int sigma_rank = d - 2 * g + 1;

    // canonical suspension polygon: edge vectors (lambda_s, tau_s) with
    // tau_s = bottom position - top position; irreducibility makes the top
    // chain stay strictly above the axis and the bottom chain strictly below
    std::vector<double> lam(static_cast<std::size_t>(d));
    std::vector<double> tau(static_cast<std::size_t>(d));
    for (int s = 0; s < d; ++s) {
        lam[static_cast<std::size_t>(s)] = 1.0 + static_cast<double>(s) / (2.0 * d);
        tau[static_cast<std::size_t>(s)] =
            static_cast<double>(perm.position_in_bottom(s) - perm.position_in_top(s));
    }
    auto chain = [&](const std::vector<int>& row) {
        std::vector<std::pair<double, double>> pts(static_cast<std::size_t>(d) + 1,
                                                   {0.0, 0.0});
        for (int j = 0; j < d; ++j) {
            int s = row[static_cast<std::size_t>(j)];
            pts[static_cast<std::size_t>(j + 1)] = {
                pts[static_cast<std::size_t>(j)].first + lam[static_cast<std::size_t>(s)],
                pts[static_cast<std::size_t>(j)].second + tau[static_cast<std::size_t>(s)]};
        }
        return pts;
    };
    auto top_pts = chain(perm.top());
    auto bottom_pts = chain(perm.bottom());

    // node ids: t_j -> j (0..d), interior b_j -> d + j; endpoints shared
    auto bnode = [&](int j) { return (j == 0) ? 0 : (j == d) ? d : d + j; };
    UnionFind uf(2 * d);
    for (int s = 0; s < d; ++s) {
        int pt = perm.position_in_top(s);
        int pb = perm.position_in_bottom(s);
        uf.unite(pt, bnode(pb));         // left endpoints of the glued edge
        uf.unite(pt + 1, bnode(pb + 1)); // right endpoints
    }

    // counterclockwise boundary: bottom chain left-to-right, then top chain
    // right-to-left; collect (node, corner position) in traversal order
    std::vector<int> loop_nodes;
    std::vector<std::pair<double, double>> loop_pts;
    for (int j = 0; j <= d; ++j) {
        loop_nodes.push_back(bnode(j));
        loop_pts.push_back(bottom_pts[static_cast<std::size_t>(j)]);
    }
    for (int j = d - 1; j >= 1; --j) {
        loop_nodes.push_back(j);
        loop_pts.push_back(top_pts[static_cast<std::size_t>(j)]);
    }

    // interior angle sums per identified vertex
    std::vector<double> angle(static_cast<std::size_t>(2 * d), 0.0);
    int n = static_cast<int>(loop_pts.size());
    const double pi = std::acos(-1.0);
    for (int i = 0; i < n; ++i) {
        auto [px, py] = loop_pts[static_cast<std::size_t>((i + n - 1) % n)];
        auto [cx, cy] = loop_pts[static_cast<std::size_t>(i)];
        auto [nx, ny] = loop_pts[static_cast<std::size_t>((i + 1) % n)];
        double ux = cx - px, uy = cy - py;
        double vx = nx - cx, vy = ny - cy;
        double turn = std::atan2(ux * vy - uy * vx, ux * vx + uy * vy);
        angle[static_cast<std::size_t>(uf.find(loop_nodes[static_cast<std::size_t>(i)]))] +=
            pi - turn;
    }

    std::vector<int> kappa;
    for (int node = 0; node < 2 * d; ++node) {
        double a = angle[static_cast<std::size_t>(node)];
        if (a == 0.0) continue;
        double turns = a / (2.0 * pi);
        int k = static_cast<int>(std::lround(turns)) - 1;
        if (std::abs(turns - std::lround(turns)) > 1e-6 || k < 0)
            throw Error(ErrorCode::InconsistentSignature,
                        "cone angle is not a multiple of 2 pi");
        kappa.push_back(k);
    }
    std::sort(kappa.begin(), kappa.end(), std::greater<int>());

    int sigma = static_cast<int>(kappa.size());
    if (sigma != sigma_rank)
        throw Error(ErrorCode::InconsistentSignature,
                    "singularity count from cone angles (" + std::to_string(sigma) +
                        ") disagrees with d - 2g + 1 (" + std::to_string(sigma_rank) + ")");
    int total = 0;
    for (int k : kappa) total += k;
    if (total != 2 * g - 2)
        throw Error(ErrorCode::InconsistentSignature,
                    "cone-angle orders do not sum to 2g - 2");
    return StratumSignature{g, sigma, std::move(kappa)};
}

} // namespace devlab
