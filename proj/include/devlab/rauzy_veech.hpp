#ifndef DEVLAB_RAUZY_VEECH_HPP
#define DEVLAB_RAUZY_VEECH_HPP

#include <cstdint>
#include <vector>

#include "devlab/interval_exchange.hpp"
#include "devlab/transition_matrix.hpp"

namespace devlab {

enum class StepKind { top, bottom };

/**
 * One renormalization step: the integer cocycle matrix and the conversion
 * to renormalization time, log_scale = -log(length of the induced
 * interval before re-normalization).
 */
struct RenormStep {
    StepKind kind;
    TransitionMatrix matrix;
    double log_scale;                 // > 0
    std::int64_t elementary_count;    // 1 for rauzy_step, >= 1 for zorich_step
};

struct StratumSignature {
    int g;                    // genus, rank(omega)/2
    int sigma;                // number of singularities / marked points
    std::vector<int> kappa;   // cone-angle orders, sum = 2g-2 (g >= 2)
};

// relative tolerance below which the two candidate lengths are considered
// rationally dependent and induction is refused
inline constexpr double kKeaneTolerance = 1e-14;

// Hard cap on same-type elementary steps before the state is declared
// degenerate (length vector collapsing). The run length has a ~1/m tail
// (P(run > 1e6) is about 1e-6 per accelerated step, every d), so the cap
// sits far above anything a healthy trajectory produces; runs are batched,
// so even enormous ones cost O(d).
inline constexpr std::int64_t kNonRecurrentCap = 1000000000000;

// One elementary Rauzy induction step; the returned exchange is
// re-normalized to unit total length.
std::pair<IntervalExchange, RenormStep> rauzy_step(const IntervalExchange& iet);

// Zorich-accelerated step: elementary steps composed while the winner type
// is unchanged. This is the unit of the renormalization cocycle.
std::pair<IntervalExchange, RenormStep> zorich_step(const IntervalExchange& iet);

OmegaMatrix omega_matrix(const LabeledPermutation& perm);

// genus / singularity data of the suspended surface; the two independent
// derivations (intersection-form rank, suspension-polygon cone angles) are
// cross-checked and InconsistentSignature thrown on mismatch
StratumSignature stratum(const LabeledPermutation& perm);

} // namespace devlab

#endif
