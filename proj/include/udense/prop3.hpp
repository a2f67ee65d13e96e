#pragma once

// Construction of the block-recursive weight behind the CLI command
// `weights build-prop3`: given target sets A_n with density targets delta_n,
// choose block starts k_p so that the weight a_0 = 1, a_j = (1/p) S_{j-1}
// for j in [k_p, k_{p+1}) concentrates enough mass on windows where each A_n
// is dense. Along the designated checkpoints N = k_p + p - 1 with p in the
// class of n, the weighted density of A_n then stays within a factor of
// (1+1/p)^p <= e of delta_n.

#include <cstdint>
#include <vector>

#include "udense/audit_report.hpp"
#include "udense/density.hpp"
#include "udense/index_set.hpp"
#include "udense/weight_sequence.hpp"

namespace udense {

struct Prop3Input {
    std::vector<IndexSet> sets;  // A_n, n = 0 .. sets.size()-1
    std::vector<double> deltas;  // delta_n in (0, 1), one per set
    // Partition of the block indices p >= 1 into one class per set:
    // p belongs to class (p mod classes). Defaults to sets.size().
    std::uint64_t classes = 0;
    // k_seq[i] = k_{i+1}; strictly increasing with k_{p+1} > k_p + p.
    std::vector<std::uint64_t> k_seq;

    std::uint64_t class_of(std::uint64_t p) const { return p % classes; }
};

// Greedy smallest-valid choice of the k_p: each k_p is the first index past
// the spacing constraint whose window [k_p, k_p + p) holds at least
// p * delta_n members of the class set. Deterministic. Throws
// construction_error naming (n, p) when no window below the search cap
// qualifies (in particular when delta_n overshoots the set's actual window
// density).
Prop3Input make_prop3_input(std::vector<IndexSet> sets, std::vector<double> deltas,
                            std::uint64_t p_max, std::uint64_t search_cap = 1u << 20);

// Re-checks the stored k_seq: spacing condition for all p and window-count
// condition for every p whose block starts at or below the horizon. Throws
// construction_error on the first violation.
void validate_prop3_input(const Prop3Input& input, std::uint64_t horizon);

// Validates the input up to the horizon, then materializes the weight.
// Throws std::domain_error when the horizon does not even reach k_1.
WeightSequence build_prop3_weight(const Prop3Input& input, std::uint64_t horizon);

// Structural post-conditions of the built weight on [0, horizon]: the step
// ratio v_k equals 1/p exactly on each block, the weight is flat across each
// block boundary (a_{k_p} = a_{k_p-1} for p >= 2), it never decreases, and
// block starts grow at least linearly in value (a_{k_p} >= p * a_{k_1}).
AuditReport prop3_post_audit(const WeightSequence& a, const Prop3Input& input,
                             std::uint64_t horizon);

// The checkpoints N = k_p + p - 1 for p in the class of set n (the indices
// where the window condition turns into a density lower bound).
std::vector<std::uint64_t> prop3_checkpoints(const Prop3Input& input, std::uint64_t set_index);

// Window-scan estimate of each set's Banach density, scaled by 0.9 to leave
// slack; the estimate is a lower bound, so the suggestion never overshoots.
std::vector<double> suggest_deltas(const std::vector<IndexSet>& sets, std::uint64_t window_len,
                                   std::uint64_t scan_horizon);

} // namespace udense
