#pragma once

// Builder for the separating example behind `weights sparse-set`: a union of
// intervals [n_k, n_k + k] that every sliding window eventually meets in full
// (Banach density 1) while its weighted density dies out. At each step the
// start n_k is pushed far enough out that
//
//   (I)  the mass of all earlier intervals is tiny against S_{n_k}, and
//   (II) the interval's own mass is tiny against S_N for any N it meets,
//        controlled by (k+1) * v / (1 + v) at n_k.
//
// The partial weighted density of the union at any N in [n_k, n_k + k] is
// bounded by the sum of the two achieved terms, which the tests check
// directly.

#include <cstdint>
#include <vector>

#include "udense/index_set.hpp"
#include "udense/weight_sequence.hpp"

namespace udense {

struct SparseThickSet {
    std::vector<std::uint64_t> n_seq; // n_k, k = 1 .. eps.size()
    IndexSet set;                     // union of [n_k, n_k + k]
    std::vector<double> eps;          // requested bounds, strictly decreasing
    std::vector<double> term1;        // achieved (I) per k
    std::vector<double> term2;        // achieved (II) per k

    // The right endpoints n_k + k, the natural horizons for density checks.
    std::vector<std::uint64_t> checkpoints() const;
};

// Greedy smallest-valid n_k walk. The weight must pass its class membership
// audit (checked at horizon 10^4). Throws resource_error with the achieved
// bounds when some n_k search passes index_cap without meeting eps[k-1].
SparseThickSet build_sparse_thick_set(const WeightSequence& a,
                                      const std::vector<double>& eps_schedule,
                                      std::uint64_t index_cap = std::uint64_t(1) << 26);

} // namespace udense
