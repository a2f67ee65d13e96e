#pragma once

// Finite-horizon density estimators. Everything here is a sampled quantity:
// a profile records the weighted counting ratio at each requested horizon and
// the extrema over a declared tail, which serve as limsup/liminf estimates.
// The Banach estimators slide a fixed-length window and are lower bounds of
// the true value (the sup over all window positions is out of reach).

#include <cstdint>
#include <functional>
#include <vector>

#include "udense/audit_report.hpp"
#include "udense/index_set.hpp"
#include "udense/weight_sequence.hpp"

namespace udense {

struct DensitySample {
    std::uint64_t horizon = 0;
    double ratio = 0.0; // in [0, 1]
};

struct DensityProfile {
    std::vector<DensitySample> samples;
    // Extrema are taken over samples with horizon >= tail_start, so early
    // transients can be excluded from the limsup/liminf estimates.
    std::uint64_t tail_start = 0;
    double running_max = 0.0;
    double running_min = 1.0;

    double limsup_estimate() const { return running_max; }
    double liminf_estimate() const { return running_min; }
};

// (sum_{j<=N} a_j 1_A(j)) / (sum_{j<=N} a_j). Exact counting ratio when the
// weight is the constant-one sequence.
double partial_weighted_density(const WeightSequence& a, const IndexSet& A, std::uint64_t N);

// Samples the weighted ratio of A at each horizon (strictly increasing,
// non-empty or std::domain_error).
DensityProfile upper_density_profile(const WeightSequence& a, const IndexSet& A,
                                     const std::vector<std::uint64_t>& horizons,
                                     std::uint64_t tail_start = 0);

// Stream variant for sets that are cheaper to enumerate than to materialize
// (intersections A and A-k, window unions). The callback is invoked exactly
// once per index, in order, starting at 0.
DensityProfile upper_density_profile(const WeightSequence& a,
                                     const std::function<bool(std::uint64_t)>& member_stream,
                                     const std::vector<std::uint64_t>& horizons,
                                     std::uint64_t tail_start = 0);

// max over N in [lo, hi] of the weighted ratio of the streamed set, with the
// horizon attaining it. One pass; the callback is invoked once per index in
// order from 0.
struct RangeMaxRatio {
    double value = 0.0;
    std::uint64_t horizon = 0;
};
RangeMaxRatio max_partial_ratio(const WeightSequence& a,
                                const std::function<bool(std::uint64_t)>& member_stream,
                                std::uint64_t lo, std::uint64_t hi);

// max over k in [0, scan_horizon - window_len] of #(A intersect [k+1, k+N]).
// A lower bound of the true windowed count, which takes the sup over all k.
std::uint64_t banach_window_count(const IndexSet& A, std::uint64_t window_len,
                                  std::uint64_t scan_horizon);

// Samples banach_window_count(N)/N for each window length (increasing).
// Sample horizons hold the window lengths.
DensityProfile banach_density_profile(const IndexSet& A,
                                      const std::vector<std::uint64_t>& window_lens,
                                      std::uint64_t scan_horizon);

// Profile-level check of the density ordering induced by one weight's
// eventual domination of another: when a_n/b_n decreases to zero, liminf
// estimates satisfy b <= a and limsup estimates a <= b. The ratio behaviour
// itself is verified numerically on the scanned range and reported as
// warnings when it does not hold (the ordering checks still run).
AuditReport density_ordering_audit(const WeightSequence& a, const WeightSequence& b,
                                   const IndexSet& A, const std::vector<std::uint64_t>& horizons,
                                   double tolerance = 0.01);

} // namespace udense
