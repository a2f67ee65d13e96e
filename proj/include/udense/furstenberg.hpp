#pragma once

// Membership probes for density-defined set families and the finite evidence
// for shift invariance and syndetic difference patterns. Everything is
// semi-decidable from below: a horizon that clears the threshold is a
// certificate, its absence below the search bound is reported as exactly
// that, never as a refutation.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "udense/audit_report.hpp"
#include "udense/density.hpp"
#include "udense/index_set.hpp"
#include "udense/weight_sequence.hpp"

namespace udense {

enum class FamilyKind {
    natural_upper,  // counting ratio beyond a starting horizon
    banach_upper,   // best window of a fixed length
    weighted_upper, // weighted ratio beyond a starting horizon
};

struct FamilySpec {
    FamilyKind kind = FamilyKind::natural_upper;
    double delta = 0.0;  // threshold the ratio must exceed
    std::uint64_t n = 1; // first admissible horizon, or the window length
    std::optional<WeightSequence> a; // required for weighted_upper
};

struct Verdict {
    bool member = false; // certificate found; false only means none below the bound
    std::uint64_t witness = 0; // horizon or window position that cleared the threshold
    std::string note;
};

// natural_upper: some N in [spec.n, bound] with #(A cap [0,N])/(N+1) > delta.
// banach_upper: some window [m+1, m+spec.n], m + spec.n <= bound, with count
// ratio > delta. weighted_upper: as natural but in spec.a's ratio.
Verdict family_member(const FamilySpec& spec, const IndexSet& A, std::uint64_t search_bound);

// {j <= horizon : j in A and j + k in A}, materialized.
IndexSet difference_intersection(const IndexSet& A, std::uint64_t k, std::uint64_t horizon);

// Compares the ratio profiles of A and A - k at the given horizons. The
// k-step displacement is held against the accumulated one-step allowance
// k * v_{N+1}; for the single shift both one-step estimates are verified
// directly, the lower one in its restricted-sum form starting at n0.
AuditReport shift_density_audit(const WeightSequence& a, const IndexSet& A, std::uint64_t k,
                                const std::vector<std::uint64_t>& horizons,
                                std::uint64_t n0 = 1);

struct GapReport {
    std::vector<std::uint64_t> kset; // shifts whose self-intersection stays dense
    std::uint64_t kmax = 0;
    std::uint64_t horizon = 0;
    std::uint64_t max_gap = 0;             // largest jump between consecutive members
    std::vector<std::uint64_t> gap_positions; // left ends of the maximal jumps
    double density_estimate = 0.0;         // weighted limsup estimate for A itself
    double threshold = 0.0;                // delta^2 / 2
    double r_bound = 0.0; // (d - delta^2/2) / (d^2 - delta^2/2), NaN if vacuous
    bool precondition_ok = false;          // density estimate exceeded delta
};

// Scans k in [0, kmax], estimating the weighted upper density of
// A cap (A - k) at geometric horizons up to the limit, and keeps the shifts
// staying above delta^2 / 2. The bounded-gap structure of that collection is
// what the report exposes.
GapReport bounded_gaps_audit(const WeightSequence& a, const IndexSet& A, double delta,
                             std::uint64_t kmax, std::uint64_t horizon);

} // namespace udense
