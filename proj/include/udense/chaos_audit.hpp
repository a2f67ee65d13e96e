#pragma once

// Numerical certificate that the suppressed orbit times of the block-cyclic
// operator stay inside sparse periodic windows whose weighted density is
// small at every sufficiently late horizon. Per level the estimator reports
// two coverages: the directly scanned maximum ratio of the window union, and
// a closed bound that dominates it using only the weight's v ratios near the
// period. One minus the coverage is the margin that must grow toward 1 as
// the levels climb.

#include <cstdint>
#include <vector>

#include "udense/audit_report.hpp"
#include "udense/ctype.hpp"
#include "udense/density.hpp"
#include "udense/weight_sequence.hpp"

namespace udense {

struct CoverageEstimate {
    double direct = 0.0;       // max scanned ratio of the window union
    std::uint64_t argmax = 0;  // horizon attaining it
    double bound = 0.0;        // closed dominating estimate
};

// Windows of width 2n anchored at j0 and repeating with period N, measured
// against the weight a: direct = max over horizons s in [N-n, s_max] of the
// partial ratio, bound = 2 - 2/prod_{j=N-3n}^{N-n}(1+v_j) + (2n+1)/N.
// Requires 3n < N, j0 < N, s_max >= N-n.
CoverageEstimate periodic_window_coverage(const WeightSequence& a, std::uint64_t N,
                                          std::uint64_t n, std::uint64_t j0,
                                          std::uint64_t s_max);

// The closed estimate alone (no scan).
double periodic_window_coverage_bound(const WeightSequence& a, std::uint64_t N,
                                      std::uint64_t n);

struct ChaosMarginRow {
    std::uint64_t k = 0;
    std::uint64_t delta = 0;
    std::uint64_t Delta = 0;
    std::uint64_t N_l = 0; // Delta - delta, the per-level time allowance
    std::uint64_t worst_j0 = 0;
    bool j0_sweep_exhaustive = false;
    double coverage_direct = 0.0;
    double coverage_bound = 0.0;
    double margin_direct = 0.0; // 1 - coverage_direct
    double margin_bound = 0.0;  // 1 - coverage_bound
};

struct ChaosAuditConfig {
    WeightSequence a = WeightSequence::power(1.0);
    std::vector<std::uint64_t> delta;
    std::vector<std::uint64_t> Delta; // empty: filled by suggest_Delta from Delta0
    std::uint64_t Delta0 = 2;
    std::uint64_t kmax = 4;
    std::uint64_t s_max_factor = 8;          // horizons scanned up to factor * period
    std::uint64_t exhaustive_j0_cap = 10000; // full anchor sweep below this period
    std::uint64_t stratified_j0_samples = 64;
    // companion instance small enough to drive through the exact engine
    std::vector<std::uint64_t> small_delta = {1, 2, 4};
    std::vector<std::uint64_t> small_Delta = {2, 8, 32};
};

struct ChaosAuditResult {
    AuditReport report;
    std::vector<ChaosMarginRow> rows; // levels 1..kmax
    CPlusOneLevels levels;            // resolved parameters
};

// Four stages: parameter validation (plus the weight's admissibility audit),
// per-level coverage margins with an anchor sweep, an exact-engine
// cross-check of the suppressed-time windows on the companion instance, and
// the margin monotonicity assertion.
ChaosAuditResult run_chaos_audit(const ChaosAuditConfig& config);

// Smallest lengths of the chained form Delta[k] = 2 m Delta[k-1] whose
// coverage bound meets the per-level target 2^{-(k+1)}; Delta[0] is the
// smallest admissible start not below Delta0.
std::vector<std::uint64_t> suggest_Delta(const WeightSequence& a,
                                         const std::vector<std::uint64_t>& delta,
                                         std::uint64_t Delta0);

} // namespace udense
