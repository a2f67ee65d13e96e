#pragma once

// Desk-scale approximation of a hypercyclic vector for twice the backward
// shift, supported inside a sparse thick set: each finite target t_i gets a
// copy scaled by 2^{-n} planted in an interval starting at n, so that
// shifting n times recovers t_i up to the (exactly computed) leakage of the
// later blocks. The construction certifies, in exact dyadic arithmetic,
//
//   - per target i: some shift j has l1 error below 2^{-i}, and
//   - {j : 2^j |x_j| >= 1/2} stays inside the hosting interval union.

#include <cstdint>
#include <vector>

#include "udense/audit_report.hpp"
#include "udense/sparse_thick.hpp"
#include "udense/sparse_vector.hpp"

namespace udense {

struct ShiftDemoResult {
    SparseVector x;
    std::vector<std::uint64_t> shifts; // per target: j with (2B)^j x close to it
    AuditReport report;
};

// Places targets greedily into the host intervals, skipping intervals that
// are too short for a target's support and pushing placements apart until
// the exact error bounds hold. Throws construction_error when the intervals
// cannot host every target.
ShiftDemoResult shift_demo_vector(const SparseThickSet& host,
                                  const std::vector<SparseVector>& targets);

} // namespace udense
