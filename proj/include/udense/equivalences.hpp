#pragma once

// Cross-estimator consistency battery over a small fixed corpus of sets:
// the power-weight chain inequalities, domination of every weighted estimate
// by the exact window density, the factor-e checkpoint guarantee of the
// block-recursive weight, and the sparse thick set separating the window
// density from all the weighted ones. This is the library side of the CLI
// command `audit equivalences`.

#include <cstdint>

#include "udense/audit_report.hpp"

namespace udense {

struct EquivalenceAuditOptions {
    std::uint64_t horizon = 1000000; // profile scans end here
    double chain_tolerance = 0.05;
    double banach_tolerance = 0.02;
    double checkpoint_tolerance = 0.05;
    std::uint64_t blockweight_p_max = 24; // blocks of the built weight
    double blockweight_delta = 0.3;       // density target per corpus set
    std::uint64_t thick_intervals = 12;   // sparse thick set size
};

AuditReport run_equivalence_audit(const EquivalenceAuditOptions& options = {});

} // namespace udense
