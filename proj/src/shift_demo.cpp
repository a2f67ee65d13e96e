#include "udense/shift_demo.hpp"

#include <cmath>
#include <sstream>

#include "udense/errors.hpp"

namespace udense {

ShiftDemoResult shift_demo_vector(const SparseThickSet& host,
                                  const std::vector<SparseVector>& targets) {
    ShiftDemoResult result;
    result.report = AuditReport{"shift_demo"};
    result.shifts.assign(targets.size(), 0);

    // Greedy placement: target i is hosted by the first unused interval that
    // is long enough and starts far enough out that the leaked mass of every
    // later block stays under the earlier targets' error budgets. With the
    // gap rule n_i >= n_{i-1} + 2i + 4 + ceil(log2 ||t_i||), the leakage into
    // target h sums to well below 2^{-h}; the exact dyadic check below
    // certifies the strict inequality.
    std::vector<std::pair<std::uint64_t, Dyadic>> entries;
    std::size_t next_interval = 0; // 0-based, interval k = next_interval + 1
    std::uint64_t prev_start = 0;
    bool placed_any = false;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const auto& t = targets[i];
        if (t.empty())
            continue; // approximated by overshifting, nothing to place
        const std::uint64_t span = t.max_index();
        const double norm_log2 = t.l1_norm_log2();
        const auto norm_bits =
            static_cast<std::uint64_t>(std::max(0.0, std::ceil(norm_log2))) + 1;
        const std::uint64_t min_start =
            placed_any ? prev_start + 2 * static_cast<std::uint64_t>(i) + 4 + norm_bits : 0;
        while (next_interval < host.n_seq.size() &&
               (static_cast<std::uint64_t>(next_interval) + 1 < span ||
                host.n_seq[next_interval] < min_start))
            ++next_interval;
        if (next_interval >= host.n_seq.size()) {
            std::ostringstream os;
            os << "target " << i << " (support span " << span
               << ") does not fit in any remaining interval";
            throw construction_error(os.str());
        }
        const std::uint64_t start = host.n_seq[next_interval];
        for (const auto& [idx, coeff] : t.entries())
            entries.emplace_back(start + idx,
                                 coeff.mul_pow2(-static_cast<std::int64_t>(start)));
        result.shifts[i] = start;
        prev_start = start;
        placed_any = true;
        ++next_interval;
    }
    result.x = SparseVector(std::move(entries));

    // Shifts for empty targets: one step past the whole support turns x into
    // the zero vector exactly.
    const std::uint64_t overshoot = result.x.empty() ? 1 : result.x.max_index() + 1;
    for (std::size_t i = 0; i < targets.size(); ++i)
        if (targets[i].empty())
            result.shifts[i] = overshoot;

    // Exact error certificates.
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const auto image = result.x.double_backward_shift(result.shifts[i]);
        const Dyadic err = (image - targets[i]).l1_norm();
        const Dyadic budget = Dyadic::pow2(-static_cast<std::int64_t>(i));
        std::ostringstream name;
        name << "target_" << i << "_error";
        std::ostringstream ctx;
        ctx << "shift " << result.shifts[i] << ", exact l1 error " << err.to_string();
        result.report.add(name.str(), err < budget, err.log2_magnitude(),
                          -static_cast<double>(i), ctx.str());
    }

    // Support inclusion: indices whose doubled magnitude reaches 1/2 must
    // live in the hosting set.
    const Dyadic half = Dyadic::pow2(-1);
    std::uint64_t escapes = 0;
    for (const auto& [idx, coeff] : result.x.entries()) {
        const bool heavy = coeff.abs().mul_pow2(static_cast<std::int64_t>(idx)) >= half;
        if (heavy && !host.set.contains(idx))
            ++escapes;
    }
    result.report.add("support_inclusion", escapes == 0, static_cast<double>(escapes), 0.0,
                      "heavy indices outside the interval union");
    return result;
}

} // namespace udense
