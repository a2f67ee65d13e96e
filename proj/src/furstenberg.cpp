#include "udense/furstenberg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace udense {

namespace {

// geometric horizon ladder ending exactly at `last`
std::vector<std::uint64_t> horizon_ladder(std::uint64_t first, std::uint64_t last) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t h = first; h < last; h = h + std::max<std::uint64_t>(1, h / 2))
        out.push_back(h);
    out.push_back(last);
    return out;
}

} // namespace

Verdict family_member(const FamilySpec& spec, const IndexSet& A, std::uint64_t search_bound) {
    if (!(spec.delta >= 0.0) || spec.delta >= 1.0)
        throw std::domain_error("threshold must lie in [0, 1)");
    Verdict verdict;
    std::ostringstream note;
    switch (spec.kind) {
    case FamilyKind::natural_upper:
    case FamilyKind::weighted_upper: {
        if (spec.n > search_bound)
            throw std::domain_error("search bound below the first admissible horizon");
        WeightSequence a = spec.kind == FamilyKind::natural_upper
                               ? WeightSequence::constant_one()
                               : (spec.a ? *spec.a
                                         : throw std::domain_error(
                                               "weighted family needs a weight sequence"));
        auto cur = A.cursor(0);
        const auto best = max_partial_ratio(
            a, [&cur](std::uint64_t) { return cur.next(); }, spec.n, search_bound);
        if (best.value > spec.delta) {
            verdict.member = true;
            verdict.witness = best.horizon;
            note << "ratio " << best.value << " > " << spec.delta << " at horizon "
                 << best.horizon;
        } else {
            note << "best ratio " << best.value << " at horizon " << best.horizon
                 << " stayed at or below " << spec.delta << " up to " << search_bound;
        }
        break;
    }
    case FamilyKind::banach_upper: {
        if (spec.n < 1 || spec.n > search_bound)
            throw std::domain_error("window must be positive and fit under the search bound");
        // same slide as the window counter, but recording the first window
        // that clears the threshold
        std::uint64_t count = A.count_in_range(1, spec.n);
        std::uint64_t best_count = count;
        std::uint64_t best_pos = 0;
        const double needed = spec.delta * static_cast<double>(spec.n);
        auto leaving = A.cursor(1);
        auto entering = A.cursor(spec.n + 1);
        std::uint64_t pos = 0;
        while (static_cast<double>(count) <= needed && pos + 1 + spec.n <= search_bound) {
            ++pos;
            count -= leaving.next() ? 1 : 0;
            count += entering.next() ? 1 : 0;
            if (count > best_count) {
                best_count = count;
                best_pos = pos;
            }
        }
        const double ratio = static_cast<double>(count) / static_cast<double>(spec.n);
        if (ratio > spec.delta) {
            verdict.member = true;
            verdict.witness = pos;
            note << "window [" << pos + 1 << ", " << pos + spec.n << "] holds ratio " << ratio
                 << " > " << spec.delta;
        } else {
            note << "best window ratio "
                 << static_cast<double>(best_count) / static_cast<double>(spec.n)
                 << " (at position " << best_pos << ") stayed at or below " << spec.delta
                 << " for windows ending by " << search_bound;
        }
        break;
    }
    }
    verdict.note = note.str();
    return verdict;
}

IndexSet difference_intersection(const IndexSet& A, std::uint64_t k, std::uint64_t horizon) {
    std::vector<std::uint64_t> members;
    auto at = A.cursor(0);
    auto ahead = A.cursor(k);
    for (std::uint64_t j = 0; j <= horizon; ++j) {
        const bool here = at.next();
        const bool there = ahead.next();
        if (here && there)
            members.push_back(j);
    }
    return IndexSet::explicit_set(std::move(members));
}

AuditReport shift_density_audit(const WeightSequence& a, const IndexSet& A, std::uint64_t k,
                                const std::vector<std::uint64_t>& horizons,
                                std::uint64_t n0) {
    if (horizons.empty())
        throw std::domain_error("horizon list is empty");
    if (n0 < 1)
        throw std::domain_error("restricted sums must start at 1 or later");
    AuditReport report{"shift_density_audit"};
    const IndexSet shifted = A.shifted_down(k);
    const auto profile = upper_density_profile(a, A, horizons);
    const auto profile_shifted = upper_density_profile(a, shifted, horizons);

    // displacement against the accumulated one-step allowance
    {
        bool ok = true;
        double worst_excess = -1.0;
        std::uint64_t worst_horizon = 0;
        for (std::size_t i = 0; i < horizons.size(); ++i) {
            const double allowance =
                static_cast<double>(k) * v_ratio(a, horizons[i] + 1).value + 1e-9;
            const double excess = std::abs(profile_shifted.samples[i].ratio -
                                           profile.samples[i].ratio) -
                                  allowance;
            if (excess > worst_excess) {
                worst_excess = excess;
                worst_horizon = horizons[i];
            }
            ok = ok && excess <= 0.0;
        }
        std::ostringstream note;
        note << "worst horizon " << worst_horizon << ", shift " << k;
        report.add("profiles_agree", ok, worst_excess, 0.0, note.str());
    }

    // one-step estimates, verified on their own regardless of k
    {
        const IndexSet once = A.shifted_down(1);
        const auto profile_once = upper_density_profile(a, once, horizons);
        bool upper_ok = true;
        double worst = -1.0;
        for (std::size_t i = 0; i < horizons.size(); ++i) {
            const double slack = profile.samples[i].ratio +
                                 v_ratio(a, horizons[i] + 1).value -
                                 profile_once.samples[i].ratio;
            worst = std::max(worst, -slack);
            upper_ok = upper_ok && slack >= -1e-12;
        }
        report.add("upper_one_step", upper_ok, worst, 0.0,
                   "largest violation of the v allowance across horizons");

        // restricted sums from n0: the shifted mass dominates the original
        // tail mass damped by one v factor
        auto cur_once = once.cursor(0);
        const auto lhs = upper_density_profile(
            a,
            [&](std::uint64_t j) {
                const bool m = cur_once.next();
                return j >= n0 && m;
            },
            horizons);
        auto cur_a = A.cursor(0);
        const auto rhs = upper_density_profile(
            a,
            [&](std::uint64_t j) {
                const bool m = cur_a.next();
                return j >= n0 + 1 && m;
            },
            horizons);
        const double damp = 1.0 / (1.0 + v_ratio(a, n0).value);
        bool lower_ok = true;
        double worst_gap = -1.0;
        for (std::size_t i = 0; i < horizons.size(); ++i) {
            const double gap = damp * rhs.samples[i].ratio - lhs.samples[i].ratio;
            worst_gap = std::max(worst_gap, gap);
            lower_ok = lower_ok && gap <= 1e-12;
        }
        std::ostringstream note;
        note << "restricted sums from n0=" << n0;
        report.add("lower_one_step", lower_ok, worst_gap, 0.0, note.str());
    }
    return report;
}

GapReport bounded_gaps_audit(const WeightSequence& a, const IndexSet& A, double delta,
                             std::uint64_t kmax, std::uint64_t horizon) {
    if (!(delta > 0.0) || delta >= 1.0)
        throw std::domain_error("threshold must lie in (0, 1)");
    if (horizon < 16)
        throw std::domain_error("horizon too short to estimate anything");
    GapReport gaps;
    gaps.kmax = kmax;
    gaps.horizon = horizon;
    gaps.threshold = delta * delta / 2.0;

    const auto ladder = horizon_ladder(horizon / 16, horizon);
    const std::uint64_t tail_start = horizon / 4;
    gaps.density_estimate =
        upper_density_profile(a, A, ladder, tail_start).limsup_estimate();
    gaps.precondition_ok = gaps.density_estimate > delta;

    for (std::uint64_t k = 0; k <= kmax; ++k) {
        auto at = A.cursor(0);
        auto ahead = A.cursor(k);
        const auto profile = upper_density_profile(
            a,
            [&](std::uint64_t) {
                const bool here = at.next();
                const bool there = ahead.next();
                return here && there;
            },
            ladder, tail_start);
        if (profile.limsup_estimate() > gaps.threshold)
            gaps.kset.push_back(k);
    }

    for (std::size_t i = 1; i < gaps.kset.size(); ++i) {
        const std::uint64_t gap = gaps.kset[i] - gaps.kset[i - 1];
        if (gap > gaps.max_gap) {
            gaps.max_gap = gap;
            gaps.gap_positions.clear();
        }
        if (gap == gaps.max_gap && gaps.gap_positions.size() < 8)
            gaps.gap_positions.push_back(gaps.kset[i - 1]);
    }

    const double d = gaps.density_estimate;
    const double den = d * d - gaps.threshold;
    gaps.r_bound = den > 0.0 ? (d - gaps.threshold) / den : std::nan("");
    return gaps;
}

} // namespace udense
