#include "udense/equivalences.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "udense/density.hpp"
#include "udense/index_set.hpp"
#include "udense/prop3.hpp"
#include "udense/sparse_thick.hpp"
#include "udense/weight_sequence.hpp"

namespace udense {

namespace {

struct CorpusSet {
    std::string label;
    IndexSet set;
    double exact_window_density; // sup over windows, known in closed form
};

std::vector<std::uint64_t> doubling_horizons(std::uint64_t first, std::uint64_t last) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t h = first; h < last; h *= 2)
        out.push_back(h);
    out.push_back(last);
    return out;
}

} // namespace

AuditReport run_equivalence_audit(const EquivalenceAuditOptions& options) {
    AuditReport report{"equivalences"};
    const auto horizons = doubling_horizons(1024, options.horizon);
    const std::uint64_t tail_start = options.horizon / 8;

    // the sparse thick fixture: geometric bounds eps_k = 2^-k
    std::vector<double> eps(options.thick_intervals);
    for (std::size_t k = 0; k < eps.size(); ++k)
        eps[k] = std::exp2(-static_cast<double>(k + 1));
    const auto linear = WeightSequence::power(1.0);
    const auto thick = build_sparse_thick_set(linear, eps);
    const std::uint64_t kmax = options.thick_intervals;

    std::vector<CorpusSet> corpus;
    corpus.push_back({"evens", IndexSet::multiples_of(2), 0.5});
    corpus.push_back({"mult3", IndexSet::multiples_of(3), 1.0 / 3.0});
    corpus.push_back({"burst5", IndexSet::residue_set(5, {0, 1, 2}), 0.6});
    corpus.push_back({"thick", thick.set, 1.0});

    const double alphas[] = {0.5, 1.0, 2.0};

    // chain: counting estimate within one tolerance below each power
    // estimate, and each power estimate within (1+alpha) times the counting
    // estimate
    for (const auto& cs : corpus) {
        const double plain =
            upper_density_profile(WeightSequence::constant_one(), cs.set, horizons, tail_start)
                .limsup_estimate();
        for (double alpha : alphas) {
            const double powered =
                upper_density_profile(WeightSequence::power(alpha), cs.set, horizons, tail_start)
                    .limsup_estimate();
            std::ostringstream lo, hi, at;
            lo << "chain_lower_" << cs.label << "_alpha_" << alpha;
            hi << "chain_upper_" << cs.label << "_alpha_" << alpha;
            at << "horizon " << options.horizon;
            report.add(lo.str(), plain <= powered + options.chain_tolerance, plain - powered,
                       options.chain_tolerance, at.str());
            report.add(hi.str(), powered <= (1.0 + alpha) * plain + options.chain_tolerance,
                       powered - (1.0 + alpha) * plain, options.chain_tolerance, at.str());

            std::ostringstream dom;
            dom << "window_dominates_" << cs.label << "_alpha_" << alpha;
            report.add(dom.str(), powered <= cs.exact_window_density + options.banach_tolerance,
                       powered - cs.exact_window_density, options.banach_tolerance, at.str());
        }
    }

    // factor-e checkpoints of the block-recursive weight on the three
    // residue corpus sets
    {
        std::vector<IndexSet> sets = {corpus[0].set, corpus[1].set, corpus[2].set};
        std::vector<double> deltas(3, options.blockweight_delta);
        const auto input = make_prop3_input(sets, deltas, options.blockweight_p_max);
        const std::uint64_t weight_horizon = input.k_seq.back() + options.blockweight_p_max + 1;
        const auto weight = build_prop3_weight(input, weight_horizon);
        report.add("blockweight_structure", prop3_post_audit(weight, input, weight_horizon).pass());

        const double floor_value =
            options.blockweight_delta / std::exp(1.0) - options.checkpoint_tolerance;
        for (std::size_t n = 0; n < sets.size(); ++n) {
            const auto checkpoints = prop3_checkpoints(input, n);
            double worst = 1.0;
            for (std::uint64_t N : checkpoints)
                worst = std::min(worst, partial_weighted_density(weight, sets[n], N));
            std::ostringstream name, note;
            name << "blockweight_checkpoints_set_" << n;
            note << checkpoints.size() << " checkpoints, worst ratio " << worst;
            report.add(name.str(), checkpoints.size() >= 8 && worst >= floor_value, worst,
                       floor_value, note.str());
        }
    }

    // separation: full window of length kmax versus vanishing weighted ratio
    // at the late checkpoints
    {
        const auto cps = thick.checkpoints();
        const std::uint64_t scan = cps.back();
        const auto window = banach_window_count(thick.set, kmax, scan);
        report.add("separation_window_full", window == kmax, static_cast<double>(window),
                   static_cast<double>(kmax), "window length equals the last interval");

        double worst = 0.0;
        std::uint64_t late_checkpoints = 0;
        for (std::size_t k = 8; k <= kmax; ++k) {
            worst = std::max(worst, partial_weighted_density(linear, thick.set, cps[k - 1]));
            ++late_checkpoints;
        }
        std::ostringstream note;
        note << late_checkpoints << " checkpoints past the eighth interval";
        report.add("separation_weighted_vanishes", worst <= 0.02, worst, 0.02, note.str());
    }

    return report;
}

} // namespace udense
