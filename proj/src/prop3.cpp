#include "udense/prop3.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "udense/errors.hpp"

namespace udense {

namespace {

bool window_condition(const IndexSet& set, std::uint64_t k, std::uint64_t p, double delta) {
    const auto count = set.count_in_range(k, k + p - 1);
    return static_cast<double>(count) + 1e-9 >= static_cast<double>(p) * delta;
}

} // namespace

Prop3Input make_prop3_input(std::vector<IndexSet> sets, std::vector<double> deltas,
                            std::uint64_t p_max, std::uint64_t search_cap) {
    if (sets.empty() || sets.size() != deltas.size())
        throw construction_error("need one density target per set");
    for (double d : deltas)
        if (!(d > 0.0) || !(d < 1.0))
            throw construction_error("density targets must lie in (0, 1)");
    if (p_max < 1)
        throw construction_error("at least one block is required");

    Prop3Input input;
    input.sets = std::move(sets);
    input.deltas = std::move(deltas);
    input.classes = input.sets.size();

    std::uint64_t prev_k = 0;
    for (std::uint64_t p = 1; p <= p_max; ++p) {
        const auto n = input.class_of(p);
        const auto& set = input.sets[n];
        const double delta = input.deltas[n];
        // spacing first: k_p > k_{p-1} + (p-1), and k_1 >= 1
        std::uint64_t k = (p == 1) ? 1 : prev_k + p;
        bool found = false;
        for (; k <= search_cap; ++k) {
            if (window_condition(set, k, p, delta)) {
                found = true;
                break;
            }
        }
        if (!found) {
            std::ostringstream os;
            os << "no window of length " << p << " below " << search_cap << " holds "
               << input.deltas[n] * static_cast<double>(p) << " members of set " << n
               << " (block " << p << "); the target may exceed the set's window density";
            throw construction_error(os.str());
        }
        input.k_seq.push_back(k);
        prev_k = k;
    }
    return input;
}

void validate_prop3_input(const Prop3Input& input, std::uint64_t horizon) {
    if (input.sets.empty() || input.sets.size() != input.deltas.size())
        throw construction_error("need one density target per set");
    if (input.classes != input.sets.size())
        throw construction_error("partition class count must equal the set count");
    if (input.k_seq.empty())
        throw construction_error("no block starts given");
    if (input.k_seq.front() < 1)
        throw construction_error("first block start must be at least 1");
    for (std::size_t i = 1; i < input.k_seq.size(); ++i) {
        // condition on spacing: k_{p+1} > k_p + p with p = i
        if (input.k_seq[i] <= input.k_seq[i - 1] + i) {
            std::ostringstream os;
            os << "block start " << i + 1 << " (=" << input.k_seq[i]
               << ") must exceed previous start plus block length (" << input.k_seq[i - 1]
               << " + " << i << ")";
            throw construction_error(os.str());
        }
    }
    for (std::uint64_t p = 1; p <= input.k_seq.size(); ++p) {
        const auto k = input.k_seq[p - 1];
        if (k > horizon)
            break;
        const auto n = input.class_of(p);
        if (!window_condition(input.sets[n], k, p, input.deltas[n])) {
            std::ostringstream os;
            os << "window [" << k << ", " << k + p << ") holds only "
               << input.sets[n].count_in_range(k, k + p - 1) << " members of set " << n
               << ", needs " << input.deltas[n] * static_cast<double>(p) << " (block " << p
               << ")";
            throw construction_error(os.str());
        }
    }
}

WeightSequence build_prop3_weight(const Prop3Input& input, std::uint64_t horizon) {
    if (!input.k_seq.empty() && horizon < input.k_seq.front())
        throw std::domain_error("horizon ends before the first block start");
    validate_prop3_input(input, horizon);
    return WeightSequence::prop3_built(input.k_seq);
}

AuditReport prop3_post_audit(const WeightSequence& a, const Prop3Input& input,
                             std::uint64_t horizon) {
    AuditReport report{"prop3_post_audit"};
    const auto& k_seq = input.k_seq;

    // One walker pass: v must sit exactly on 1/p, the weight must never
    // decrease, and at every block start past the first the weight must not
    // move at all.
    auto walker = a.walker();
    walker.step();
    double prev_log_a = walker.log_weight();
    std::uint64_t v_mismatches = 0, decreases = 0, boundary_jumps = 0;
    std::size_t block = 0; // entries of k_seq passed
    std::vector<double> log_a_at_start(k_seq.size(), 0.0);
    for (std::uint64_t n = 1; n <= horizon; ++n) {
        walker.step();
        const bool at_start = block < k_seq.size() && k_seq[block] == n;
        if (at_start)
            ++block;
        const auto p = std::max<std::size_t>(1, block);
        if (walker.v() != 1.0 / static_cast<double>(p))
            ++v_mismatches;
        if (walker.log_weight() < prev_log_a - 1e-9)
            ++decreases;
        if (at_start) {
            log_a_at_start[block - 1] = walker.log_weight();
            if (block >= 2 && std::abs(walker.log_weight() - prev_log_a) > 1e-9)
                ++boundary_jumps;
        }
        prev_log_a = walker.log_weight();
    }

    std::ostringstream scope;
    scope << "scanned [1, " << horizon << "], " << block << " block starts in range";
    report.add("v_exactly_reciprocal", v_mismatches == 0, static_cast<double>(v_mismatches),
               0.0, scope.str());
    report.add("weight_nondecreasing", decreases == 0, static_cast<double>(decreases), 0.0,
               scope.str());
    report.add("flat_at_block_starts", boundary_jumps == 0, static_cast<double>(boundary_jumps),
               0.0, scope.str());

    // Coherence of the cached prefix sums with the definition v = a_n/S_{n-1},
    // sampled at block starts and their neighbours.
    double worst_rel = 0.0;
    for (std::size_t i = 0; i < block; ++i) {
        for (std::uint64_t n : {k_seq[i], k_seq[i] + 1}) {
            if (n < 1 || n > horizon)
                continue;
            const double recomputed =
                std::exp(a.log_weight(n) - a.log_prefix_sum(n - 1));
            const double direct = a.v_ratio(n);
            worst_rel = std::max(worst_rel, std::abs(recomputed - direct) / direct);
        }
    }
    report.add("v_matches_prefix_sums", worst_rel <= 1e-10, worst_rel, 1e-10,
               "relative error of a_n/S_{n-1} against the stored ratio");

    // Growth across blocks: the weight at the p-th start dominates p copies
    // of the weight at the first start.
    bool growth_ok = true;
    double worst_margin = 0.0;
    for (std::size_t i = 1; i < block; ++i) {
        const double need = std::log(static_cast<double>(i + 1)) + log_a_at_start[0];
        worst_margin = std::min(worst_margin, log_a_at_start[i] - need);
        if (log_a_at_start[i] < need - 1e-9)
            growth_ok = false;
    }
    report.add("block_start_growth", growth_ok, worst_margin, 0.0,
               "min over p of log a_{k_p} - log(p * a_{k_1})");
    return report;
}

std::vector<std::uint64_t> prop3_checkpoints(const Prop3Input& input, std::uint64_t set_index) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 1; p <= input.k_seq.size(); ++p)
        if (input.class_of(p) == set_index)
            out.push_back(input.k_seq[p - 1] + p - 1);
    return out;
}

std::vector<double> suggest_deltas(const std::vector<IndexSet>& sets, std::uint64_t window_len,
                                   std::uint64_t scan_horizon) {
    std::vector<double> out;
    out.reserve(sets.size());
    for (const auto& set : sets) {
        const auto count = banach_window_count(set, window_len, scan_horizon);
        out.push_back(0.9 * static_cast<double>(count) / static_cast<double>(window_len));
    }
    return out;
}

} // namespace udense
