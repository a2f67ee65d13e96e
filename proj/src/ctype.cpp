#include "udense/ctype.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "udense/errors.hpp"

namespace udense {

namespace {

std::uint64_t min_u64(std::uint64_t a, std::uint64_t b) { return a < b ? a : b; }

void check_block_geometry(const std::vector<CTypeOperator::BlockSpec>& specs) {
    if (specs.empty())
        throw construction_error("operator needs at least one block");
    for (std::size_t n = 0; n < specs.size(); ++n) {
        const auto& s = specs[n];
        std::ostringstream where;
        where << "block " << n;
        if (s.length == 0)
            throw construction_error(where.str() + ": zero length");
        if (s.delta >= s.length)
            throw construction_error(where.str() + ": doubled prefix must be shorter than the block");
        if (n == 0) {
            if (s.phi != 0)
                throw construction_error("block 0 must leak to itself");
            continue;
        }
        if (s.phi >= n)
            throw construction_error(where.str() + ": leak target must be a strictly earlier block");
        if (s.v.is_zero())
            throw construction_error(where.str() + ": leak coefficient must be nonzero");
        const std::uint64_t base = specs[s.phi].length;
        if (s.length % (2 * base) != 0) {
            std::ostringstream msg;
            msg << where.str() << ": length " << s.length
                << " is not a multiple of twice the target block length " << base;
            throw construction_error(msg.str());
        }
    }
}

} // namespace

CPlusOneLevels make_half_delta_levels(std::vector<std::uint64_t> delta,
                                      std::vector<std::uint64_t> Delta) {
    if (delta.empty() || delta.size() != Delta.size())
        throw construction_error("level arrays must be non-empty and the same size");
    std::vector<std::uint64_t> tau(delta.size());
    tau[0] = (delta[0] + 1) / 2;
    for (std::size_t k = 1; k < delta.size(); ++k) {
        if (delta[k] % 2 != 0) {
            std::ostringstream msg;
            msg << "half rule needs an even doubled prefix at level " << k
                << ", got " << delta[k];
            throw construction_error(msg.str());
        }
        tau[k] = delta[k] / 2;
    }
    return CPlusOneLevels{std::move(delta), std::move(Delta), std::move(tau)};
}

std::uint64_t block_level(std::uint64_t n) {
    if (n == 0)
        return 0;
    std::uint64_t k = 0;
    while ((std::uint64_t{1} << k) <= n)
        ++k;
    return k; // 2^{k-1} <= n < 2^k
}

CTypeOperator CTypeOperator::from_blocks(const std::vector<BlockSpec>& specs) {
    check_block_geometry(specs);
    std::vector<Block> blocks(specs.size());
    std::uint64_t start = 0;
    for (std::size_t n = 0; n < specs.size(); ++n) {
        static_cast<BlockSpec&>(blocks[n]) = specs[n];
        blocks[n].start = start;
        blocks[n].level = block_level(n);
        start += specs[n].length;
    }
    return CTypeOperator(std::move(blocks));
}

const CTypeOperator::Block& CTypeOperator::block(std::uint64_t n) const {
    if (n >= blocks_.size())
        throw std::domain_error("block index beyond the materialized range");
    return blocks_[n];
}

std::uint64_t CTypeOperator::dimension() const {
    const Block& last = blocks_.back();
    return last.start + last.length;
}

std::uint64_t CTypeOperator::block_of_index(std::uint64_t index) const {
    if (index >= dimension())
        throw std::domain_error("index beyond the materialized blocks");
    // first block whose start exceeds index, minus one
    std::size_t lo = 0, hi = blocks_.size();
    while (lo + 1 < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (blocks_[mid].start <= index)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

SparseVector CTypeOperator::apply(const SparseVector& x) const {
    std::vector<SparseVector::Entry> out;
    out.reserve(x.entries().size() + 4);
    for (const auto& [idx, c] : x.entries()) {
        const std::uint64_t n = block_of_index(idx);
        const Block& blk = blocks_[n];
        const std::uint64_t top = blk.start + blk.length - 1;
        if (idx < top) {
            // interior step, weight 2 while still inside the doubled prefix
            const std::uint64_t pos = idx + 1 - blk.start;
            out.emplace_back(idx + 1, pos <= blk.delta ? c.mul_pow2(1) : c);
        } else {
            if (n >= 1)
                out.emplace_back(blocks_[blk.phi].start, c * blk.v);
            out.emplace_back(blk.start, (-c).mul_pow2(-static_cast<std::int64_t>(blk.delta)));
        }
    }
    return SparseVector(std::move(out));
}

SparseVector CTypeOperator::iterate(const SparseVector& x, std::uint64_t steps) const {
    // downward closure of the touched blocks under the leak map
    std::set<std::uint64_t> allowed;
    for (const auto& [idx, c] : x.entries()) {
        (void)c;
        std::uint64_t n = block_of_index(idx);
        while (allowed.insert(n).second && n != 0)
            n = blocks_[n].phi;
    }
    SparseVector y = x;
    for (std::uint64_t s = 0; s < steps; ++s) {
        y = apply(y);
        for (const auto& [idx, c] : y.entries()) {
            (void)c;
            if (allowed.count(block_of_index(idx)) == 0)
                throw std::logic_error("orbit left the closed block family");
        }
    }
    return y;
}

SparseVector CTypeOperator::project(const SparseVector& x, std::uint64_t n) const {
    const Block& blk = block(n);
    return x.slice(blk.start, blk.start + blk.length);
}

Dyadic CTypeOperator::block_cycle_norm_exact(std::uint64_t l, const SparseVector& x,
                                             std::uint64_t j) const {
    const Block& blk = block(l);
    const std::uint64_t L = blk.length;
    const std::uint64_t d = blk.delta;
    Dyadic norm;
    for (const auto& [idx, c] : x.entries()) {
        if (idx < blk.start || idx >= blk.start + L)
            continue;
        const std::uint64_t i = idx - blk.start;
        const std::uint64_t f = (i + j % L) % L;
        const std::int64_t shift = static_cast<std::int64_t>(min_u64(f, d)) -
                                   static_cast<std::int64_t>(min_u64(i, d));
        norm += c.abs().mul_pow2(shift);
    }
    return norm;
}

double CTypeOperator::block_cycle_norm(std::uint64_t l, const SparseVector& x,
                                       std::uint64_t j) const {
    return block_cycle_norm_exact(l, x, j).to_double();
}

Dyadic CTypeOperator::x_scale_exact(const SparseVector& x, std::uint64_t l) const {
    const Block& blk = block(l);
    Dyadic scale;
    for (const auto& [idx, c] : x.entries()) {
        if (idx < blk.start || idx >= blk.start + blk.length)
            continue;
        const std::uint64_t i = idx - blk.start;
        // product of the interior weights above offset i
        const std::int64_t shift = static_cast<std::int64_t>(blk.delta) -
                                   static_cast<std::int64_t>(min_u64(i, blk.delta));
        scale += c.abs().mul_pow2(shift);
    }
    return scale;
}

double CTypeOperator::x_scale(const SparseVector& x, std::uint64_t l) const {
    return x_scale_exact(x, l).to_double();
}

CTypeOperator::BadTimeResult CTypeOperator::bad_time_set(std::uint64_t l, const SparseVector& x,
                                                         std::uint64_t J,
                                                         std::optional<Dyadic> threshold) const {
    const Block& blk = block(l);
    const std::uint64_t L = blk.length;
    const std::uint64_t width = 2 * blk.delta;

    BadTimeResult result;
    result.threshold = threshold ? *threshold : x_scale_exact(x, l).half();

    // the compressed orbit norm is L-periodic in j, so one period decides all
    std::vector<bool> bad_phase(L, false);
    bool any_bad = false;
    std::uint64_t lo = 0, hi = 0;
    for (std::uint64_t r = 0; r < L; ++r) {
        if (block_cycle_norm_exact(l, x, r) < result.threshold) {
            bad_phase[r] = true;
            if (!any_bad)
                lo = r;
            hi = r;
            any_bad = true;
        }
    }
    for (std::uint64_t j = 0; j <= J; ++j)
        if (bad_phase[j % L])
            result.bad_times.push_back(j);

    if (!any_bad) {
        result.j0_found = true;
        result.j0 = 0;
    } else {
        // a window start works iff it is at most the first bad phase and its
        // width reaches the last one; take the smallest such start
        const std::uint64_t needed = hi > width ? hi - width : 0;
        if (needed <= lo) {
            result.j0_found = true;
            result.j0 = needed;
        }
    }
    if (result.j0_found) {
        result.windows = IndexSet::periodic_window(L, width, result.j0);
        result.inclusion = true;
        for (std::uint64_t j : result.bad_times)
            if (!result.windows.contains(j))
                result.inclusion = false;
    }
    return result;
}

CTypeOperator build_c_plus_1(const CPlusOneLevels& levels) {
    const std::size_t K = levels.delta.size();
    if (K == 0 || levels.Delta.size() != K || levels.tau.size() != K)
        throw construction_error("level arrays must be non-empty and the same size");
    for (std::size_t k = 0; k < K; ++k) {
        if (levels.delta[k] >= levels.Delta[k]) {
            std::ostringstream msg;
            msg << "level " << k << ": doubled prefix " << levels.delta[k]
                << " must stay below the block length " << levels.Delta[k];
            throw construction_error(msg.str());
        }
    }
    for (std::size_t k = 1; k < K; ++k) {
        for (std::size_t j = 0; j < k; ++j) {
            if (levels.Delta[k] % (2 * levels.Delta[j]) != 0) {
                std::ostringstream msg;
                msg << "level " << k << ": block length " << levels.Delta[k]
                    << " is not a multiple of twice the level-" << j << " length "
                    << levels.Delta[j];
                throw construction_error(msg.str());
            }
        }
    }

    const std::uint64_t count = std::uint64_t{1} << (K - 1); // blocks 0 .. 2^{K-1}-1
    std::vector<CTypeOperator::BlockSpec> specs;
    specs.reserve(count);
    for (std::uint64_t n = 0; n < count; ++n) {
        const std::uint64_t k = block_level(n);
        CTypeOperator::BlockSpec s;
        s.length = levels.Delta[k];
        s.delta = levels.delta[k];
        if (n == 0) {
            s.phi = 0;
        } else {
            s.phi = n - (std::uint64_t{1} << (k - 1));
            s.v = Dyadic::pow2(-static_cast<std::int64_t>(levels.tau[k]));
        }
        specs.push_back(std::move(s));
    }
    return CTypeOperator::from_blocks(specs);
}

AuditScales audit_scales(const CPlusOneLevels& levels) {
    const std::size_t K = levels.delta.size();
    AuditScales scales;
    scales.beta_log2.assign(K, std::numeric_limits<double>::quiet_NaN());
    scales.N.assign(K, 0);
    for (std::size_t k = 0; k < K; ++k) {
        scales.N[k] = levels.Delta[k] - levels.delta[k];
        if (k >= 1)
            scales.beta_log2[k] = 2.0 + static_cast<double>(levels.delta[k - 1]) -
                                  static_cast<double>(levels.tau[k]);
    }
    return scales;
}

AuditReport validate_chaos_params(const std::vector<std::uint64_t>& delta,
                                  const std::vector<std::uint64_t>& tau,
                                  const std::vector<std::uint64_t>& Delta,
                                  std::uint64_t kmax) {
    if (delta.size() <= kmax || tau.size() <= kmax || Delta.size() <= kmax)
        throw std::domain_error("parameter arrays must reach the requested level");
    AuditReport report{"validate_chaos_params"};
    auto d = [&](std::uint64_t k) { return static_cast<std::int64_t>(delta[k]); };
    auto t = [&](std::uint64_t k) { return static_cast<std::int64_t>(tau[k]); };

    {
        bool increasing = true;
        for (std::uint64_t k = 1; k <= kmax; ++k)
            increasing = increasing && delta[k] > delta[k - 1] && Delta[k] > Delta[k - 1] &&
                         tau[k] > tau[k - 1];
        report.add("sequences_increasing", increasing);
    }
    {
        bool below = true;
        for (std::uint64_t k = 0; k <= kmax; ++k)
            below = below && delta[k] < Delta[k];
        report.add("doubled_prefix_below_length", below);
    }
    {
        // 2 delta[k-1] - delta[k] <= -8k, exactly
        std::int64_t worst = std::numeric_limits<std::int64_t>::min();
        for (std::uint64_t k = 1; k <= kmax; ++k)
            worst = std::max(worst, 2 * d(k - 1) - d(k) + 8 * static_cast<std::int64_t>(k));
        report.add("growth_gap", worst <= 0, static_cast<double>(worst), 0.0);
    }
    {
        bool increasing = true;
        for (std::uint64_t k = 2; k <= kmax; ++k)
            increasing = increasing && (d(k) - 2 * d(k - 1)) > (d(k - 1) - 2 * d(k - 2));
        report.add("growth_gap_increments_increasing", increasing);
    }
    {
        bool half = true;
        for (std::uint64_t k = 1; k <= kmax; ++k)
            half = half && 2 * t(k) == d(k);
        report.add("tau_half_delta", half);
    }
    {
        double worst_ratio = 0.0;
        for (std::uint64_t k = 1; k <= kmax; ++k)
            worst_ratio = std::max(worst_ratio,
                                   static_cast<double>(tau[k]) / static_cast<double>(delta[k]));
        report.add("leak_ratio_bounded", worst_ratio <= 0.9, worst_ratio, 0.9);
    }
    {
        double sum = 0.0;
        for (std::uint64_t k = 1; k <= kmax; ++k)
            sum += std::exp2(static_cast<double>(k) +
                             static_cast<double>(d(k - 1) - t(k)) / 2.0);
        report.add("beta_root_summable", sum <= 1.0 + 1e-12, sum, 1.0);
    }
    {
        bool nonincreasing = true;
        for (std::uint64_t k = 2; k <= kmax; ++k)
            nonincreasing = nonincreasing && (d(k - 1) - t(k)) <= (d(k - 2) - t(k - 1));
        report.add("leak_scale_nonincreasing", nonincreasing);
    }
    {
        bool increasing = true;
        for (std::uint64_t k = 2; k <= kmax; ++k)
            increasing = increasing && (d(k) - t(k)) > (d(k - 1) - t(k - 1));
        report.add("suppression_gap_increasing", increasing);
    }
    {
        bool multiples = true;
        for (std::uint64_t k = 1; k <= kmax && multiples; ++k)
            for (std::uint64_t j = 0; j < k && multiples; ++j)
                multiples = Delta[k] % (2 * Delta[j]) == 0;
        report.add("length_doubling_chain", multiples);
    }
    return report;
}

} // namespace udense
