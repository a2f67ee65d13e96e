#include "udense/index_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace udense {

IndexSet IndexSet::explicit_set(std::vector<std::uint64_t> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return IndexSet(Explicit{std::move(members)});
}

IndexSet IndexSet::residue_set(std::uint64_t modulus, const std::vector<std::uint64_t>& residues) {
    if (modulus == 0) throw std::invalid_argument("residue_set: modulus must be positive");
    Residue r;
    r.modulus = modulus;
    r.mask.assign(modulus, false);
    for (auto res : residues) {
        if (res >= modulus) throw std::invalid_argument("residue_set: residue out of range");
        r.mask[res] = true;
    }
    return IndexSet(std::move(r));
}

IndexSet IndexSet::interval_union(std::vector<Interval> parts) {
    for (const auto& iv : parts)
        if (iv.lo > iv.hi) throw std::invalid_argument("interval_union: lo > hi");
    std::sort(parts.begin(), parts.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    // Coalesce overlapping or adjacent intervals so counts stay closed-form.
    std::vector<Interval> merged;
    for (const auto& iv : parts) {
        if (!merged.empty() && iv.lo <= merged.back().hi + 1 && merged.back().hi + 1 != 0)
            merged.back().hi = std::max(merged.back().hi, iv.hi);
        else
            merged.push_back(iv);
    }
    return IndexSet(Intervals{std::move(merged)});
}

IndexSet IndexSet::periodic_window(std::uint64_t period, std::uint64_t width,
                                   std::int64_t anchor) {
    if (period == 0) throw std::invalid_argument("periodic_window: period must be positive");
    if (width >= period)
        return IndexSet(PeriodicWindow{1, 0, anchor}); // windows overlap: everything past anchor
    return IndexSet(PeriodicWindow{period, width, anchor});
}

namespace {

// Members of a periodic window among t in [0, t1] (t measured from the
// anchor): full periods plus the final partial one.
std::uint64_t window_count_from_anchor(std::uint64_t period, std::uint64_t width,
                                       std::uint64_t t1) {
    std::uint64_t full = t1 / period;
    std::uint64_t rem = t1 % period;
    return full * (width + 1) + std::min(rem, width) + 1;
}

} // namespace

bool IndexSet::contains(std::uint64_t j) const {
    if (const auto* e = std::get_if<Explicit>(&repr_)) {
        return std::binary_search(e->members.begin(), e->members.end(), j);
    }
    if (const auto* r = std::get_if<Residue>(&repr_)) {
        return r->mask[j % r->modulus];
    }
    if (const auto* iv = std::get_if<Intervals>(&repr_)) {
        auto it = std::upper_bound(iv->parts.begin(), iv->parts.end(), j,
                                   [](std::uint64_t x, const Interval& p) { return x < p.lo; });
        if (it == iv->parts.begin()) return false;
        --it;
        return j <= it->hi;
    }
    const auto& w = std::get<PeriodicWindow>(repr_);
    if (w.anchor >= 0) {
        if (j < static_cast<std::uint64_t>(w.anchor)) return false;
        return (j - static_cast<std::uint64_t>(w.anchor)) % w.period <= w.width;
    }
    std::uint64_t t = (j % w.period) + static_cast<std::uint64_t>(-w.anchor) % w.period;
    return t % w.period <= w.width;
}

std::uint64_t IndexSet::count_in_range(std::uint64_t lo, std::uint64_t hi) const {
    if (lo > hi) return 0;
    if (const auto* e = std::get_if<Explicit>(&repr_)) {
        auto first = std::lower_bound(e->members.begin(), e->members.end(), lo);
        auto last = std::upper_bound(e->members.begin(), e->members.end(), hi);
        return static_cast<std::uint64_t>(last - first);
    }
    if (const auto* r = std::get_if<Residue>(&repr_)) {
        std::uint64_t ones = 0;
        for (bool b : r->mask) ones += b ? 1 : 0;
        auto upto = [&](std::uint64_t x) { // count over [0, x]
            std::uint64_t full = (x + 1) / r->modulus;
            std::uint64_t rem = (x + 1) % r->modulus;
            std::uint64_t c = full * ones;
            for (std::uint64_t t = 0; t < rem; ++t) c += r->mask[t] ? 1 : 0;
            return c;
        };
        return upto(hi) - (lo == 0 ? 0 : upto(lo - 1));
    }
    if (const auto* iv = std::get_if<Intervals>(&repr_)) {
        std::uint64_t c = 0;
        for (const auto& p : iv->parts) {
            if (p.lo > hi) break;
            if (p.hi < lo) continue;
            c += std::min(hi, p.hi) - std::max(lo, p.lo) + 1;
        }
        return c;
    }
    const auto& w = std::get<PeriodicWindow>(repr_);
    auto upto = [&](std::uint64_t x) -> std::uint64_t { // count over [0, x]
        if (w.anchor >= 0) {
            auto a = static_cast<std::uint64_t>(w.anchor);
            if (x < a) return 0;
            return window_count_from_anchor(w.period, w.width, x - a);
        }
        std::uint64_t offset = static_cast<std::uint64_t>(-w.anchor) % w.period;
        // Count t = j + |anchor| over the aligned range; equivalently shift
        // the window phase by offset and count from zero.
        std::uint64_t c = window_count_from_anchor(w.period, w.width, x + offset);
        c -= offset == 0 ? 0 : window_count_from_anchor(w.period, w.width, offset - 1);
        return c;
    };
    return upto(hi) - (lo == 0 ? 0 : upto(lo - 1));
}

IndexSet IndexSet::shifted_down(std::uint64_t k) const {
    if (const auto* e = std::get_if<Explicit>(&repr_)) {
        std::vector<std::uint64_t> out;
        for (auto m : e->members)
            if (m >= k) out.push_back(m - k);
        return explicit_set(std::move(out));
    }
    if (const auto* r = std::get_if<Residue>(&repr_)) {
        Residue rot;
        rot.modulus = r->modulus;
        rot.mask.assign(r->modulus, false);
        for (std::uint64_t t = 0; t < r->modulus; ++t)
            rot.mask[t] = r->mask[(t + k) % r->modulus];
        return IndexSet(std::move(rot));
    }
    if (const auto* iv = std::get_if<Intervals>(&repr_)) {
        std::vector<Interval> out;
        for (const auto& p : iv->parts) {
            if (p.hi < k) continue;
            out.push_back({p.lo > k ? p.lo - k : 0, p.hi - k});
        }
        return interval_union(std::move(out));
    }
    const auto& w = std::get<PeriodicWindow>(repr_);
    return IndexSet(PeriodicWindow{w.period, w.width, w.anchor - static_cast<std::int64_t>(k)});
}

std::optional<std::uint64_t> IndexSet::natural_horizon() const {
    if (const auto* e = std::get_if<Explicit>(&repr_))
        return e->members.empty() ? std::optional<std::uint64_t>(0) : e->members.back();
    if (const auto* iv = std::get_if<Intervals>(&repr_))
        return iv->parts.empty() ? std::optional<std::uint64_t>(0) : iv->parts.back().hi;
    return std::nullopt;
}

IndexSet::Cursor::Cursor(const IndexSet& set, std::uint64_t start) : set_(&set), pos_(start) {
    if (const auto* e = std::get_if<Explicit>(&set.repr_)) {
        item_ = static_cast<std::size_t>(
            std::lower_bound(e->members.begin(), e->members.end(), start) - e->members.begin());
    } else if (const auto* r = std::get_if<Residue>(&set.repr_)) {
        residue_ = start % r->modulus;
    } else if (const auto* iv = std::get_if<Intervals>(&set.repr_)) {
        item_ = static_cast<std::size_t>(
            std::lower_bound(iv->parts.begin(), iv->parts.end(), start,
                             [](const Interval& p, std::uint64_t x) { return p.hi < x; }) -
            iv->parts.begin());
    } else {
        const auto& w = std::get<PeriodicWindow>(set.repr_);
        if (static_cast<std::int64_t>(start) >= w.anchor) {
            active_ = true;
            phase_ = (start - static_cast<std::uint64_t>(w.anchor)) % w.period;
        } else if (w.anchor < 0) {
            active_ = true;
            phase_ = (start + static_cast<std::uint64_t>(-w.anchor)) % w.period;
        }
    }
}

bool IndexSet::Cursor::next() {
    bool member = false;
    if (const auto* e = std::get_if<Explicit>(&set_->repr_)) {
        if (item_ < e->members.size() && e->members[item_] == pos_) {
            member = true;
            ++item_;
        }
    } else if (const auto* r = std::get_if<Residue>(&set_->repr_)) {
        member = r->mask[residue_];
        if (++residue_ == r->modulus) residue_ = 0;
    } else if (const auto* iv = std::get_if<Intervals>(&set_->repr_)) {
        while (item_ < iv->parts.size() && iv->parts[item_].hi < pos_) ++item_;
        member = item_ < iv->parts.size() && iv->parts[item_].lo <= pos_;
    } else {
        const auto& w = std::get<PeriodicWindow>(set_->repr_);
        if (!active_ && static_cast<std::int64_t>(pos_) >= w.anchor) {
            active_ = true;
            phase_ = (pos_ - static_cast<std::uint64_t>(w.anchor)) % w.period;
        }
        if (active_) {
            member = phase_ <= w.width;
            if (++phase_ == w.period) phase_ = 0;
        }
    }
    ++pos_;
    return member;
}

} // namespace udense
