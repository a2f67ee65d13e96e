#pragma once

// Subsets of the natural numbers in four closed-form representations:
//   - explicit finite member list,
//   - residue classes mod q (membership decided by j % q),
//   - finite unions of inclusive intervals,
//   - periodically repeated windows (one window of fixed width per period,
//     anchored at a possibly negative origin).
// All of them support O(log) range counts, O(1)-per-step forward cursors,
// and exact left shifts A - k = { j : j + k in A }.

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace udense {

class IndexSet {
  public:
    struct Explicit {
        std::vector<std::uint64_t> members; // sorted, deduplicated
    };
    struct Residue {
        std::uint64_t modulus = 1;
        std::vector<bool> mask; // size == modulus; j in A iff mask[j % modulus]
    };
    struct Interval {
        std::uint64_t lo = 0;
        std::uint64_t hi = 0; // inclusive
    };
    struct Intervals {
        std::vector<Interval> parts; // sorted, pairwise disjoint, non-adjacent
    };
    // { j >= 0 : j >= anchor and (j - anchor) mod period <= width }.
    // anchor may be negative after shifting; width < period keeps the gaps.
    struct PeriodicWindow {
        std::uint64_t period = 1;
        std::uint64_t width = 0; // window is [start, start + width], inclusive
        std::int64_t anchor = 0;
    };

    IndexSet() : repr_(Explicit{}) {}

    static IndexSet explicit_set(std::vector<std::uint64_t> members);
    static IndexSet residue_set(std::uint64_t modulus, const std::vector<std::uint64_t>& residues);
    static IndexSet interval_union(std::vector<Interval> parts);
    static IndexSet periodic_window(std::uint64_t period, std::uint64_t width, std::int64_t anchor);

    // Convenience builders used throughout the test corpus.
    static IndexSet multiples_of(std::uint64_t q) { return residue_set(q, {0}); }
    static IndexSet all() { return residue_set(1, {0}); }
    static IndexSet empty() { return explicit_set({}); }

    bool contains(std::uint64_t j) const;
    // #(A `intersect` [lo, hi]), inclusive on both ends; lo > hi counts zero.
    std::uint64_t count_in_range(std::uint64_t lo, std::uint64_t hi) const;
    // A - k.
    IndexSet shifted_down(std::uint64_t k) const;
    // Largest index that matters for finite representations (explicit,
    // interval union); nullopt for the periodic representations.
    std::optional<std::uint64_t> natural_horizon() const;

    // Forward membership walker: amortized O(1) per step, no division in the
    // hot loop. Starts at index `start` and reports one index per next().
    class Cursor {
      public:
        Cursor(const IndexSet& set, std::uint64_t start);
        bool next(); // membership of the current index; advances afterwards

      private:
        const IndexSet* set_;
        std::uint64_t pos_;
        std::size_t item_ = 0;       // explicit / interval index
        std::uint64_t residue_ = 0;  // rotating residue for Residue
        std::uint64_t phase_ = 0;    // (pos - anchor) mod period, valid once active
        bool active_ = false;        // PeriodicWindow: pos >= anchor
    };
    Cursor cursor(std::uint64_t start = 0) const { return Cursor(*this, start); }

    const std::variant<Explicit, Residue, Intervals, PeriodicWindow>& repr() const {
        return repr_;
    }

  private:
    explicit IndexSet(std::variant<Explicit, Residue, Intervals, PeriodicWindow> repr)
        : repr_(std::move(repr)) {}

    std::variant<Explicit, Residue, Intervals, PeriodicWindow> repr_;
};

} // namespace udense
