#pragma once

// Finite-support vectors over the canonical basis, with exact dyadic
// coefficients. Entries are kept sorted by index with no explicit zeros.

#include <cstdint>
#include <utility>
#include <vector>

#include "udense/dyadic.hpp"

namespace udense {

class SparseVector {
  public:
    using Entry = std::pair<std::uint64_t, Dyadic>;

    SparseVector() = default;
    // Entries may arrive unsorted / duplicated; they are merged.
    explicit SparseVector(std::vector<Entry> entries);

    static SparseVector basis(std::uint64_t index) {
        return SparseVector({{index, Dyadic(1)}});
    }

    const std::vector<Entry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t support_size() const { return entries_.size(); }
    Dyadic coefficient(std::uint64_t index) const;
    std::uint64_t max_index() const; // throws std::domain_error when empty

    SparseVector operator+(const SparseVector& rhs) const;
    SparseVector operator-(const SparseVector& rhs) const;
    SparseVector scaled(const Dyadic& factor) const;
    // Restrict to indices in [lo, hi).
    SparseVector slice(std::uint64_t lo, std::uint64_t hi) const;
    // y[i] = x[i + steps], scaled by 2^steps: one application of twice the
    // backward shift, iterated `steps` times. Entries below `steps` vanish.
    SparseVector double_backward_shift(std::uint64_t steps) const;

    // Exact l1 norm (sum of |coefficients|).
    Dyadic l1_norm() const;
    // log2 of the l1 norm, usable even when coefficients carry extreme
    // exponents; -inf for the zero vector.
    double l1_norm_log2() const;
    // Widest coefficient mantissa, in bits. Callers with a width budget can
    // poll this and switch to l1_norm_log2() past their cap; arithmetic
    // itself never degrades.
    std::uint64_t max_mantissa_bits() const;

    bool operator==(const SparseVector& rhs) const { return entries_ == rhs.entries_; }
    bool operator!=(const SparseVector& rhs) const { return !(*this == rhs); }

  private:
    std::vector<Entry> entries_;
};

} // namespace udense
