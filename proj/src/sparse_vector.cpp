#include "udense/sparse_vector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace udense {

SparseVector::SparseVector(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    entries_.reserve(entries.size());
    for (auto& e : entries) {
        if (!entries_.empty() && entries_.back().first == e.first)
            entries_.back().second += e.second;
        else
            entries_.push_back(std::move(e));
        if (!entries_.empty() && entries_.back().second.is_zero()) entries_.pop_back();
    }
}

Dyadic SparseVector::coefficient(std::uint64_t index) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, std::uint64_t i) { return e.first < i; });
    if (it != entries_.end() && it->first == index) return it->second;
    return Dyadic();
}

std::uint64_t SparseVector::max_index() const {
    if (entries_.empty()) throw std::domain_error("SparseVector::max_index: empty vector");
    return entries_.back().first;
}

SparseVector SparseVector::operator+(const SparseVector& rhs) const {
    SparseVector out;
    out.entries_.reserve(entries_.size() + rhs.entries_.size());
    auto a = entries_.begin();
    auto b = rhs.entries_.begin();
    while (a != entries_.end() || b != rhs.entries_.end()) {
        if (b == rhs.entries_.end() || (a != entries_.end() && a->first < b->first)) {
            out.entries_.push_back(*a++);
        } else if (a == entries_.end() || b->first < a->first) {
            out.entries_.push_back(*b++);
        } else {
            Dyadic c = a->second + b->second;
            if (!c.is_zero()) out.entries_.emplace_back(a->first, c);
            ++a;
            ++b;
        }
    }
    return out;
}

SparseVector SparseVector::operator-(const SparseVector& rhs) const {
    return *this + rhs.scaled(Dyadic(-1));
}

SparseVector SparseVector::scaled(const Dyadic& factor) const {
    SparseVector out;
    if (factor.is_zero()) return out;
    out.entries_.reserve(entries_.size());
    for (const auto& [i, c] : entries_) out.entries_.emplace_back(i, c * factor);
    return out;
}

SparseVector SparseVector::slice(std::uint64_t lo, std::uint64_t hi) const {
    SparseVector out;
    for (const auto& e : entries_)
        if (e.first >= lo && e.first < hi) out.entries_.push_back(e);
    return out;
}

SparseVector SparseVector::double_backward_shift(std::uint64_t steps) const {
    SparseVector out;
    if (steps > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
        throw std::domain_error("double_backward_shift: step count too large");
    for (const auto& [i, c] : entries_)
        if (i >= steps)
            out.entries_.emplace_back(i - steps, c.mul_pow2(static_cast<std::int64_t>(steps)));
    return out;
}

Dyadic SparseVector::l1_norm() const {
    Dyadic sum;
    for (const auto& [i, c] : entries_) {
        (void)i;
        sum += c.abs();
    }
    return sum;
}

double SparseVector::l1_norm_log2() const {
    // max + log2(sum of ratios): stable for arbitrarily spread exponents.
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& [i, c] : entries_) {
        (void)i;
        best = std::max(best, c.log2_magnitude());
    }
    if (!std::isfinite(best)) return best;
    double acc = 0.0;
    for (const auto& [i, c] : entries_) {
        (void)i;
        acc += std::exp2(c.log2_magnitude() - best);
    }
    return best + std::log2(acc);
}

std::uint64_t SparseVector::max_mantissa_bits() const {
    std::uint64_t m = 0;
    for (const auto& [i, c] : entries_) {
        (void)i;
        m = std::max(m, c.mantissa_bits());
    }
    return m;
}

} // namespace udense
