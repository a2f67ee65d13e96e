#pragma once

// Positive, lazily evaluated weight sequences (a_n) together with their
// log-space prefix sums log S_n = log(a_0 + ... + a_n) and the step ratios
//
//     v_n = a_n / S_{n-1},  n >= 1.
//
// Prefix sums are kept in log space because several weights of interest grow
// geometrically: S_n would overflow a double long before the horizons the
// density estimators need. The cache is built with the recurrence
// log S_n = log S_{n-1} + log1p(v_n), which ties the stored sums and the
// reported v_n together to a few ulps by construction.

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "udense/audit_report.hpp"

namespace udense {

class WeightSequence {
  public:
    enum class Kind { constant_one, power, prop3_built, custom_rule };

    // a_n = 1 for all n. Weighted densities with this weight reduce exactly
    // to counting densities.
    static WeightSequence constant_one();
    // a_0 = 1 and a_n = n^alpha for n >= 1 (the zero term is lifted to keep
    // every prefix sum positive; only a finite prefix is affected).
    static WeightSequence power(double alpha); // requires alpha > 0
    // Block-recursive weight: a_j = (1/p) * S_{j-1} on the p-th block
    // [k_p, k_{p+1}). Constructed via build_prop3_weight(); see prop3.hpp.
    // k_seq lists k_1 < k_2 < ...; indices below k_1 follow the p = 1 rule,
    // indices past the last block keep its rule.
    static WeightSequence prop3_built(std::vector<std::uint64_t> k_seq);
    // Arbitrary rule given by n -> log a_n. `name` labels serialized forms.
    static WeightSequence custom_rule(std::string name,
                                      std::function<double(std::uint64_t)> log_weight_fn);

    Kind kind() const;
    // power(): exponent; prop3_built(): block starts; custom_rule(): label.
    double power_alpha() const;
    const std::vector<std::uint64_t>& prop3_k_seq() const;
    const std::string& custom_name() const;

    double log_weight(std::uint64_t n) const;
    double weight(std::uint64_t n) const; // exp(log_weight); may overflow to inf
    double log_prefix_sum(std::uint64_t n) const;
    // v_n for n >= 1 (throws std::domain_error at n = 0). Exact (one floating
    // division, no accumulated error) for the constant and block-recursive
    // kinds, whose ratios are reciprocals of integers by construction.
    double v_ratio(std::uint64_t n) const;

    // Sequential walker: emits n = 0, 1, 2, ... with per-step log a_n, the
    // running log S_n and v_n, without touching the shared cache. All scan
    // loops use this; it is cheap (no allocation, no locking) and any number
    // of walkers may run concurrently.
    class Walker {
      public:
        explicit Walker(const WeightSequence& seq);
        void step(); // first call lands on n = 0
        std::uint64_t n() const { return n_; }
        double log_weight() const { return log_a_; }
        double log_prefix() const { return log_s_; }
        double v() const { return v_; } // valid for n >= 1

      private:
        const WeightSequence* seq_;
        std::uint64_t n_ = 0;
        bool started_ = false;
        double log_a_ = 0.0;
        double log_s_ = 0.0;
        double v_ = 0.0;
        // block-recursive bookkeeping
        std::size_t block_ = 0;
        std::uint64_t current_p_ = 1;
    };
    Walker walker() const { return Walker(*this); }

    bool operator==(const WeightSequence& rhs) const;

  private:
    struct Impl;
    explicit WeightSequence(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<Impl> impl_;
};

struct VRatio {
    std::uint64_t n = 0;
    double value = 0.0;
};

inline VRatio v_ratio(const WeightSequence& a, std::uint64_t n) {
    return VRatio{n, a.v_ratio(n)};
}

struct ClassSAuditOptions {
    double growth_threshold = 10.0; // proxy for a_n -> infinity at the horizon
    double v_smallness = 0.05;      // proxy for v_n -> 0 at the horizon
    // Monotonicity checks start here. The a_0 = 1 convention can distort the
    // first few ratios (e.g. steep power weights), which says nothing about
    // the limiting behaviour the class is about.
    std::uint64_t burn_in = 16;
};

// Checks the four membership proxies on [0, horizon]: a_n non-decreasing,
// a_horizon >= growth threshold, v_n non-increasing, v_horizon below the
// smallness bound. Reports all four; never throws on failure.
AuditReport class_s_audit(const WeightSequence& a, std::uint64_t horizon,
                          const ClassSAuditOptions& options = {});

} // namespace udense
