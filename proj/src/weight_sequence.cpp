#include "udense/weight_sequence.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "udense/errors.hpp"

namespace udense {

struct WeightSequence::Impl {
    Kind kind = Kind::constant_one;
    double alpha = 0.0;
    std::vector<std::uint64_t> k_seq;
    std::string name;
    std::function<double(std::uint64_t)> log_fn;

    // Shared prefix-sum cache, grown on demand. log_s[n] = log S_n.
    // cache_block tracks how many k_seq entries the cache frontier has
    // passed (block-recursive kind only).
    mutable std::mutex mu;
    mutable std::vector<double> log_s;
    mutable std::size_t cache_block = 0;

    double log_a0() const {
        return kind == Kind::custom_rule ? log_fn(0) : 0.0;
    }

    // v_n for the kinds whose ratio is a reciprocal integer, computable
    // without any prefix sum.
    double exact_v(std::uint64_t n) const {
        if (kind == Kind::constant_one)
            return 1.0 / static_cast<double>(n);
        // block-recursive: rule index p = number of block starts <= n,
        // clamped below by 1 (the prefix before the first start doubles).
        auto it = std::upper_bound(k_seq.begin(), k_seq.end(), n);
        auto p = static_cast<std::uint64_t>(it - k_seq.begin());
        return 1.0 / static_cast<double>(std::max<std::uint64_t>(1, p));
    }

    void ensure(std::uint64_t n) const {
        std::lock_guard<std::mutex> lock(mu);
        if (log_s.size() > n)
            return;
        if (log_s.empty()) {
            log_s.push_back(log_a0());
            cache_block = 0;
        }
        while (log_s.size() <= n) {
            const auto m = static_cast<std::uint64_t>(log_s.size());
            double v;
            switch (kind) {
            case Kind::constant_one:
                v = 1.0 / static_cast<double>(m);
                break;
            case Kind::power:
                v = std::exp(alpha * std::log(static_cast<double>(m)) - log_s.back());
                break;
            case Kind::prop3_built:
                while (cache_block < k_seq.size() && k_seq[cache_block] <= m)
                    ++cache_block;
                v = 1.0 / static_cast<double>(std::max<std::size_t>(1, cache_block));
                break;
            case Kind::custom_rule:
            default:
                v = std::exp(log_fn(m) - log_s.back());
                break;
            }
            log_s.push_back(log_s.back() + std::log1p(v));
        }
    }
};

WeightSequence WeightSequence::constant_one() {
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::constant_one;
    return WeightSequence(std::move(impl));
}

WeightSequence WeightSequence::power(double alpha) {
    if (!(alpha > 0.0))
        throw construction_error("power weight needs a positive exponent, got " +
                                 std::to_string(alpha));
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::power;
    impl->alpha = alpha;
    return WeightSequence(std::move(impl));
}

WeightSequence WeightSequence::prop3_built(std::vector<std::uint64_t> k_seq) {
    if (k_seq.empty() || k_seq.front() < 1)
        throw construction_error("block-recursive weight needs block starts >= 1");
    for (std::size_t i = 1; i < k_seq.size(); ++i)
        if (k_seq[i] <= k_seq[i - 1])
            throw construction_error("block starts must be strictly increasing");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::prop3_built;
    impl->k_seq = std::move(k_seq);
    return WeightSequence(std::move(impl));
}

WeightSequence WeightSequence::custom_rule(std::string name,
                                           std::function<double(std::uint64_t)> log_weight_fn) {
    if (!log_weight_fn)
        throw construction_error("custom weight rule is empty");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::custom_rule;
    impl->name = std::move(name);
    impl->log_fn = std::move(log_weight_fn);
    return WeightSequence(std::move(impl));
}

WeightSequence::Kind WeightSequence::kind() const { return impl_->kind; }
double WeightSequence::power_alpha() const { return impl_->alpha; }
const std::vector<std::uint64_t>& WeightSequence::prop3_k_seq() const { return impl_->k_seq; }
const std::string& WeightSequence::custom_name() const { return impl_->name; }

double WeightSequence::log_weight(std::uint64_t n) const {
    switch (impl_->kind) {
    case Kind::constant_one:
        return 0.0;
    case Kind::power:
        return n == 0 ? 0.0 : impl_->alpha * std::log(static_cast<double>(n));
    case Kind::prop3_built: {
        if (n == 0)
            return 0.0;
        // a_n = v_n * S_{n-1}
        impl_->ensure(n - 1);
        std::lock_guard<std::mutex> lock(impl_->mu);
        return std::log(impl_->exact_v(n)) + impl_->log_s[n - 1];
    }
    case Kind::custom_rule:
    default:
        return impl_->log_fn(n);
    }
}

double WeightSequence::weight(std::uint64_t n) const { return std::exp(log_weight(n)); }

double WeightSequence::log_prefix_sum(std::uint64_t n) const {
    impl_->ensure(n);
    std::lock_guard<std::mutex> lock(impl_->mu);
    return impl_->log_s[n];
}

double WeightSequence::v_ratio(std::uint64_t n) const {
    if (n == 0)
        throw std::domain_error("v ratio undefined at index 0 (empty denominator)");
    switch (impl_->kind) {
    case Kind::constant_one:
    case Kind::prop3_built:
        return impl_->exact_v(n);
    case Kind::power:
    case Kind::custom_rule:
    default:
        return std::exp(log_weight(n) - log_prefix_sum(n - 1));
    }
}

bool WeightSequence::operator==(const WeightSequence& rhs) const {
    if (impl_ == rhs.impl_)
        return true;
    if (impl_->kind != rhs.impl_->kind)
        return false;
    switch (impl_->kind) {
    case Kind::constant_one:
        return true;
    case Kind::power:
        return impl_->alpha == rhs.impl_->alpha;
    case Kind::prop3_built:
        return impl_->k_seq == rhs.impl_->k_seq;
    case Kind::custom_rule:
    default:
        return impl_->name == rhs.impl_->name;
    }
}

WeightSequence::Walker::Walker(const WeightSequence& seq) : seq_(&seq) {}

void WeightSequence::Walker::step() {
    const Impl& impl = *seq_->impl_;
    if (!started_) {
        started_ = true;
        n_ = 0;
        log_a_ = impl.log_a0();
        log_s_ = log_a_;
        v_ = 0.0;
        return;
    }
    ++n_;
    switch (impl.kind) {
    case Kind::constant_one:
        log_a_ = 0.0;
        v_ = 1.0 / static_cast<double>(n_);
        break;
    case Kind::power:
        log_a_ = impl.alpha * std::log(static_cast<double>(n_));
        v_ = std::exp(log_a_ - log_s_);
        break;
    case Kind::prop3_built:
        while (block_ < impl.k_seq.size() && impl.k_seq[block_] <= n_)
            ++block_;
        current_p_ = std::max<std::uint64_t>(1, block_);
        v_ = 1.0 / static_cast<double>(current_p_);
        log_a_ = log_s_ - std::log(static_cast<double>(current_p_));
        break;
    case Kind::custom_rule:
    default:
        log_a_ = impl.log_fn(n_);
        v_ = std::exp(log_a_ - log_s_);
        break;
    }
    log_s_ += std::log1p(v_);
}

AuditReport class_s_audit(const WeightSequence& a, std::uint64_t horizon,
                          const ClassSAuditOptions& options) {
    if (horizon < 1)
        throw std::domain_error("class audit horizon must be at least 1");
    AuditReport report{"class_s_audit"};

    auto walker = a.walker();
    walker.step(); // n = 0
    double prev_log_a = walker.log_weight();
    double prev_v = 0.0;
    std::uint64_t a_violations = 0, v_violations = 0;
    std::uint64_t first_a_violation = 0, first_v_violation = 0;
    double last_log_a = prev_log_a, last_v = 0.0;

    // Tiny slack absorbs the rounding noise of the log-space recurrence;
    // genuine monotonicity failures are orders of magnitude larger.
    const double log_tol = 1e-9;
    const double v_rel_tol = 1e-9;

    for (std::uint64_t n = 1; n <= horizon; ++n) {
        walker.step();
        const double log_a = walker.log_weight();
        const double v = walker.v();
        if (n > options.burn_in) {
            if (log_a < prev_log_a - log_tol && a_violations++ == 0)
                first_a_violation = n;
            if (n > options.burn_in + 1 && v > prev_v * (1.0 + v_rel_tol) + 1e-15 &&
                v_violations++ == 0)
                first_v_violation = n;
        }
        prev_log_a = log_a;
        prev_v = v;
        last_log_a = log_a;
        last_v = v;
    }

    auto violation_note = [](std::uint64_t count, std::uint64_t first) {
        if (count == 0)
            return std::string{};
        std::ostringstream os;
        os << count << " violations, first at n=" << first;
        return os.str();
    };
    report.add("weight_nondecreasing", a_violations == 0,
               static_cast<double>(a_violations), 0.0,
               violation_note(a_violations, first_a_violation));
    report.add("weight_grows", last_log_a >= std::log(options.growth_threshold),
               last_log_a, std::log(options.growth_threshold),
               "log a_n at the horizon vs log of the growth threshold");
    report.add("v_nonincreasing", v_violations == 0,
               static_cast<double>(v_violations), 0.0,
               violation_note(v_violations, first_v_violation));
    report.add("v_vanishes", last_v <= options.v_smallness, last_v, options.v_smallness,
               "v at the horizon vs the smallness bound");
    return report;
}

} // namespace udense
