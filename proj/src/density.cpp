#include "udense/density.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "udense/util.hpp"

namespace udense {

namespace {

void validate_horizons(const std::vector<std::uint64_t>& horizons) {
    if (horizons.empty())
        throw std::domain_error("horizon list is empty");
    for (std::size_t i = 1; i < horizons.size(); ++i)
        if (horizons[i] <= horizons[i - 1])
            throw std::domain_error("horizons must be strictly increasing");
}

// One pass over [0, horizons.back()], accumulating numerator and denominator
// in a floating frame: each weight enters as exp(log a_n - frame). When the
// upcoming weight would overflow the frame, both sums shrink by the common
// factor and the frame moves up, which leaves every subsequent ratio intact.
// For the constant-one weight the frame never moves and each addend is
// exactly 1.0, so the ratio is an exact rational count.
std::vector<DensitySample> scan_ratios(const WeightSequence& a,
                                       const std::function<bool(std::uint64_t)>& member,
                                       const std::vector<std::uint64_t>& horizons) {
    std::vector<DensitySample> out;
    out.reserve(horizons.size());
    auto walker = a.walker();
    CompensatedSum num, den;
    double frame = 0.0;
    std::size_t next = 0;
    for (std::uint64_t n = 0; n <= horizons.back(); ++n) {
        walker.step();
        double rel = walker.log_weight() - frame;
        if (rel > 690.0) {
            const double shrink = std::exp(-rel);
            num.scale(shrink);
            den.scale(shrink);
            frame = walker.log_weight();
            rel = 0.0;
        }
        const double w = std::exp(rel);
        den.add(w);
        if (member(n))
            num.add(w);
        if (n == horizons[next]) {
            double ratio = den.value() > 0.0 ? num.value() / den.value() : 0.0;
            out.push_back({n, std::clamp(ratio, 0.0, 1.0)});
            ++next;
        }
    }
    return out;
}

DensityProfile finalize(std::vector<DensitySample> samples, std::uint64_t tail_start) {
    DensityProfile profile;
    profile.samples = std::move(samples);
    profile.tail_start = tail_start;
    bool any = false;
    for (const auto& s : profile.samples) {
        if (s.horizon < tail_start)
            continue;
        if (!any) {
            profile.running_max = profile.running_min = s.ratio;
            any = true;
        } else {
            profile.running_max = std::max(profile.running_max, s.ratio);
            profile.running_min = std::min(profile.running_min, s.ratio);
        }
    }
    return profile;
}

} // namespace

double partial_weighted_density(const WeightSequence& a, const IndexSet& A, std::uint64_t N) {
    auto cur = A.cursor(0);
    auto samples =
        scan_ratios(a, [&cur](std::uint64_t) { return cur.next(); }, {N});
    return samples.front().ratio;
}

DensityProfile upper_density_profile(const WeightSequence& a, const IndexSet& A,
                                     const std::vector<std::uint64_t>& horizons,
                                     std::uint64_t tail_start) {
    validate_horizons(horizons);
    auto cur = A.cursor(0);
    return finalize(scan_ratios(a, [&cur](std::uint64_t) { return cur.next(); }, horizons),
                    tail_start);
}

DensityProfile upper_density_profile(const WeightSequence& a,
                                     const std::function<bool(std::uint64_t)>& member_stream,
                                     const std::vector<std::uint64_t>& horizons,
                                     std::uint64_t tail_start) {
    validate_horizons(horizons);
    return finalize(scan_ratios(a, member_stream, horizons), tail_start);
}

RangeMaxRatio max_partial_ratio(const WeightSequence& a,
                                const std::function<bool(std::uint64_t)>& member_stream,
                                std::uint64_t lo, std::uint64_t hi) {
    if (hi < lo)
        throw std::domain_error("empty horizon range");
    auto walker = a.walker();
    CompensatedSum num, den;
    double frame = 0.0;
    RangeMaxRatio best{-1.0, lo};
    for (std::uint64_t n = 0; n <= hi; ++n) {
        walker.step();
        double rel = walker.log_weight() - frame;
        if (rel > 690.0) {
            const double shrink = std::exp(-rel);
            num.scale(shrink);
            den.scale(shrink);
            frame = walker.log_weight();
            rel = 0.0;
        }
        const double w = std::exp(rel);
        den.add(w);
        if (member_stream(n))
            num.add(w);
        if (n >= lo) {
            const double ratio =
                den.value() > 0.0 ? std::clamp(num.value() / den.value(), 0.0, 1.0) : 0.0;
            if (ratio > best.value) {
                best.value = ratio;
                best.horizon = n;
            }
        }
    }
    return best;
}

std::uint64_t banach_window_count(const IndexSet& A, std::uint64_t window_len,
                                  std::uint64_t scan_horizon) {
    if (window_len < 1)
        throw std::domain_error("window length must be at least 1");
    if (scan_horizon < window_len)
        throw std::domain_error("scan horizon shorter than the window");
    // Slide [k+1, k+N] with two edge cursors: moving the window one step to
    // the right drops index k and admits index k+N.
    std::uint64_t count = A.count_in_range(1, window_len);
    std::uint64_t best = count;
    auto leaving = A.cursor(1);
    auto entering = A.cursor(window_len + 1);
    for (std::uint64_t k = 1; k + window_len <= scan_horizon; ++k) {
        count -= leaving.next() ? 1 : 0;
        count += entering.next() ? 1 : 0;
        best = std::max(best, count);
    }
    return best;
}

DensityProfile banach_density_profile(const IndexSet& A,
                                      const std::vector<std::uint64_t>& window_lens,
                                      std::uint64_t scan_horizon) {
    validate_horizons(window_lens);
    std::vector<DensitySample> samples;
    samples.reserve(window_lens.size());
    for (std::uint64_t len : window_lens) {
        const auto count = banach_window_count(A, len, scan_horizon);
        samples.push_back({len, static_cast<double>(count) / static_cast<double>(len)});
    }
    return finalize(std::move(samples), 0);
}

AuditReport density_ordering_audit(const WeightSequence& a, const WeightSequence& b,
                                   const IndexSet& A, const std::vector<std::uint64_t>& horizons,
                                   double tolerance) {
    validate_horizons(horizons);
    AuditReport report{"density_ordering_audit"};
    const std::uint64_t max_h = horizons.back();

    // Numeric check of the hypothesis: r_n = a_n / b_n is non-increasing
    // beyond a short burn-in and has decayed by the last horizon.
    const std::uint64_t burn_in = std::max<std::uint64_t>(1, max_h / 100);
    auto wa = a.walker();
    auto wb = b.walker();
    wa.step();
    wb.step();
    double prev_diff = 0.0;
    double last_diff = 0.0;
    std::uint64_t violations = 0;
    std::uint64_t first_violation = 0;
    for (std::uint64_t n = 1; n <= max_h; ++n) {
        wa.step();
        wb.step();
        const double diff = wa.log_weight() - wb.log_weight();
        if (n > burn_in + 1 && diff > prev_diff + 1e-9 && violations++ == 0)
            first_violation = n;
        prev_diff = diff;
        last_diff = diff;
    }
    std::ostringstream note;
    note << "checked on (" << burn_in << ", " << max_h << "]";
    if (violations > 0)
        note << ", first violation at n=" << first_violation;
    report.add("ratio_eventually_decreasing", violations == 0, static_cast<double>(violations),
               0.0, note.str(), Severity::warn);
    const double final_ratio = std::exp(last_diff);
    report.add("ratio_vanishes", final_ratio <= 0.1, final_ratio, 0.1,
               "a_n/b_n at the last horizon", Severity::warn);

    const auto profile_a = upper_density_profile(a, A, horizons);
    const auto profile_b = upper_density_profile(b, A, horizons);
    std::ostringstream at;
    at << "profiles over " << horizons.size() << " horizons up to " << max_h;
    report.add("liminf_ordering",
               profile_b.running_min <= profile_a.running_min + tolerance,
               profile_b.running_min - profile_a.running_min, tolerance, at.str());
    report.add("limsup_ordering",
               profile_a.running_max <= profile_b.running_max + tolerance,
               profile_a.running_max - profile_b.running_max, tolerance, at.str());
    return report;
}

} // namespace udense
