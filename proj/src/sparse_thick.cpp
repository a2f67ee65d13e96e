#include "udense/sparse_thick.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "udense/errors.hpp"

namespace udense {

namespace {

double log_add(double x, double y) {
    if (x == -std::numeric_limits<double>::infinity())
        return y;
    if (y == -std::numeric_limits<double>::infinity())
        return x;
    const double hi = std::max(x, y);
    return hi + std::log1p(std::exp(std::min(x, y) - hi));
}

} // namespace

std::vector<std::uint64_t> SparseThickSet::checkpoints() const {
    std::vector<std::uint64_t> out;
    out.reserve(n_seq.size());
    for (std::size_t i = 0; i < n_seq.size(); ++i)
        out.push_back(n_seq[i] + (i + 1));
    return out;
}

SparseThickSet build_sparse_thick_set(const WeightSequence& a,
                                      const std::vector<double>& eps_schedule,
                                      std::uint64_t index_cap) {
    if (eps_schedule.empty())
        throw construction_error("empty bound schedule");
    for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
        if (!(eps_schedule[i] > 0.0))
            throw construction_error("bounds must be positive");
        if (i > 0 && eps_schedule[i] >= eps_schedule[i - 1])
            throw construction_error("bounds must be strictly decreasing");
    }
    if (auto membership = class_s_audit(a, 10000); !membership.pass())
        throw construction_error("weight fails its class membership audit: " +
                                 membership.summary_line());

    SparseThickSet result;
    result.eps = eps_schedule;
    const auto kmax = static_cast<std::uint64_t>(eps_schedule.size());

    auto walker = a.walker();
    walker.step(); // n = 0
    // log of the total weight mass of the intervals chosen so far
    double prev_mass_log = -std::numeric_limits<double>::infinity();
    std::vector<IndexSet::Interval> parts;
    std::uint64_t min_start = 1;

    for (std::uint64_t k = 1; k <= kmax; ++k) {
        const double eps = eps_schedule[k - 1];
        double t1 = std::numeric_limits<double>::infinity();
        double t2 = std::numeric_limits<double>::infinity();
        bool found = false;
        while (walker.n() < index_cap) {
            walker.step();
            if (walker.n() < min_start)
                continue;
            t1 = std::exp(prev_mass_log - walker.log_prefix());
            const double v = walker.v();
            t2 = static_cast<double>(k + 1) * v / (1.0 + v);
            if (t1 <= eps && t2 <= eps) {
                found = true;
                break;
            }
        }
        if (!found) {
            std::ostringstream os;
            os << "no start below " << index_cap << " meets bound " << eps << " for interval "
               << k << " (achieved " << t1 << " and " << t2 << ")";
            throw resource_error(os.str());
        }
        const std::uint64_t n_k = walker.n();
        result.n_seq.push_back(n_k);
        result.term1.push_back(t1);
        result.term2.push_back(t2);
        parts.push_back({n_k, n_k + k});
        // absorb the interval's own mass before hunting for the next start
        prev_mass_log = log_add(prev_mass_log, walker.log_weight());
        for (std::uint64_t l = 1; l <= k; ++l) {
            walker.step();
            prev_mass_log = log_add(prev_mass_log, walker.log_weight());
        }
        min_start = n_k + k + 1;
    }
    result.set = IndexSet::interval_union(std::move(parts));
    return result;
}

} // namespace udense
