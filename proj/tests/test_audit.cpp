#include <udense/chaos_audit.hpp>
#include <udense/equivalences.hpp>
#include <udense/errors.hpp>

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

using udense::ChaosAuditConfig;
using udense::WeightSequence;

namespace {

// Independent oracle for the closed coverage estimate: plain-double sums of
// a_j = j with a_0 = 1, no log-space machinery.
double direct_bound_linear_weight(std::uint64_t N, std::uint64_t n) {
    auto weight = [](std::uint64_t j) { return j == 0 ? 1.0 : static_cast<double>(j); };
    auto prefix = [&](std::uint64_t m) {
        double s = 0.0;
        for (std::uint64_t j = 0; j <= m; ++j) {
            s += weight(j);
        }
        return s;
    };
    double prod = 1.0;
    for (std::uint64_t j = N - 3 * n; j <= N - n; ++j) {
        prod *= 1.0 + weight(j) / prefix(j - 1);
    }
    return 2.0 - 2.0 / prod + static_cast<double>(2 * n + 1) / static_cast<double>(N);
}

} // namespace

TEST_CASE("closed coverage bound matches a direct computation") {
    WeightSequence lin = WeightSequence::power(1.0);
    for (std::uint64_t N : {std::uint64_t{100}, std::uint64_t{1000}}) {
        for (std::uint64_t n : {std::uint64_t{2}, std::uint64_t{5}, std::uint64_t{20}}) {
            CAPTURE(N);
            CAPTURE(n);
            CHECK(udense::periodic_window_coverage_bound(lin, N, n) ==
                  doctest::Approx(direct_bound_linear_weight(N, n)).epsilon(1e-9));
        }
    }
    // Spot value: N=1000, n=5 sits a little above 4n/N + (2n+1)/N.
    const double bound = udense::periodic_window_coverage_bound(lin, 1000, 5);
    CHECK(bound == doctest::Approx(0.0549).epsilon(0.01));
}

TEST_CASE("coverage bound shrinks as the period grows") {
    WeightSequence lin = WeightSequence::power(1.0);
    double prev = 1.0;
    for (std::uint64_t N = 250; N <= 64000; N *= 2) {
        const double b = udense::periodic_window_coverage_bound(lin, N, 5);
        CHECK(b < prev);
        prev = b;
    }
}

TEST_CASE("scanned coverage never exceeds its closed bound") {
    WeightSequence lin = WeightSequence::power(1.0);
    const std::uint64_t N = 600, n = 12;
    for (std::uint64_t j0 : {std::uint64_t{0}, std::uint64_t{17}, std::uint64_t{299},
                             std::uint64_t{588}, std::uint64_t{599}}) {
        auto est = udense::periodic_window_coverage(lin, N, n, j0, 8 * N);
        CAPTURE(j0);
        CHECK(est.direct <= est.bound + 1e-12);
        CHECK(est.direct > 0.0);
        CHECK(est.argmax >= N - n);
        CHECK(est.argmax <= 8 * N);
        CHECK(est.bound ==
              doctest::Approx(udense::periodic_window_coverage_bound(lin, N, n)));
    }
}

TEST_CASE("coverage estimator rejects degenerate geometry") {
    WeightSequence lin = WeightSequence::power(1.0);
    // 3n must stay under the period.
    CHECK_THROWS_AS(udense::periodic_window_coverage(lin, 30, 10, 0, 300),
                    std::domain_error);
    CHECK_THROWS_AS(udense::periodic_window_coverage_bound(lin, 30, 10),
                    std::domain_error);
    // Anchor must sit inside one period.
    CHECK_THROWS_AS(udense::periodic_window_coverage(lin, 100, 5, 100, 800),
                    std::domain_error);
    // Scan range must reach the first admissible horizon.
    CHECK_THROWS_AS(udense::periodic_window_coverage(lin, 100, 5, 0, 50),
                    std::domain_error);
}

TEST_CASE("length suggestions follow the chained doubling form") {
    WeightSequence lin = WeightSequence::power(1.0);
    const std::vector<std::uint64_t> delta = {1, 2, 4};
    auto Delta = udense::suggest_Delta(lin, delta, 2);
    REQUIRE(Delta.size() == 3);
    CHECK(Delta[0] >= 2);
    for (std::size_t k = 1; k < Delta.size(); ++k) {
        CAPTURE(k);
        CHECK(Delta[k] % (2 * Delta[k - 1]) == 0);
        CHECK(Delta[k] > 3 * delta[k]);
        // The defining property: the bound meets the per-level target.
        CHECK(udense::periodic_window_coverage_bound(lin, Delta[k], delta[k]) <=
              std::pow(2.0, -static_cast<double>(k + 1)));
    }
}

TEST_CASE("full audit passes on a small two-level configuration") {
    ChaosAuditConfig config;
    config.a = WeightSequence::power(1.0);
    config.delta = {1, 10, 36};
    config.Delta = {2, 400, 3200};
    config.kmax = 2;
    auto result = udense::run_chaos_audit(config);
    CAPTURE(result.report.summary_line());
    CHECK(result.report.pass());

    REQUIRE(result.rows.size() == 2);
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const auto& row = result.rows[i];
        CHECK(row.k == i + 1);
        CHECK(row.N_l == row.Delta - row.delta);
        CHECK(row.coverage_direct <= row.coverage_bound + 1e-12);
        CHECK(row.margin_direct == doctest::Approx(1.0 - row.coverage_direct));
        CHECK(row.j0_sweep_exhaustive); // periods 400 and 3200 are under the cap
    }
    CHECK(result.rows[1].margin_bound >= result.rows[0].margin_bound - 1e-9);
    CHECK(result.rows[1].margin_bound > 0.5);

    // Resolved levels carry the half-rule leak scales.
    CHECK(result.levels.tau == std::vector<std::uint64_t>{1, 5, 18});

    // The stages all reported.
    CHECK(result.report.find("weight_admissible") != nullptr);
    CHECK(result.report.find("params_doubled_prefix_below_length") != nullptr);
    CHECK(result.report.find("coverage_within_bound_level_1") != nullptr);
    CHECK(result.report.find("margins_nondecreasing") != nullptr);
    CHECK(result.report.find("final_margin_positive") != nullptr);
    CHECK(result.report.find("engine_block_1_bad_times_agree") != nullptr);
}

TEST_CASE("audit derives lengths when none are given") {
    ChaosAuditConfig config;
    config.a = WeightSequence::power(1.0);
    config.delta = {1, 10, 36};
    config.kmax = 2;
    auto result = udense::run_chaos_audit(config);
    CAPTURE(result.report.summary_line());
    CHECK(result.report.pass());
    REQUIRE(result.levels.Delta.size() == 3);
    CHECK(result.levels.Delta ==
          udense::suggest_Delta(config.a, config.delta, config.Delta0));
}

TEST_CASE("audit fails when the margins cannot grow") {
    // The level-2 period only doubles while its windows widen 3.6-fold, so
    // level 2 is worse covered than level 1 and the monotonicity stage has
    // to fail even though every individual estimate is fine.
    ChaosAuditConfig config;
    config.a = WeightSequence::power(1.0);
    config.delta = {1, 10, 36};
    config.Delta = {2, 400, 800};
    config.kmax = 2;
    auto result = udense::run_chaos_audit(config);
    CHECK_FALSE(result.report.pass());
    const auto* mono = result.report.find("margins_nondecreasing");
    REQUIRE(mono != nullptr);
    CHECK_FALSE(mono->pass);
}

TEST_CASE("equivalence battery passes at a reduced horizon") {
    udense::EquivalenceAuditOptions options;
    options.horizon = 200000;
    options.thick_intervals = 10;
    auto report = udense::run_equivalence_audit(options);
    CAPTURE(report.summary_line());
    CHECK(report.pass());
    CHECK(report.find("separation_window_full") != nullptr);
    CHECK(report.find("separation_weighted_vanishes") != nullptr);
    CHECK(report.find("blockweight_structure") != nullptr);
}
