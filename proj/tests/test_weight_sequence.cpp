#include <udense/errors.hpp>
#include <udense/weight_sequence.hpp>

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

using udense::ClassSAuditOptions;
using udense::WeightSequence;

namespace {

// Direct reference for small n: sum the weights in plain doubles.
double direct_log_prefix(const WeightSequence& a, std::uint64_t n) {
    double s = 0.0;
    for (std::uint64_t j = 0; j <= n; ++j) {
        s += std::exp(a.log_weight(j));
    }
    return std::log(s);
}

} // namespace

TEST_CASE("constant-one weights have exact reciprocal step ratios") {
    WeightSequence one = WeightSequence::constant_one();
    CHECK(one.kind() == WeightSequence::Kind::constant_one);
    CHECK(one.weight(0) == 1.0);
    CHECK(one.weight(12345) == 1.0);
    CHECK(one.log_weight(7) == 0.0);

    // S_{n-1} = n, so the ratio at n is exactly 1/n.
    CHECK(one.v_ratio(1) == 1.0);
    CHECK(one.v_ratio(2) == 0.5);
    CHECK(one.v_ratio(5) == 1.0 / 5.0);
    CHECK(one.v_ratio(1000) == 1.0 / 1000.0);
}

TEST_CASE("power weights use the unit zeroth term") {
    WeightSequence lin = WeightSequence::power(1.0);
    CHECK(lin.kind() == WeightSequence::Kind::power);
    CHECK(lin.power_alpha() == 1.0);
    CHECK(lin.weight(0) == 1.0);
    CHECK(lin.weight(1) == doctest::Approx(1.0));
    CHECK(lin.weight(6) == doctest::Approx(6.0));

    // Prefix sums 1,2,4,7,11,... give v_4 = 4/7 and v_10 = 10/46.
    CHECK(lin.v_ratio(4) == doctest::Approx(4.0 / 7.0).epsilon(1e-12));
    CHECK(lin.v_ratio(10) == doctest::Approx(10.0 / 46.0).epsilon(1e-12));

    WeightSequence quad = WeightSequence::power(2.0);
    CHECK(quad.weight(3) == doctest::Approx(9.0));
    // S_1 = 1 + 1 = 2 and a_2 = 4, so the ratio exceeds one early on.
    CHECK(quad.v_ratio(2) == doctest::Approx(2.0).epsilon(1e-12));
    // It still has to decay eventually.
    CHECK(quad.v_ratio(100000) < 0.001);
}

TEST_CASE("power factory rejects nonpositive exponents") {
    CHECK_THROWS_AS(WeightSequence::power(0.0), udense::construction_error);
    CHECK_THROWS_AS(WeightSequence::power(-1.5), udense::construction_error);
    CHECK_THROWS_AS(WeightSequence::prop3_built({5, 5}), udense::construction_error);
    CHECK_THROWS_AS(WeightSequence::custom_rule("noop", nullptr),
                    udense::construction_error);
}

TEST_CASE("step ratio is undefined at index zero") {
    CHECK_THROWS_AS(WeightSequence::constant_one().v_ratio(0), std::domain_error);
    CHECK_THROWS_AS(WeightSequence::power(1.0).v_ratio(0), std::domain_error);
}

TEST_CASE("log prefix sums match direct summation while it is representable") {
    for (double alpha : {0.5, 1.0, 2.0}) {
        WeightSequence a = WeightSequence::power(alpha);
        for (std::uint64_t n : {std::uint64_t{0}, std::uint64_t{1}, std::uint64_t{5},
                                std::uint64_t{40}, std::uint64_t{333}}) {
            CAPTURE(alpha);
            CAPTURE(n);
            CHECK(a.log_prefix_sum(n) ==
                  doctest::Approx(direct_log_prefix(a, n)).epsilon(1e-12));
        }
    }

    WeightSequence one = WeightSequence::constant_one();
    CHECK(one.log_prefix_sum(9) == doctest::Approx(std::log(10.0)));
}

TEST_CASE("prefix sums stay finite far beyond double overflow of S_n") {
    // a_n = n^2 reaches S_n ~ n^3/3; at n = 1e6 that is ~3e17, no problem,
    // but a custom exponential rule overflows exp() almost immediately. The
    // log-space walker has to survive both.
    WeightSequence steep = WeightSequence::custom_rule(
        "steep", [](std::uint64_t n) { return 0.5 * static_cast<double>(n); });
    double lp = steep.log_prefix_sum(10000);
    CHECK(std::isfinite(lp));
    CHECK(lp > 4900.0); // dominated by the last term, log S ~ 0.5 * 10000
    CHECK(lp < 5001.0);
}

TEST_CASE("walker replays the random-access accessors") {
    for (const WeightSequence& a :
         {WeightSequence::power(1.5), WeightSequence::constant_one()}) {
        auto w = a.walker();
        for (std::uint64_t n = 0; n <= 300; ++n) {
            w.step();
            CHECK(w.n() == n);
            CHECK(w.log_weight() == doctest::Approx(a.log_weight(n)).epsilon(1e-12));
            CHECK(w.log_prefix() == doctest::Approx(a.log_prefix_sum(n)).epsilon(1e-12));
            if (n >= 1) {
                CHECK(w.v() == doctest::Approx(a.v_ratio(n)).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("free v_ratio helper carries the index along") {
    WeightSequence one = WeightSequence::constant_one();
    auto vr = udense::v_ratio(one, 8);
    CHECK(vr.n == 8);
    CHECK(vr.value == 1.0 / 8.0);
}

TEST_CASE("admissibility audit accepts power weights") {
    for (const WeightSequence& a : {WeightSequence::power(0.5),
                                    WeightSequence::power(1.0),
                                    WeightSequence::power(3.0)}) {
        auto report = udense::class_s_audit(a, 100000);
        CAPTURE(report.summary_line());
        CHECK(report.pass());
    }
}

TEST_CASE("admissibility audit rejects constant weights on growth alone") {
    // a = 1 gives plain counting; its ratios vanish but the terms never
    // grow, which is exactly the membership line the audit draws.
    auto report = udense::class_s_audit(WeightSequence::constant_one(), 100000);
    CHECK_FALSE(report.pass());
    const auto* grow = report.find("weight_grows");
    REQUIRE(grow != nullptr);
    CHECK_FALSE(grow->pass);
    CHECK(report.find("v_vanishes")->pass);
    CHECK(report.find("v_nonincreasing")->pass);
    CHECK(report.find("weight_nondecreasing")->pass);
}

TEST_CASE("admissibility audit rejects geometric growth") {
    // a_n = 2^n: the ratio a_n / S_{n-1} tends to 1, not 0, and the audit
    // must say so rather than accept any unbounded sequence.
    WeightSequence geo = WeightSequence::custom_rule(
        "geometric", [](std::uint64_t n) { return static_cast<double>(n) * std::log(2.0); });
    auto report = udense::class_s_audit(geo, 2000);
    CHECK_FALSE(report.pass());
    const auto* vanish = report.find("v_vanishes");
    REQUIRE(vanish != nullptr);
    CHECK_FALSE(vanish->pass);
    // Growth itself is fine for this sequence.
    const auto* grow = report.find("weight_grows");
    REQUIRE(grow != nullptr);
    CHECK(grow->pass);
}

TEST_CASE("admissibility audit rejects decreasing weights") {
    WeightSequence dec = WeightSequence::custom_rule(
        "decaying", [](std::uint64_t n) { return -0.01 * static_cast<double>(n); });
    auto report = udense::class_s_audit(dec, 5000);
    CHECK_FALSE(report.pass());
    const auto* mono = report.find("weight_nondecreasing");
    REQUIRE(mono != nullptr);
    CHECK_FALSE(mono->pass);
}

TEST_CASE("burn-in skips the distorted head of steep power weights") {
    // With a_0 = 1 and a_n = n^3 the first ratios rise before settling into
    // decay; the default burn-in must absorb that so the audit still passes.
    WeightSequence steep = WeightSequence::power(3.0);
    CHECK(steep.v_ratio(2) > steep.v_ratio(1));
    auto report = udense::class_s_audit(steep, 100000);
    CHECK(report.pass());

    // Removing the burn-in window exposes the head.
    ClassSAuditOptions opts;
    opts.burn_in = 0;
    auto strict = udense::class_s_audit(steep, 100000, opts);
    const auto* mono = strict.find("v_nonincreasing");
    REQUIRE(mono != nullptr);
    CHECK_FALSE(mono->pass);
}

TEST_CASE("weight sequences compare by rule") {
    CHECK(WeightSequence::power(1.0) == WeightSequence::power(1.0));
    CHECK(WeightSequence::power(1.0) != WeightSequence::power(2.0));
    CHECK(WeightSequence::constant_one() == WeightSequence::constant_one());
    CHECK(WeightSequence::constant_one() != WeightSequence::power(1.0));
}
