#include <udense/serialize.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

using nlohmann::json;
using udense::Dyadic;
using udense::IndexSet;
using udense::SparseVector;
using udense::WeightSequence;

TEST_CASE("weight sequences round-trip through json") {
    for (const WeightSequence& a :
         {WeightSequence::constant_one(), WeightSequence::power(1.5),
          WeightSequence::prop3_built({2, 4, 8, 12})}) {
        json j = udense::weight_to_json(a);
        WeightSequence back = udense::weight_from_json(j);
        CHECK(back == a);
    }

    json j = udense::weight_to_json(WeightSequence::power(2.0));
    CHECK(j.at("kind") == "power");
    CHECK(j.at("alpha") == 2.0);

    json p = udense::weight_to_json(WeightSequence::prop3_built({3, 5, 8}));
    CHECK(p.at("kind") == "prop3-built");
    CHECK(p.at("block_starts") == json::array({3, 5, 8}));

    // Custom rules are process-local closures; serializing them is refused.
    WeightSequence custom = WeightSequence::custom_rule(
        "adhoc", [](std::uint64_t n) { return static_cast<double>(n) * 0.1; });
    CHECK_THROWS_AS(udense::weight_to_json(custom), std::domain_error);
    CHECK_THROWS_AS(udense::weight_from_json(json{{"kind", "nonsense"}}),
                    std::domain_error);
}

TEST_CASE("index sets round-trip through json in all representations") {
    std::vector<IndexSet> sets;
    sets.push_back(IndexSet::explicit_set({1, 5, 900}));
    sets.push_back(IndexSet::empty());
    sets.push_back(IndexSet::residue_set(6, {0, 2, 5}));
    sets.push_back(IndexSet::interval_union({{2, 4}, {10, 20}}));
    sets.push_back(IndexSet::periodic_window(64, 8, 17));

    for (const auto& s : sets) {
        json j = udense::index_set_to_json(s);
        IndexSet back = udense::index_set_from_json(j);
        for (std::uint64_t i = 0; i <= 300; ++i) {
            REQUIRE(back.contains(i) == s.contains(i));
        }
    }

    json j = udense::index_set_to_json(IndexSet::residue_set(6, {0, 2, 5}));
    CHECK(j.at("kind") == "residue");
    CHECK(j.at("modulus") == 6);
    CHECK(j.at("residues") == json::array({0, 2, 5}));

    json w = udense::index_set_to_json(IndexSet::periodic_window(64, 8, 17));
    CHECK(w.at("kind") == "periodic-window");
    CHECK(w.at("period") == 64);
    CHECK(w.at("width") == 8);
    CHECK(w.at("anchor") == 17);

    CHECK_THROWS_AS(udense::index_set_from_json(json{{"kind", "fancy"}}),
                    std::domain_error);
}

TEST_CASE("sparse vectors carry exact mantissas of any width") {
    // 2^200 + 1 is far outside double range; the decimal-string encoding
    // must hold it exactly.
    Dyadic wide = Dyadic::pow2(200) + Dyadic(1);
    SparseVector x({{0, wide}, {7, Dyadic(-3).half()}, {12345, Dyadic::pow2(-900)}});
    json j = udense::sparse_vector_to_json(x);
    SparseVector back = udense::sparse_vector_from_json(j);
    CHECK(back == x);

    const auto& entries = j.at("entries");
    REQUIRE(entries.size() == 3);
    CHECK(entries[0].at("index") == 0);
    CHECK(entries[0].at("exponent") == 0);
    CHECK(entries[1].at("mantissa") == "-3");
    CHECK(entries[1].at("exponent") == -1);
    CHECK(entries[2].at("exponent") == -900);

    CHECK(udense::sparse_vector_from_json(udense::sparse_vector_to_json(SparseVector{}))
              .empty());
}

TEST_CASE("level data round-trips and defaults the leak scales") {
    auto levels = udense::make_half_delta_levels({1, 10, 36}, {2, 400, 3200});
    json j = udense::levels_to_json(levels);
    auto back = udense::levels_from_json(j);
    CHECK(back.delta == levels.delta);
    CHECK(back.Delta == levels.Delta);
    CHECK(back.tau == levels.tau);

    // Without the tau field the half rule applies.
    json bare = {{"delta", {1, 10}}, {"Delta", {2, 400}}};
    auto filled = udense::levels_from_json(bare);
    CHECK(filled.tau == std::vector<std::uint64_t>{1, 5});

    // An explicit tau wins over the rule.
    json custom = {{"delta", {1, 10}}, {"Delta", {2, 400}}, {"tau", {1, 4}}};
    CHECK(udense::levels_from_json(custom).tau == std::vector<std::uint64_t>{1, 4});
}

TEST_CASE("report json spells out severities and non-finite values") {
    udense::AuditReport report{"roundtrip_probe"};
    report.add("hard_gate", true, 1.5, 2.0, "plain numbers");
    report.add("advice", false, std::numeric_limits<double>::quiet_NaN(),
               std::numeric_limits<double>::infinity(), "non-finite fields",
               udense::Severity::warn);

    json j = udense::report_to_json(report);
    CHECK(j.at("schema_version") == udense::schema_version);
    CHECK(j.at("name") == "roundtrip_probe");
    CHECK(j.at("pass") == true); // warn severity does not fail the report

    const auto& checks = j.at("checks");
    REQUIRE(checks.size() == 2);
    CHECK(checks[0].at("name") == "hard_gate");
    CHECK(checks[0].at("severity") == "require");
    CHECK(checks[0].at("value") == 1.5);
    CHECK(checks[1].at("severity") == "warn");
    CHECK(checks[1].at("value").is_null());
    CHECK(checks[1].at("threshold").is_null());
    CHECK(checks[1].at("context") == "non-finite fields");
}

TEST_CASE("json_number maps non-finite doubles to null") {
    CHECK(udense::json_number(1.25) == 1.25);
    CHECK(udense::json_number(std::numeric_limits<double>::quiet_NaN()).is_null());
    CHECK(udense::json_number(std::numeric_limits<double>::infinity()).is_null());
    CHECK(udense::json_number(-std::numeric_limits<double>::infinity()).is_null());
}

TEST_CASE("profiles serialize samples and estimates") {
    auto profile = udense::upper_density_profile(WeightSequence::constant_one(),
                                                 IndexSet::multiples_of(2),
                                                 {10, 100, 1000}, 100);
    json j = udense::profile_to_json(profile);
    REQUIRE(j.at("samples").size() == 3);
    CHECK(j.at("samples")[0].at("horizon") == 10);
    CHECK(j.at("tail_start") == 100);
    CHECK(j.at("limsup_estimate").get<double>() ==
          doctest::Approx(profile.limsup_estimate()));

    std::string csv = udense::profile_to_csv(profile);
    CHECK(csv.rfind("horizon,ratio\n", 0) == 0);
    CHECK(csv.find("\n10,") != std::string::npos);
    // one header plus one line per sample
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("margin rows serialize to json and csv with pinned headers") {
    std::vector<udense::ChaosMarginRow> rows(2);
    rows[0] = {1, 10, 400, 390, 17, true, 0.10, 0.25, 0.90, 0.75};
    rows[1] = {2, 36, 3200, 3164, 5, false, 0.02, 0.05, 0.98, 0.95};

    json j = udense::margin_rows_to_json(rows);
    REQUIRE(j.size() == 2);
    CHECK(j[0].at("k") == 1);
    CHECK(j[0].at("worst_j0") == 17);
    CHECK(j[0].at("j0_sweep_exhaustive") == true);
    CHECK(j[1].at("margin_bound") == 0.95);

    std::string csv = udense::margin_rows_to_csv(rows);
    CHECK(csv.rfind("k,delta,Delta,N_l,margin_direct,margin_bound\n", 0) == 0);
    CHECK(csv.find("\n1,10,400,390,") != std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("gap reports serialize the certificate fields") {
    auto gaps = udense::bounded_gaps_audit(WeightSequence::power(1.0),
                                           IndexSet::multiples_of(7), 0.1, 20, 50000);
    json j = udense::gap_report_to_json(gaps);
    CHECK(j.at("kset") == json::array({0, 7, 14}));
    CHECK(j.at("max_gap") == 7);
    CHECK(j.at("kmax") == 20);
    CHECK(j.at("precondition_ok") == true);
    CHECK(j.at("threshold").get<double>() == doctest::Approx(0.005));

    // NaN ratio bound must not poison the dump.
    auto vacuous = udense::bounded_gaps_audit(WeightSequence::power(1.0),
                                              IndexSet::multiples_of(100), 0.5, 5, 20000);
    json v = udense::gap_report_to_json(vacuous);
    CHECK(v.at("r_bound").is_null());
}

TEST_CASE("builder outputs serialize with their sets inline") {
    auto input = udense::make_prop3_input({IndexSet::multiples_of(2)}, {0.4}, 4);
    json j = udense::prop3_input_to_json(input);
    CHECK(j.at("block_starts") == json::array({2, 4, 8, 12}));
    CHECK(j.at("classes") == 1);
    CHECK(j.at("deltas")[0] == 0.4);
    CHECK(j.at("sets")[0].at("kind") == "residue");

    auto thick = udense::build_sparse_thick_set(WeightSequence::power(1.0),
                                                {0.5, 0.25, 0.125});
    json t = udense::sparse_thick_to_json(thick);
    CHECK(t.at("n_seq") == json::array({7, 23, 63}));
    CHECK(t.at("set").at("kind") == "intervals");
    REQUIRE(t.at("term1").size() == 3);
    CHECK(t.at("eps")[0] == 0.5);
}

TEST_CASE("dumps are deterministic") {
    auto profile = udense::banach_density_profile(IndexSet::residue_set(3, {1}),
                                                  {10, 100}, 5000);
    CHECK(udense::profile_to_json(profile).dump() ==
          udense::profile_to_json(profile).dump());

    auto report = udense::class_s_audit(WeightSequence::power(1.0), 1000);
    CHECK(udense::report_to_json(report).dump() == udense::report_to_json(report).dump());
}
