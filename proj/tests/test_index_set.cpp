#include <udense/index_set.hpp>

#include <doctest.h>

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

using udense::IndexSet;

namespace {

// Brute-force mirror used to validate every representation: collect
// membership over [0, limit] with contains(), then re-derive counts,
// cursors and shifts from that list alone.
std::vector<bool> membership_table(const IndexSet& set, std::uint64_t limit) {
    std::vector<bool> table(limit + 1, false);
    for (std::uint64_t j = 0; j <= limit; ++j) {
        table[j] = set.contains(j);
    }
    return table;
}

void check_against_table(const IndexSet& set, const std::vector<bool>& table) {
    const std::uint64_t limit = table.size() - 1;

    // count_in_range on a grid of subranges
    for (std::uint64_t lo = 0; lo <= limit; lo += 17) {
        std::uint64_t expect = 0;
        for (std::uint64_t j = lo; j <= limit; ++j) {
            if (table[j]) {
                ++expect;
            }
            if ((j - lo) % 23 == 22 || j == limit) {
                CHECK(set.count_in_range(lo, j) == expect);
            }
        }
    }

    // cursor replays contains() in order
    auto cur = set.cursor(0);
    for (std::uint64_t j = 0; j <= limit; ++j) {
        CHECK(cur.next() == table[j]);
    }

    // cursor started mid-stream
    auto mid = set.cursor(limit / 2);
    for (std::uint64_t j = limit / 2; j <= limit; ++j) {
        CHECK(mid.next() == table[j]);
    }
}

} // namespace

TEST_CASE("explicit sets sort, deduplicate and report a horizon") {
    IndexSet set = IndexSet::explicit_set({9, 2, 5, 2, 30});
    CHECK(set.contains(2));
    CHECK(set.contains(30));
    CHECK_FALSE(set.contains(3));
    CHECK(set.count_in_range(0, 100) == 4);
    CHECK(set.natural_horizon() == std::optional<std::uint64_t>{30});

    const auto& repr = std::get<IndexSet::Explicit>(set.repr());
    CHECK(repr.members == std::vector<std::uint64_t>{2, 5, 9, 30});

    check_against_table(set, membership_table(set, 64));
}

TEST_CASE("empty set contains nothing anywhere") {
    IndexSet none = IndexSet::empty();
    CHECK_FALSE(none.contains(0));
    CHECK(none.count_in_range(0, 1000000) == 0);
    auto cur = none.cursor();
    for (int i = 0; i < 100; ++i) {
        CHECK_FALSE(cur.next());
    }
}

TEST_CASE("residue sets follow j mod q") {
    IndexSet evens = IndexSet::residue_set(2, {0});
    CHECK(evens.contains(0));
    CHECK_FALSE(evens.contains(7));
    CHECK(evens.count_in_range(0, 9) == 5);
    CHECK(evens.count_in_range(1, 9) == 4);
    CHECK_FALSE(evens.natural_horizon().has_value());

    IndexSet burst = IndexSet::residue_set(5, {0, 1, 2});
    CHECK(burst.count_in_range(0, 49) == 30);
    check_against_table(burst, membership_table(burst, 500));

    IndexSet everything = IndexSet::all();
    CHECK(everything.contains(0));
    CHECK(everything.count_in_range(10, 19) == 10);

    CHECK(IndexSet::multiples_of(7).contains(49));
    CHECK_FALSE(IndexSet::multiples_of(7).contains(50));
}

TEST_CASE("interval unions count by inclusion of endpoints") {
    IndexSet set = IndexSet::interval_union({{3, 5}, {10, 10}, {20, 29}});
    CHECK(set.contains(3));
    CHECK(set.contains(5));
    CHECK_FALSE(set.contains(6));
    CHECK(set.contains(10));
    CHECK(set.count_in_range(0, 100) == 3 + 1 + 10);
    CHECK(set.count_in_range(4, 21) == 2 + 1 + 2);
    CHECK(set.natural_horizon() == std::optional<std::uint64_t>{29});
    check_against_table(set, membership_table(set, 120));
}

TEST_CASE("periodic windows repeat [anchor, anchor+width] with the period") {
    // period 8, width 2, anchor 3: members are {3,4,5, 11,12,13, 19,...}
    IndexSet set = IndexSet::periodic_window(8, 2, 3);
    for (std::uint64_t r = 0; r < 6; ++r) {
        CHECK(set.contains(3 + 8 * r));
        CHECK(set.contains(5 + 8 * r));
        CHECK_FALSE(set.contains(6 + 8 * r));
    }
    CHECK_FALSE(set.contains(0)); // nothing before the anchor
    CHECK_FALSE(set.contains(2));
    CHECK_FALSE(set.natural_horizon().has_value());
    check_against_table(set, membership_table(set, 400));
}

TEST_CASE("periodic window whose width wraps past the period boundary") {
    // width >= period would make every index a member after the anchor;
    // width = period-1 covers all but one phase.
    IndexSet set = IndexSet::periodic_window(5, 4, 2);
    check_against_table(set, membership_table(set, 200));
    CHECK(set.count_in_range(2, 2 + 49) == 50); // the window is all of [2, ...)
}

TEST_CASE("periodic window with a negative anchor is active from zero") {
    IndexSet set = IndexSet::periodic_window(6, 1, -2);
    // Windows are [-2,-1], [4,5], [10,11], ... so 0..3 are outside.
    CHECK_FALSE(set.contains(0));
    CHECK(set.contains(4));
    CHECK(set.contains(5));
    CHECK_FALSE(set.contains(6));
    check_against_table(set, membership_table(set, 300));
}

TEST_CASE("shifted_down maps j to membership of j + k") {
    IndexSet evens = IndexSet::multiples_of(2);
    IndexSet odd_view = evens.shifted_down(1);
    CHECK(odd_view.contains(1));
    CHECK_FALSE(odd_view.contains(2));

    IndexSet set = IndexSet::interval_union({{10, 14}, {30, 31}});
    for (std::uint64_t k : {std::uint64_t{0}, std::uint64_t{3}, std::uint64_t{12}}) {
        IndexSet down = set.shifted_down(k);
        for (std::uint64_t j = 0; j <= 40; ++j) {
            CHECK(down.contains(j) == set.contains(j + k));
        }
    }

    IndexSet expl = IndexSet::explicit_set({4, 9, 11});
    IndexSet down = expl.shifted_down(9);
    CHECK(down.contains(0));
    CHECK(down.contains(2));
    CHECK_FALSE(down.contains(4)); // 13 was never a member
    CHECK(down.count_in_range(0, 100) == 2);

    IndexSet window = IndexSet::periodic_window(8, 2, 3);
    IndexSet wdown = window.shifted_down(5);
    for (std::uint64_t j = 0; j <= 100; ++j) {
        CHECK(wdown.contains(j) == window.contains(j + 5));
    }
}

TEST_CASE("count_in_range over large residue spans stays exact") {
    IndexSet mult3 = IndexSet::multiples_of(3);
    CHECK(mult3.count_in_range(0, 2999999) == 1000000);
    CHECK(mult3.count_in_range(1, 3000000) == 1000000);
    CHECK(mult3.count_in_range(2, 2) == 0);
    CHECK(mult3.count_in_range(3, 3) == 1);
}

TEST_CASE("cursor equals contains for every representation on a long range") {
    const std::uint64_t limit = 5000;
    std::vector<IndexSet> sets;
    sets.push_back(IndexSet::explicit_set({0, 1, 7, 100, 4999, 5000}));
    sets.push_back(IndexSet::residue_set(7, {1, 3, 6}));
    sets.push_back(IndexSet::interval_union({{0, 3}, {50, 520}, {4000, 4100}}));
    sets.push_back(IndexSet::periodic_window(97, 13, 55));
    for (const auto& set : sets) {
        check_against_table(set, membership_table(set, limit));
    }
}
