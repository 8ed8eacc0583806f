#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "support.hpp"

#include <stdexcept>

#include "hypergiant/combinat.hpp"
#include "oracles.hpp"

using namespace hypergiant;

TEST_CASE("binom small values") {
    CHECK(binom(5, 2) == 10);
    CHECK(binom(17, 0) == 1);
    CHECK(binom(0, 0) == 1);
    CHECK(binom(10, 11) == 0);
    CHECK(binom(700, 2) == 244650);
    CHECK(binom(52, 5) == 2598960);
}

TEST_CASE("binom large arguments are exact") {
    // running product C(n, i+1) = C(n, i) (n - i) / (i + 1) stays exact at every step
    Rank running = 1;
    for (Rank i = 0; i < 6; ++i) running = running * (Rank{1000000} - i) / (i + 1);
    CHECK(binom(1000000, 6) == running);
    CHECK(binom(1000000, 999999) == 1000000);
    CHECK(binom(130, 65) > Rank{1} << 120);
}

TEST_CASE("binom overflow is an error") {
    CHECK_THROWS_AS(binom(200, 100), std::overflow_error);
    CHECK_THROWS_AS(to_u64(binom(100, 50)), std::overflow_error);
}

TEST_CASE("Pascal's rule for n <= 60") {
    for (std::uint64_t n = 1; n <= 60; ++n) {
        for (std::uint64_t r = 1; r <= n; ++r) {
            CHECK(binom(n, r) == binom(n - 1, r - 1) + binom(n - 1, r));
        }
        CHECK(binom(n, n) == 1);
    }
}

TEST_CASE("colex rank examples") {
    CHECK(colex_rank({0, 1}) == 0);
    CHECK(colex_rank({0, 2}) == 1);
    CHECK(colex_rank({1, 2}) == 2);
    CHECK(colex_unrank(0, 2, 10) == VertexSet{0, 1});
    CHECK(colex_unrank(2, 2, 10) == VertexSet{1, 2});
    CHECK(colex_unrank(binom(10, 2) - 1, 2, 10) == VertexSet{8, 9});
    CHECK_THROWS_AS(colex_unrank(binom(10, 2), 2, 10), std::out_of_range);
}

TEST_CASE("invalid sets are rejected") {
    const Vertex unsorted[] = {3, 1};
    const Vertex repeated[] = {2, 2};
    const Vertex outside[] = {1, 12};
    CHECK_THROWS(VertexSet::checked(unsorted));
    CHECK_THROWS(VertexSet::checked(repeated));
    CHECK_THROWS(VertexSet::checked(outside, 10));
    CHECK_NOTHROW(VertexSet::checked(outside, 13));
}

TEST_CASE("rank and unrank are inverse bijections onto colex order, n <= 30") {
    for (Vertex n : {4u, 9u, 17u, 30u}) {
        for (int r = 1; r <= 4; ++r) {
            auto sets = oracle::all_subsets(n, r);
            std::sort(sets.begin(), sets.end(), oracle::colex_less);
            REQUIRE(Rank{sets.size()} == binom(n, static_cast<std::uint64_t>(r)));
            const BinomTable table(n, r);
            for (std::size_t i = 0; i < sets.size(); ++i) {
                const VertexSet s = VertexSet::checked(sets[i], n);
                REQUIRE(colex_rank(s) == Rank{i});
                REQUIRE(colex_rank(s, table) == Rank{i});
                REQUIRE(colex_unrank(Rank{i}, r, n) == s);
                REQUIRE(colex_unrank(Rank{i}, r, n, table) == s);
            }
        }
    }
}

TEST_CASE("r_subsets examples and order") {
    const VertexSet abc{3, 5, 9};
    const auto pairs = r_subsets(abc, 2);
    REQUIRE(pairs.size() == 3);
    CHECK(pairs[0] == VertexSet{3, 5});
    CHECK(pairs[1] == VertexSet{3, 9});
    CHECK(pairs[2] == VertexSet{5, 9});
    CHECK(r_subsets(abc, 3) == std::vector<VertexSet>{abc});

    const VertexSet big{0, 2, 3, 7, 11, 12, 20};
    for (int r = 1; r <= big.size(); ++r) {
        const auto subs = r_subsets(big, r);
        CHECK(Rank{subs.size()} == binom(7, static_cast<std::uint64_t>(r)));
        for (std::size_t i = 1; i < subs.size(); ++i) CHECK(colex_rank(subs[i - 1]) < colex_rank(subs[i]));
        for (const auto& s : subs) CHECK(big.contains_all(s));
    }
}

TEST_CASE("k_supersets examples and order") {
    const auto sup = k_supersets({0, 1}, 4, 3);
    REQUIRE(sup.size() == 2);
    CHECK(sup[0] == VertexSet{0, 1, 2});
    CHECK(sup[1] == VertexSet{0, 1, 3});

    for (const VertexSet& j_set : {VertexSet{4}, VertexSet{0, 9}, VertexSet{2, 5, 13}}) {
        for (int k = j_set.size() + 1; k <= j_set.size() + 3; ++k) {
            const auto all = k_supersets(j_set, 14, k);
            CHECK(Rank{all.size()} == binom(14u - static_cast<std::uint64_t>(j_set.size()),
                                            static_cast<std::uint64_t>(k - j_set.size())));
            for (std::size_t i = 0; i < all.size(); ++i) {
                CHECK(all[i].contains_all(j_set));
                CHECK(all[i].size() == k);
                if (i) CHECK(colex_rank(all[i - 1]) < colex_rank(all[i]));
            }
            // brute force: every k-set of [0,14) containing j_set appears
            std::size_t expected = 0;
            for (const auto& s : oracle::all_subsets(14, k)) {
                if (oracle::subset_of(oracle::as_vector(j_set), s)) ++expected;
            }
            CHECK(all.size() == expected);
        }
    }
}

TEST_CASE("intersection_size") {
    CHECK(intersection_size({1, 2}, {2, 3}) == 1);
    CHECK(intersection_size({1, 4, 6}, {1, 4, 6}) == 3);
    CHECK(intersection_size({0, 1}, {5, 6, 7}) == 0);
}

TEST_CASE("to_string of wide ranks") {
    CHECK(to_string(Rank{0}) == "0");
    CHECK(to_string(binom(1000000, 7)) == "198408531780753822420957142507143000000");
}
